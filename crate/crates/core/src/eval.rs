//! Confusion-matrix metrics and the leave-one-protein-out cross-validation
//! harness shared by both classifiers.

use crate::error::{Error, Result};
use crate::seq::{Dataset, ProteinChain, ResidueLabel};

/// Binary confusion counts with interface (+) as the positive class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub tpc: u64,
    pub fpc: u64,
    pub tnc: u64,
    pub fnc: u64,
}

impl ConfusionCounts {
    pub fn new(tpc: u64, fpc: u64, tnc: u64, fnc: u64) -> ConfusionCounts {
        ConfusionCounts { tpc, fpc, tnc, fnc }
    }

    pub fn total(&self) -> u64 {
        self.tpc + self.fpc + self.tnc + self.fnc
    }

    pub fn add(&mut self, other: &ConfusionCounts) {
        self.tpc += other.tpc;
        self.fpc += other.fpc;
        self.tnc += other.tnc;
        self.fnc += other.fnc;
    }
}

/// The four performance measures over a confusion matrix.
///
/// Specificity here is the positive predictive value tp/(tp+fp), the
/// convention the reported figures are consistent with (see `metrics`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricsReport {
    pub accuracy: f64,
    pub specificity: f64,
    pub sensitivity: f64,
    pub correlation_coefficient: f64,
    pub counts: ConfusionCounts,
    /// Set when tp+fp = 0, in which case specificity is reported as 0.
    pub specificity_degenerate: bool,
}

/// Count aligned prediction/actual pairs.
pub fn confusion(predicted: &[ResidueLabel], actual: &[ResidueLabel]) -> Result<ConfusionCounts> {
    if predicted.len() != actual.len() {
        return Err(Error::data(format!(
            "prediction length {} does not match label length {}",
            predicted.len(),
            actual.len()
        )));
    }
    let mut c = ConfusionCounts::default();
    for (p, a) in predicted.iter().zip(actual) {
        match (p.is_interface(), a.is_interface()) {
            (true, true) => c.tpc += 1,
            (true, false) => c.fpc += 1,
            (false, true) => c.fnc += 1,
            (false, false) => c.tnc += 1,
        }
    }
    Ok(c)
}

/// Matthews correlation coefficient, defined as 0 when any denominator
/// factor is 0.
pub fn mcc(c: &ConfusionCounts) -> f64 {
    let tp = c.tpc as f64;
    let fp = c.fpc as f64;
    let tn = c.tnc as f64;
    let fnn = c.fnc as f64;
    let denom = (tp + fp) * (tp + fnn) * (tn + fp) * (tn + fnn);
    if denom == 0.0 {
        return 0.0;
    }
    (tp * tn - fp * fnn) / denom.sqrt()
}

/// Compute the four measures. Errors when the matrix is empty; a zero
/// tp+fp denominator is reported as specificity 0 with the degenerate flag.
pub fn metrics(c: &ConfusionCounts) -> Result<MetricsReport> {
    if c.total() == 0 {
        return Err(Error::data("cannot compute metrics over zero counts"));
    }
    let tp = c.tpc as f64;
    let specificity_degenerate = c.tpc + c.fpc == 0;
    let specificity = if specificity_degenerate {
        0.0
    } else {
        tp / (c.tpc + c.fpc) as f64
    };
    let sensitivity = if c.tpc + c.fnc == 0 {
        0.0
    } else {
        tp / (c.tpc + c.fnc) as f64
    };
    Ok(MetricsReport {
        accuracy: (c.tpc + c.tnc) as f64 / c.total() as f64,
        specificity,
        sensitivity,
        correlation_coefficient: mcc(c),
        counts: *c,
        specificity_degenerate,
    })
}

/// Per-fold outcome of a leave-one-out run.
#[derive(Clone, Debug)]
pub struct FoldReport {
    pub chain_id: String,
    pub metrics: MetricsReport,
}

/// Aggregate and per-fold results of a leave-one-out run.
#[derive(Clone, Debug)]
pub struct LoocvReport {
    pub aggregate: MetricsReport,
    pub folds: Vec<FoldReport>,
}

impl LoocvReport {
    /// Tab-separated table: one row per fold plus an AGGREGATE row.
    pub fn to_tsv(&self) -> String {
        let mut out =
            String::from("chain_id\ttp\tfp\ttn\tfn\taccuracy\tspecificity\tsensitivity\tmcc\n");
        let mut row = |name: &str, m: &MetricsReport| {
            out.push_str(&format!(
                "{name}\t{}\t{}\t{}\t{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\n",
                m.counts.tpc,
                m.counts.fpc,
                m.counts.tnc,
                m.counts.fnc,
                m.accuracy,
                m.specificity,
                m.sensitivity,
                m.correlation_coefficient
            ));
        };
        for fold in &self.folds {
            row(&fold.chain_id, &fold.metrics);
        }
        row("AGGREGATE", &self.aggregate);
        out
    }
}

/// Leave-one-protein-out cross-validation.
///
/// For each chain, `trainer` is handed the dataset without that chain (so
/// no held-out labels can influence training or threshold tuning) and must
/// return a predictor for unseen chains. Confusion counts are aggregated
/// over all held-out residues; per-fold metrics are also reported.
pub fn loocv<T, P>(d: &Dataset, trainer: T) -> Result<LoocvReport>
where
    T: Fn(&Dataset) -> Result<P>,
    P: Fn(&ProteinChain) -> Result<Vec<ResidueLabel>>,
{
    if d.len() < 2 {
        return Err(Error::data(format!(
            "leave-one-out needs at least 2 chains, dataset '{}' has {}",
            d.name(),
            d.len()
        )));
    }
    let mut aggregate = ConfusionCounts::default();
    let mut folds = Vec::with_capacity(d.len());
    for (i, held_out) in d.chains().iter().enumerate() {
        let training = d.without_chain(i);
        let predictor = trainer(&training)
            .map_err(|e| Error::data(format!("fold '{}': {e}", held_out.id())))?;
        let predicted = predictor(held_out)
            .map_err(|e| Error::data(format!("fold '{}': {e}", held_out.id())))?;
        let actual = held_out.labels().expect("dataset chains are labeled");
        let counts = confusion(&predicted, actual)
            .map_err(|e| Error::data(format!("fold '{}': {e}", held_out.id())))?;
        aggregate.add(&counts);
        folds.push(FoldReport {
            chain_id: held_out.id().to_string(),
            metrics: metrics(&counts)?,
        });
    }
    Ok(LoocvReport {
        aggregate: metrics(&aggregate)?,
        folds,
    })
}
