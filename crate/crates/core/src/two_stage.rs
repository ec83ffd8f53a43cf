//! Stage-2 smoothing of SVM predictions.
//!
//! Interface residues cluster in primary sequence, so a residue's final call
//! combines its own stage-1 prediction X with Y, the number of stage-1
//! positives among its sequence neighbors within a radius (default 4,
//! target excluded). The conditional probability table P(C | X, Y) is fit
//! on training predictions; a residue is called interface iff
//! P(C=1|X,Y) / P(C=0|X,Y) strictly exceeds θ.

use crate::error::{Error, Result};
use crate::eval::{confusion, mcc};
use crate::seq::{Dataset, ProteinChain, ResidueLabel};
use crate::svm::SvmModel;

/// Per-chain stage-1 prediction mask (true = predicted interface).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageOnePrediction(Vec<bool>);

impl StageOnePrediction {
    pub fn new(mask: Vec<bool>) -> StageOnePrediction {
        StageOnePrediction(mask)
    }

    pub fn mask(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Count stage-1 positives at positions j ≠ i with |j - i| <= r. Neighbor
/// windows truncate at the chain termini; the target itself is excluded, so
/// 0 <= Y <= 2r.
pub fn neighbor_count(p: &StageOnePrediction, i: usize, r: usize) -> Result<usize> {
    if i >= p.len() {
        return Err(Error::invalid(format!(
            "index {i} out of range for a prediction of length {}",
            p.len()
        )));
    }
    let lo = i.saturating_sub(r);
    let hi = (i + r).min(p.len() - 1);
    Ok((lo..=hi).filter(|j| *j != i && p.0[*j]).count())
}

/// The stage-2 conditional probability table and threshold.
///
/// `table[c][x][y] = P(C=c | X=x, Y=y)` with c, x ∈ {0, 1} (1 = interface)
/// and y ∈ 0..=2r. Every (x, y) column sums to 1 with both entries positive.
#[derive(Clone, Debug, PartialEq)]
pub struct CptModel {
    pub(crate) radius: usize,
    pub(crate) table: [[Vec<f64>; 2]; 2],
    pub(crate) theta: f64,
    pub(crate) smoothing_alpha: f64,
}

impl CptModel {
    pub fn from_parts(
        radius: usize,
        table: [[Vec<f64>; 2]; 2],
        theta: f64,
        smoothing_alpha: f64,
    ) -> Result<CptModel> {
        let width = 2 * radius + 1;
        for per_x in &table {
            for per_y in per_x {
                if per_y.len() != width {
                    return Err(Error::invalid(format!(
                        "table row has {} entries for radius {radius} (expected {width})",
                        per_y.len()
                    )));
                }
            }
        }
        for x in 0..2 {
            for y in 0..width {
                let p0 = table[0][x][y];
                let p1 = table[1][x][y];
                if !(p0 > 0.0 && p1 > 0.0) || (p0 + p1 - 1.0).abs() > 1e-9 {
                    return Err(Error::invalid(format!(
                        "P(C|X={x},Y={y}) = ({p0}, {p1}) is not a strictly positive distribution"
                    )));
                }
            }
        }
        if !(theta > 0.0) {
            return Err(Error::invalid(format!(
                "theta must be positive, got {theta}"
            )));
        }
        Ok(CptModel {
            radius,
            table,
            theta,
            smoothing_alpha,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn set_theta(&mut self, theta: f64) -> Result<()> {
        if !(theta > 0.0) {
            return Err(Error::invalid(format!(
                "theta must be positive, got {theta}"
            )));
        }
        self.theta = theta;
        Ok(())
    }

    pub fn smoothing_alpha(&self) -> f64 {
        self.smoothing_alpha
    }

    /// P(C=1|X=x,Y=y) / P(C=0|X=x,Y=y).
    pub fn ratio(&self, x: bool, y: usize) -> f64 {
        let xi = usize::from(x);
        self.table[1][xi][y] / self.table[0][xi][y]
    }
}

/// Fit the table from aligned (stage-1 prediction, true label) chains with
/// add-alpha smoothing per (X, Y) bucket. θ is left at 1.
pub fn fit_cpt(
    d: &Dataset,
    stage1: &[StageOnePrediction],
    radius: usize,
    alpha: f64,
) -> Result<CptModel> {
    if !(alpha > 0.0) {
        return Err(Error::invalid(format!(
            "smoothing alpha must be positive, got {alpha}"
        )));
    }
    if d.len() != stage1.len() {
        return Err(Error::data(format!(
            "{} stage-1 predictions for {} chains",
            stage1.len(),
            d.len()
        )));
    }
    let width = 2 * radius + 1;
    // counts[c][x][y]
    let mut counts = [
        [vec![0u64; width], vec![0u64; width]],
        [vec![0u64; width], vec![0u64; width]],
    ];
    for (chain, prediction) in d.chains().iter().zip(stage1) {
        if prediction.len() != chain.len() {
            return Err(Error::data(format!(
                "chain '{}': stage-1 prediction length {} does not match chain length {}",
                chain.id(),
                prediction.len(),
                chain.len()
            )));
        }
        let labels = chain.labels().expect("dataset chains are labeled");
        for (i, label) in labels.iter().enumerate() {
            let x = usize::from(prediction.0[i]);
            let y = neighbor_count(prediction, i, radius)?;
            let c = usize::from(label.is_interface());
            counts[c][x][y] += 1;
        }
    }

    let mut table = [
        [vec![0.0; width], vec![0.0; width]],
        [vec![0.0; width], vec![0.0; width]],
    ];
    for x in 0..2 {
        for y in 0..width {
            let denom = (counts[0][x][y] + counts[1][x][y]) as f64 + 2.0 * alpha;
            table[0][x][y] = (counts[0][x][y] as f64 + alpha) / denom;
            table[1][x][y] = (counts[1][x][y] as f64 + alpha) / denom;
        }
    }
    CptModel::from_parts(radius, table, 1.0, alpha)
}

/// Apply the likelihood-ratio test per residue: interface iff
/// ratio(X, Y) > θ (strict; a ratio equal to θ is non-interface).
pub fn stage2_classify(m: &CptModel, stage1: &StageOnePrediction) -> Vec<ResidueLabel> {
    (0..stage1.len())
        .map(|i| {
            let y = neighbor_count(stage1, i, m.radius).expect("index in range");
            ResidueLabel::from_bool(m.ratio(stage1.0[i], y) > m.theta)
        })
        .collect()
}

/// One evaluated grid point of the θ search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaGridPoint {
    pub theta: f64,
    pub mcc: f64,
}

/// Outcome of the θ grid search.
#[derive(Clone, Debug)]
pub struct ThetaSearch {
    pub theta: f64,
    /// All evaluated grid points, in evaluation order.
    pub grid: Vec<ThetaGridPoint>,
}

/// Evaluate θ ∈ {0.01, 0.02, ..., 1.00} (exactly 100 points) on the
/// training predictions and return the θ with the highest MCC, ties toward
/// the larger θ. A degenerate MCC counts as 0 at that grid point.
pub fn search_theta(
    m: &CptModel,
    d: &Dataset,
    stage1: &[StageOnePrediction],
) -> Result<ThetaSearch> {
    if d.len() != stage1.len() {
        return Err(Error::data(format!(
            "{} stage-1 predictions for {} chains",
            stage1.len(),
            d.len()
        )));
    }
    let mut grid = Vec::with_capacity(100);
    let mut best_theta = 0.0;
    let mut best_mcc = f64::NEG_INFINITY;
    for step in 1..=100u32 {
        let theta = f64::from(step) / 100.0;
        let mut candidate = m.clone();
        candidate.set_theta(theta)?;
        let mut counts = crate::eval::ConfusionCounts::default();
        for (chain, prediction) in d.chains().iter().zip(stage1) {
            let predicted = stage2_classify(&candidate, prediction);
            let actual = chain.labels().expect("dataset chains are labeled");
            counts.add(
                &confusion(&predicted, actual)
                    .map_err(|e| Error::data(format!("chain '{}': {e}", chain.id())))?,
            );
        }
        let point = ThetaGridPoint {
            theta,
            mcc: mcc(&counts),
        };
        grid.push(point);
        if point.mcc >= best_mcc {
            best_mcc = point.mcc;
            best_theta = point.theta;
        }
    }
    Ok(ThetaSearch {
        theta: best_theta,
        grid,
    })
}

/// Full pipeline for one chain: stage-1 SVM decisions, then the stage-2
/// smoother.
pub fn two_stage_predict(
    svm: &SvmModel,
    cpt: &CptModel,
    chain: &ProteinChain,
) -> Result<Vec<ResidueLabel>> {
    let stage1 = StageOnePrediction::new(svm.predict_chain(chain)?);
    Ok(stage2_classify(cpt, &stage1))
}

/// Stage-1 masks for every chain of a dataset, in dataset order.
pub fn stage_one_predictions(svm: &SvmModel, d: &Dataset) -> Result<Vec<StageOnePrediction>> {
    d.chains()
        .iter()
        .map(|c| Ok(StageOnePrediction::new(svm.predict_chain(c)?)))
        .collect()
}

/// Convenience: stage-2 labels as a boolean mask.
pub fn stage2_mask(m: &CptModel, stage1: &StageOnePrediction) -> Vec<bool> {
    stage2_classify(m, stage1)
        .iter()
        .map(|l| l.is_interface())
        .collect()
}
