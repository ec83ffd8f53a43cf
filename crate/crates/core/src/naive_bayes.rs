//! Naïve Bayes interface classifier over residue-identity windows.
//!
//! Per window offset and class, the model holds a smoothed distribution over
//! the 22-symbol alphabet. A window is scored by the log likelihood ratio
//! of the two classes (prior included) and classified interface iff the
//! ratio is at least the decision threshold θ (inclusive boundary).

use crate::error::{Error, Result};
use crate::eval::{mcc, ConfusionCounts};
use crate::seq::{Dataset, ProteinChain, ResidueLabel, Window, ALPHABET_SIZE};

/// Class index into priors and tables: interface first.
const POS: usize = 0;
const NEG: usize = 1;

/// Trained Naïve Bayes model.
///
/// Invariants: priors sum to 1 and are both positive; every per-offset,
/// per-class distribution sums to 1 (within 1e-9) with strictly positive
/// entries; θ > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct NbModel {
    pub(crate) window_size: usize,
    /// [P(C=+), P(C=-)]
    pub(crate) prior: [f64; 2],
    /// tables[offset][class][symbol] = P(X_offset = symbol | class),
    /// offsets ordered -n..=n.
    pub(crate) tables: Vec<[[f64; ALPHABET_SIZE]; 2]>,
    /// Decision threshold on the ratio scale; compared in log space.
    pub(crate) theta: f64,
    pub(crate) smoothing_alpha: f64,
}

impl NbModel {
    /// Build a model from explicit parameters, validating the invariants.
    pub fn from_parts(
        window_size: usize,
        prior: [f64; 2],
        tables: Vec<[[f64; ALPHABET_SIZE]; 2]>,
        theta: f64,
        smoothing_alpha: f64,
    ) -> Result<NbModel> {
        if window_size == 0 || window_size % 2 == 0 {
            return Err(Error::invalid(format!(
                "window size {window_size} is not odd"
            )));
        }
        if tables.len() != window_size {
            return Err(Error::invalid(format!(
                "{} offset tables for window size {window_size}",
                tables.len()
            )));
        }
        if !(prior[POS] > 0.0 && prior[NEG] > 0.0) || (prior[POS] + prior[NEG] - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "class priors must be positive and sum to 1, got {prior:?}"
            )));
        }
        if !(theta > 0.0) {
            return Err(Error::invalid(format!(
                "theta must be positive, got {theta}"
            )));
        }
        for (offset, per_class) in tables.iter().enumerate() {
            for dist in per_class {
                let sum: f64 = dist.iter().sum();
                if (sum - 1.0).abs() > 1e-9 || dist.iter().any(|p| *p <= 0.0) {
                    return Err(Error::invalid(format!(
                        "conditional table at offset index {offset} is not a strictly positive distribution"
                    )));
                }
            }
        }
        Ok(NbModel {
            window_size,
            prior,
            tables,
            theta,
            smoothing_alpha,
        })
    }

    pub fn window_size(&self) -> usize {
        self.window_size
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

    pub fn prior_interface(&self) -> f64 {
        self.prior[POS]
    }

    pub fn smoothing_alpha(&self) -> f64 {
        self.smoothing_alpha
    }

    /// Log likelihood ratio of the window:
    /// log[P(+) Π P(x_i|+)] - log[P(-) Π P(x_i|-)]. Finite for every input.
    pub fn score(&self, window: &Window) -> Result<f64> {
        if window.len() != self.window_size {
            return Err(Error::invalid(format!(
                "window of size {} scored against a model with window size {}",
                window.len(),
                self.window_size
            )));
        }
        let mut score = self.prior[POS].ln() - self.prior[NEG].ln();
        for (offset, symbol) in window.symbols().iter().enumerate() {
            let per_class = &self.tables[offset];
            score += per_class[POS][symbol.index()].ln() - per_class[NEG][symbol.index()].ln();
        }
        Ok(score)
    }

    /// Interface iff the likelihood ratio is at least θ (boundary inclusive).
    pub fn classify(&self, window: &Window) -> Result<ResidueLabel> {
        Ok(ResidueLabel::from_bool(
            self.score(window)? >= self.theta.ln(),
        ))
    }

    pub fn score_chain(&self, chain: &ProteinChain) -> Result<Vec<f64>> {
        (0..chain.len())
            .map(|p| self.score(&chain.window_at(p, self.window_size)?))
            .collect()
    }

    pub fn classify_chain(&self, chain: &ProteinChain) -> Result<Vec<ResidueLabel>> {
        let log_theta = self.theta.ln();
        Ok(self
            .score_chain(chain)?
            .into_iter()
            .map(|s| ResidueLabel::from_bool(s >= log_theta))
            .collect())
    }
}

/// Train on every residue of every chain (one example per residue: its
/// window and its label). Priors are class frequencies; conditional tables
/// are add-alpha smoothed symbol frequencies. A non-positive alpha falls
/// back to 1 so that all table entries stay positive. θ is left at 1.
pub fn nb_train(d: &Dataset, w: usize, alpha: f64) -> Result<NbModel> {
    if d.is_empty() {
        return Err(Error::data("cannot train on an empty dataset"));
    }
    if w == 0 || w % 2 == 0 {
        return Err(Error::invalid(format!("window size {w} is not odd")));
    }
    let alpha = if alpha > 0.0 { alpha } else { 1.0 };

    let mut class_counts = [0u64; 2];
    let mut counts = vec![[[0u64; ALPHABET_SIZE]; 2]; w];
    for chain in d.chains() {
        let labels = chain.labels().expect("dataset chains are labeled");
        for (pos, label) in labels.iter().enumerate() {
            let class = if label.is_interface() { POS } else { NEG };
            class_counts[class] += 1;
            let window = chain.window_at(pos, w)?;
            for (offset, symbol) in window.symbols().iter().enumerate() {
                counts[offset][class][symbol.index()] += 1;
            }
        }
    }
    if class_counts[POS] == 0 || class_counts[NEG] == 0 {
        return Err(Error::data(
            "training set contains only one class; the likelihood ratio is undefined",
        ));
    }

    let total = (class_counts[POS] + class_counts[NEG]) as f64;
    let prior = [
        class_counts[POS] as f64 / total,
        class_counts[NEG] as f64 / total,
    ];
    let tables = counts
        .into_iter()
        .map(|per_class| {
            let mut out = [[0.0; ALPHABET_SIZE]; 2];
            for class in [POS, NEG] {
                let denom = class_counts[class] as f64 + alpha * ALPHABET_SIZE as f64;
                for (symbol, count) in per_class[class].iter().enumerate() {
                    out[class][symbol] = (*count as f64 + alpha) / denom;
                }
            }
            out
        })
        .collect();

    NbModel::from_parts(w, prior, tables, 1.0, alpha)
}

/// Find the θ maximizing training-set MCC. Candidates are the midpoints of
/// consecutive distinct sorted scores plus one guard below every score
/// (all-positive) and one above (all-negative); ties prefer the larger
/// threshold. Returns θ on the ratio scale.
pub fn nb_tune_theta(model: &NbModel, d: &Dataset) -> Result<f64> {
    let mut scored: Vec<(f64, bool)> = Vec::new();
    for chain in d.chains() {
        let labels = chain.labels().expect("dataset chains are labeled");
        for (score, label) in model.score_chain(chain)?.iter().zip(labels) {
            scored.push((*score, label.is_interface()));
        }
    }
    if scored.is_empty() {
        return Err(Error::data("no residues to tune on"));
    }

    // Descending by score; prefix i holds exactly the residues predicted
    // positive at any threshold in (score[i], score[i-1]].
    scored.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("scores are finite"));
    let total_pos = scored.iter().filter(|(_, p)| *p).count() as u64;
    let total = scored.len() as u64;
    let mut prefix_pos = Vec::with_capacity(scored.len() + 1);
    prefix_pos.push(0u64);
    for (_, p) in &scored {
        prefix_pos.push(prefix_pos.last().unwrap() + u64::from(*p));
    }

    let mut distinct: Vec<f64> = scored.iter().map(|(s, _)| *s).collect();
    distinct.dedup();
    let lo = *distinct.last().unwrap() - 1.0;
    let hi = distinct[0] + 1.0;
    let mut candidates = vec![lo];
    candidates.extend(
        distinct
            .windows(2)
            .rev()
            .map(|pair| (pair[0] + pair[1]) / 2.0),
    );
    candidates.push(hi);

    let mut best = f64::NEG_INFINITY;
    let mut best_threshold = hi;
    for t in candidates {
        // Count of scores >= t on the descending-sorted array.
        let n_pred_pos = scored.partition_point(|(s, _)| *s >= t) as u64;
        let tp = prefix_pos[n_pred_pos as usize];
        let fp = n_pred_pos - tp;
        let counts = ConfusionCounts {
            tpc: tp,
            fpc: fp,
            fnc: total_pos - tp,
            tnc: (total - total_pos) - fp,
        };
        let m = mcc(&counts);
        if m >= best {
            best = m;
            best_threshold = t;
        }
    }
    Ok(best_threshold.exp())
}
