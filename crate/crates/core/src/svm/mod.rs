//! Stage-1 classifier: a binary SVM over one-hot encodings of residue
//! windows, trained by SMO.

pub mod kernel;
pub mod smo;

pub use kernel::KernelSpec;
pub use smo::{dual_objective, kkt_violations, solve, Solution, TrainConfig};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::seq::{Dataset, ProteinChain, ResidueLabel, Window, ALPHABET_SIZE};
use crate::svm::kernel::dot;

/// One-hot encode a window: one block of 22 indicators per position, exactly
/// one 1 per block.
pub fn encode_window(window: &Window) -> Vec<f64> {
    let mut v = vec![0.0; ALPHABET_SIZE * window.len()];
    for (pos, symbol) in window.symbols().iter().enumerate() {
        v[pos * ALPHABET_SIZE + symbol.index()] = 1.0;
    }
    v
}

/// A support vector: its feature vector, label (±1) and dual coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportVector {
    pub features: Vec<f64>,
    pub label: f64,
    pub alpha: f64,
}

/// Trained max-margin separator.
///
/// Invariants: 0 <= alpha <= C for every support vector and Σ alpha·y = 0
/// within 1e-6; for the linear kernel the collapsed weight vector reproduces
/// the support-vector decision form within 1e-9.
#[derive(Clone, Debug, PartialEq)]
pub struct SvmModel {
    pub(crate) kernel: KernelSpec,
    pub(crate) support_vectors: Vec<SupportVector>,
    pub(crate) bias: f64,
    pub(crate) c: f64,
    pub(crate) window_size: usize,
    pub(crate) feature_dim: usize,
    /// Collapsed weights, maintained for the linear kernel only.
    pub(crate) weights: Option<Vec<f64>>,
}

impl SvmModel {
    pub fn from_parts(
        kernel: KernelSpec,
        support_vectors: Vec<SupportVector>,
        bias: f64,
        c: f64,
        window_size: usize,
        feature_dim: usize,
    ) -> Result<SvmModel> {
        kernel.validate()?;
        if window_size == 0 || window_size % 2 == 0 {
            return Err(Error::invalid(format!(
                "window size {window_size} is not odd"
            )));
        }
        let mut balance = 0.0;
        for sv in &support_vectors {
            if sv.features.len() != feature_dim {
                return Err(Error::invalid(
                    "support vector dimension does not match feature_dim",
                ));
            }
            if sv.label != 1.0 && sv.label != -1.0 {
                return Err(Error::invalid("support vector labels must be ±1"));
            }
            if !(sv.alpha >= 0.0 && sv.alpha <= c) {
                return Err(Error::invalid(format!(
                    "dual coefficient {} outside [0, {c}]",
                    sv.alpha
                )));
            }
            balance += sv.alpha * sv.label;
        }
        if balance.abs() > 1e-6 {
            return Err(Error::invalid(format!(
                "support vector balance Σ alpha·y = {balance} exceeds 1e-6"
            )));
        }
        let weights = kernel.is_linear().then(|| {
            let mut w = vec![0.0; feature_dim];
            for sv in &support_vectors {
                let scale = sv.alpha * sv.label;
                for (wi, xi) in w.iter_mut().zip(&sv.features) {
                    *wi += scale * xi;
                }
            }
            w
        });
        Ok(SvmModel {
            kernel,
            support_vectors,
            bias,
            c,
            window_size,
            feature_dim,
            weights,
        })
    }

    pub fn kernel(&self) -> KernelSpec {
        self.kernel
    }

    pub fn window_size(&self) -> usize {
        self.window_size
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    pub fn support_vectors(&self) -> &[SupportVector] {
        &self.support_vectors
    }

    pub fn bias(&self) -> f64 {
        self.bias
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Collapsed weight vector (linear kernel only).
    pub fn collapsed_weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Decision value in support-vector form:
    /// Σ alpha_k y_k K(x_k, x) + b.
    pub fn decision_raw(&self, features: &[f64]) -> f64 {
        match &self.weights {
            Some(w) => dot(w, features) + self.bias,
            None => {
                self.support_vectors
                    .iter()
                    .map(|sv| sv.alpha * sv.label * self.kernel.eval(&sv.features, features))
                    .sum::<f64>()
                    + self.bias
            }
        }
    }

    /// Support-vector form evaluated without the collapsed-weight shortcut.
    pub fn decision_support_form(&self, features: &[f64]) -> f64 {
        self.support_vectors
            .iter()
            .map(|sv| sv.alpha * sv.label * self.kernel.eval(&sv.features, features))
            .sum::<f64>()
            + self.bias
    }

    /// Decision value for a window.
    pub fn decision(&self, window: &Window) -> Result<f64> {
        if window.len() != self.window_size {
            return Err(Error::invalid(format!(
                "window of size {} scored against a model with window size {}",
                window.len(),
                self.window_size
            )));
        }
        let encoded = encode_window(window);
        if encoded.len() != self.feature_dim {
            return Err(Error::invalid(format!(
                "window encodes to {} features but the model expects {}",
                encoded.len(),
                self.feature_dim
            )));
        }
        Ok(self.decision_raw(&encoded))
    }

    /// Interface iff the decision value is strictly positive (a value of
    /// exactly 0 resolves to non-interface).
    pub fn classify(&self, window: &Window) -> Result<ResidueLabel> {
        Ok(ResidueLabel::from_bool(self.decision(window)? > 0.0))
    }

    /// Stage-1 prediction mask over a whole chain.
    pub fn predict_chain(&self, chain: &ProteinChain) -> Result<Vec<bool>> {
        (0..chain.len())
            .map(|p| Ok(self.decision(&chain.window_at(p, self.window_size)?)? > 0.0))
            .collect()
    }
}

/// Train on every residue of every chain. Each residue contributes its
/// window (one-hot encoded) and its label (+1 interface, -1 otherwise).
/// When `cfg.negative_downsample` is set, negatives are subsampled (seeded)
/// to at most that ratio of the positive count before training.
pub fn svm_train(d: &Dataset, cfg: &TrainConfig, kernel: KernelSpec, w: usize) -> Result<SvmModel> {
    cfg.validate()?;
    if d.is_empty() {
        return Err(Error::data("cannot train on an empty dataset"));
    }
    let mut features: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<f64> = Vec::new();
    for chain in d.chains() {
        let chain_labels = chain.labels().expect("dataset chains are labeled");
        for (pos, label) in chain_labels.iter().enumerate() {
            features.push(encode_window(&chain.window_at(pos, w)?));
            labels.push(if label.is_interface() { 1.0 } else { -1.0 });
        }
    }

    if let Some(ratio) = cfg.negative_downsample {
        let positives = labels.iter().filter(|y| **y > 0.0).count();
        let max_negatives = ((positives as f64) * ratio).ceil() as usize;
        let negatives: Vec<usize> = (0..labels.len()).filter(|i| labels[*i] < 0.0).collect();
        if negatives.len() > max_negatives {
            // Separate stream from the solver's so the solve trajectory is
            // unaffected by whether down-sampling ran.
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x9e37_79b9_7f4a_7c15);
            let mut chosen = negatives;
            chosen.shuffle(&mut rng);
            chosen.truncate(max_negatives);
            let mut keep = vec![false; labels.len()];
            for i in 0..labels.len() {
                if labels[i] > 0.0 {
                    keep[i] = true;
                }
            }
            for i in chosen {
                keep[i] = true;
            }
            let mut kept_features = Vec::new();
            let mut kept_labels = Vec::new();
            for (i, k) in keep.iter().enumerate() {
                if *k {
                    kept_features.push(std::mem::take(&mut features[i]));
                    kept_labels.push(labels[i]);
                }
            }
            features = kept_features;
            labels = kept_labels;
        }
    }

    let solution = solve(&features, &labels, kernel, cfg)?;
    let support_vectors = solution
        .alpha
        .iter()
        .enumerate()
        .filter(|(_, a)| **a > 0.0)
        .map(|(i, a)| SupportVector {
            features: std::mem::take(&mut features[i]),
            label: labels[i],
            alpha: *a,
        })
        .collect();
    SvmModel::from_parts(
        kernel,
        support_vectors,
        solution.bias,
        cfg.c,
        w,
        ALPHABET_SIZE * w,
    )
}
