//! Kernel functions for the stage-1 classifier.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Kernel specification. The default configuration is linear; `rbf_default`
/// derives gamma = 1/feature_count when none is given.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KernelSpec {
    Linear,
    Rbf { gamma: f64 },
}

impl KernelSpec {
    pub fn rbf_default(feature_dim: usize) -> KernelSpec {
        KernelSpec::Rbf {
            gamma: 1.0 / feature_dim as f64,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let KernelSpec::Rbf { gamma } = self {
            if !(*gamma > 0.0) {
                return Err(Error::invalid(format!(
                    "rbf gamma must be positive, got {gamma}"
                )));
            }
        }
        Ok(())
    }

    pub fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        match self {
            KernelSpec::Linear => dot(a, b),
            KernelSpec::Rbf { gamma } => {
                let mut sq = 0.0;
                for (x, y) in a.iter().zip(b) {
                    let d = x - y;
                    sq += d * d;
                }
                (-gamma * sq).exp()
            }
        }
    }

    pub fn is_linear(&self) -> bool {
        matches!(self, KernelSpec::Linear)
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
