//! Sequential minimal optimization for the SVM dual.
//!
//! Simplified SMO: scan all examples for KKT violations beyond the
//! tolerance, pair each violator with a seeded-random second index drawn
//! from the non-bound set (falling back to any other index), solve the
//! two-variable subproblem analytically and update the bias. Training
//! terminates after `max_passes` consecutive full scans without an update.
//!
//! For the linear kernel the decision values are maintained through a
//! collapsed weight vector, so no kernel matrix is needed; other kernels
//! precompute the full matrix (desk-scale data).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::svm::kernel::{dot, KernelSpec};

/// Solver configuration.
///
/// `negative_downsample` is consumed by dataset-level training
/// (`svm_train`), not by the raw solver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrainConfig {
    /// Box constraint.
    pub c: f64,
    /// KKT tolerance.
    pub tolerance: f64,
    /// Consecutive update-free scans required to stop.
    pub max_passes: usize,
    /// Seed for the random second-index choice (and for down-sampling).
    pub seed: u64,
    /// Optional ceiling on the negatives:positives ratio.
    pub negative_downsample: Option<f64>,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            c: 1.0,
            tolerance: 1e-3,
            max_passes: 10,
            seed: 0,
            negative_downsample: None,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) {
            return Err(Error::invalid(format!(
                "C must be positive, got {}",
                self.c
            )));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::invalid(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if let Some(r) = self.negative_downsample {
            if !(r > 0.0) {
                return Err(Error::invalid(format!(
                    "downsample ratio must be positive, got {r}"
                )));
            }
        }
        Ok(())
    }
}

/// Dual variables after training, one per input example.
#[derive(Clone, Debug)]
pub struct Solution {
    pub alpha: Vec<f64>,
    pub bias: f64,
    /// Full scans performed.
    pub scans: usize,
}

// Alpha updates smaller than this are not counted as progress.
const MIN_ALPHA_STEP: f64 = 1e-5;

struct Problem<'a> {
    features: &'a [Vec<f64>],
    labels: &'a [f64],
    kernel: KernelSpec,
    /// Precomputed kernel matrix (non-linear kernels only).
    matrix: Option<Vec<f64>>,
    /// Collapsed weight vector (linear kernel only).
    weights: Vec<f64>,
    alpha: Vec<f64>,
    bias: f64,
}

impl<'a> Problem<'a> {
    fn new(features: &'a [Vec<f64>], labels: &'a [f64], kernel: KernelSpec) -> Problem<'a> {
        let n = features.len();
        let matrix = if kernel.is_linear() {
            None
        } else {
            let mut m = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let k = kernel.eval(&features[i], &features[j]);
                    m[i * n + j] = k;
                    m[j * n + i] = k;
                }
            }
            Some(m)
        };
        let dim = features.first().map(|f| f.len()).unwrap_or(0);
        Problem {
            features,
            labels,
            kernel,
            matrix,
            weights: vec![0.0; dim],
            alpha: vec![0.0; n],
            bias: 0.0,
        }
    }

    fn k(&self, i: usize, j: usize) -> f64 {
        match &self.matrix {
            Some(m) => m[i * self.features.len() + j],
            None => dot(&self.features[i], &self.features[j]),
        }
    }

    fn decision(&self, i: usize) -> f64 {
        if self.kernel.is_linear() {
            dot(&self.weights, &self.features[i]) + self.bias
        } else {
            let mut f = self.bias;
            for (j, a) in self.alpha.iter().enumerate() {
                if *a > 0.0 {
                    f += a * self.labels[j] * self.k(i, j);
                }
            }
            f
        }
    }

    fn apply_alpha_step(&mut self, i: usize, delta: f64) {
        self.alpha[i] += delta;
        if self.kernel.is_linear() {
            let scale = delta * self.labels[i];
            for (w, x) in self.weights.iter_mut().zip(&self.features[i]) {
                *w += scale * x;
            }
        }
    }
}

/// Current dual objective: Σα - 1/2 ΣΣ α_i α_j y_i y_j K(x_i, x_j).
pub fn dual_objective(
    features: &[Vec<f64>],
    labels: &[f64],
    alpha: &[f64],
    kernel: &KernelSpec,
) -> f64 {
    let mut obj: f64 = alpha.iter().sum();
    for i in 0..features.len() {
        if alpha[i] == 0.0 {
            continue;
        }
        for j in 0..features.len() {
            if alpha[j] == 0.0 {
                continue;
            }
            obj -= 0.5
                * alpha[i]
                * alpha[j]
                * labels[i]
                * labels[j]
                * kernel.eval(&features[i], &features[j]);
        }
    }
    obj
}

/// Per-example KKT violation magnitudes for a solution (0 when satisfied):
/// alpha = 0 requires y·f >= 1, 0 < alpha < C requires y·f = 1, and
/// alpha = C requires y·f <= 1.
pub fn kkt_violations(
    features: &[Vec<f64>],
    labels: &[f64],
    solution: &Solution,
    kernel: &KernelSpec,
    c: f64,
) -> Vec<f64> {
    features
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut f = solution.bias;
            for (j, a) in solution.alpha.iter().enumerate() {
                if *a > 0.0 {
                    f += a * labels[j] * kernel.eval(&features[j], x);
                }
            }
            let margin = labels[i] * f;
            let a = solution.alpha[i];
            if a <= 0.0 {
                (1.0 - margin).max(0.0)
            } else if a >= c {
                (margin - 1.0).max(0.0)
            } else {
                (margin - 1.0).abs()
            }
        })
        .collect()
}

/// Solve the dual on raw feature vectors. Labels must be ±1 with both
/// classes present.
pub fn solve(
    features: &[Vec<f64>],
    labels: &[f64],
    kernel: KernelSpec,
    cfg: &TrainConfig,
) -> Result<Solution> {
    cfg.validate()?;
    kernel.validate()?;
    if features.len() != labels.len() {
        return Err(Error::data(format!(
            "{} feature vectors for {} labels",
            features.len(),
            labels.len()
        )));
    }
    if labels.iter().any(|y| *y != 1.0 && *y != -1.0) {
        return Err(Error::data("labels must be +1 or -1"));
    }
    if !labels.contains(&1.0) || !labels.contains(&-1.0) {
        return Err(Error::data(
            "training set contains only one class; no separator exists",
        ));
    }
    let dim = features[0].len();
    if features.iter().any(|f| f.len() != dim) {
        return Err(Error::data("feature vectors have inconsistent dimensions"));
    }

    let n = features.len();
    let mut problem = Problem::new(features, labels, kernel);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut quiet_passes = 0usize;
    let mut scans = 0usize;

    // With opt-level asserts enabled, verify the dual objective never
    // decreases across accepted updates (small problems only; the check is
    // quadratic).
    let audit_objective = cfg!(debug_assertions) && n <= 64;
    let mut last_objective = 0.0;

    while quiet_passes < cfg.max_passes.max(1) {
        scans += 1;
        let mut changed = 0usize;
        for i in 0..n {
            let e_i = problem.decision(i) - labels[i];
            let r_i = labels[i] * e_i;
            let a_i = problem.alpha[i];
            let violates =
                (r_i < -cfg.tolerance && a_i < cfg.c) || (r_i > cfg.tolerance && a_i > 0.0);
            if !violates {
                continue;
            }
            let j = pick_second_index(&problem.alpha, cfg.c, i, n, &mut rng);
            if try_update(&mut problem, i, j, e_i, cfg) {
                changed += 1;
                if audit_objective {
                    let obj = dual_objective(features, labels, &problem.alpha, &kernel);
                    debug_assert!(
                        obj >= last_objective - 1e-9,
                        "dual objective decreased: {last_objective} -> {obj}"
                    );
                    last_objective = obj;
                }
            }
        }
        if changed == 0 {
            quiet_passes += 1;
        } else {
            quiet_passes = 0;
        }
    }

    Ok(Solution {
        alpha: problem.alpha,
        bias: problem.bias,
        scans,
    })
}

fn pick_second_index(alpha: &[f64], c: f64, i: usize, n: usize, rng: &mut ChaCha8Rng) -> usize {
    let non_bound: Vec<usize> = (0..n)
        .filter(|&j| j != i && alpha[j] > 0.0 && alpha[j] < c)
        .collect();
    if !non_bound.is_empty() {
        return non_bound[rng.gen_range(0..non_bound.len())];
    }
    // Fall back to any other index.
    let j = rng.gen_range(0..n - 1);
    if j >= i {
        j + 1
    } else {
        j
    }
}

/// Analytic two-variable step. Returns true if the pair was updated.
fn try_update(problem: &mut Problem, i: usize, j: usize, e_i: f64, cfg: &TrainConfig) -> bool {
    if i == j {
        return false;
    }
    let (y_i, y_j) = (problem.labels[i], problem.labels[j]);
    let (a_i_old, a_j_old) = (problem.alpha[i], problem.alpha[j]);
    let e_j = problem.decision(j) - y_j;

    let (low, high) = if y_i == y_j {
        (
            (a_i_old + a_j_old - cfg.c).max(0.0),
            (a_i_old + a_j_old).min(cfg.c),
        )
    } else {
        (
            (a_j_old - a_i_old).max(0.0),
            (cfg.c + a_j_old - a_i_old).min(cfg.c),
        )
    };
    if low >= high {
        return false;
    }

    let eta = 2.0 * problem.k(i, j) - problem.k(i, i) - problem.k(j, j);
    if eta >= 0.0 {
        return false;
    }

    let mut a_j_new = a_j_old - y_j * (e_i - e_j) / eta;
    a_j_new = a_j_new.clamp(low, high);
    if (a_j_new - a_j_old).abs() < MIN_ALPHA_STEP {
        return false;
    }
    let a_i_new = a_i_old + y_i * y_j * (a_j_old - a_j_new);

    let d_i = a_i_new - a_i_old;
    let d_j = a_j_new - a_j_old;
    let b1 = problem.bias - e_i - y_i * d_i * problem.k(i, i) - y_j * d_j * problem.k(i, j);
    let b2 = problem.bias - e_j - y_i * d_i * problem.k(i, j) - y_j * d_j * problem.k(j, j);
    problem.bias = if a_i_new > 0.0 && a_i_new < cfg.c {
        b1
    } else if a_j_new > 0.0 && a_j_new < cfg.c {
        b2
    } else {
        (b1 + b2) / 2.0
    };
    problem.apply_alpha_step(i, d_i);
    problem.apply_alpha_step(j, d_j);
    true
}
