//! Sequence-based prediction of protein-protein and protein-RNA interface
//! residues.
//!
//! Two classifiers over residue-identity windows: a Naïve Bayes predictor
//! for RNA-binding residues and a two-stage predictor (SVM followed by a
//! Bayesian neighborhood smoother) for protein-binding residues, plus the
//! dataset construction, leave-one-out evaluation and reporting machinery
//! around them.

pub mod cli;
pub mod error;
pub mod eval;
pub mod model_io;
pub mod naive_bayes;
pub mod report;
pub mod seq;
pub mod structure;
pub mod svm;
pub mod two_stage;

pub use error::{Error, Result};
