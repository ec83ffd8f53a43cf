//! Versioned JSON envelope shared by all trained models.
//!
//! Every file carries a `kind` tag and `format_version`. Loading validates
//! the model invariants; a loaded file re-serializes byte-identically.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::naive_bayes::NbModel;
use crate::seq::{ALPHABET, ALPHABET_SIZE};
use crate::svm::{KernelSpec, SupportVector, SvmModel};
use crate::two_stage::CptModel;

const FORMAT_VERSION: u32 = 1;

/// Any trained model.
#[derive(Clone, Debug)]
pub enum Model {
    NaiveBayes(NbModel),
    Svm(SvmModel),
    Cpt(CptModel),
}

impl Model {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Model::NaiveBayes(_) => "naive_bayes",
            Model::Svm(_) => "svm",
            Model::Cpt(_) => "cpt",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ModelWire {
    NaiveBayes(NbWire),
    Svm(SvmWire),
    Cpt(CptWire),
}

#[derive(Serialize, Deserialize)]
struct NbWire {
    format_version: u32,
    window_size: usize,
    alphabet: Vec<String>,
    /// [P(C=+), P(C=-)]
    prior: [f64; 2],
    /// tables[offset][class][symbol], class 0 = interface.
    tables: Vec<Vec<Vec<f64>>>,
    theta: f64,
    smoothing_alpha: f64,
}

#[derive(Serialize, Deserialize)]
struct SvmWire {
    format_version: u32,
    window_size: usize,
    feature_dim: usize,
    kernel: KernelSpec,
    c: f64,
    bias: f64,
    support_vectors: Vec<SparseVectorWire>,
}

/// Sparse index form: positions and values of the nonzero coordinates.
#[derive(Serialize, Deserialize)]
struct SparseVectorWire {
    indices: Vec<usize>,
    values: Vec<f64>,
    label: f64,
    alpha: f64,
}

#[derive(Serialize, Deserialize)]
struct CptWire {
    format_version: u32,
    radius: usize,
    /// table[c][x][y], c and x in {0, 1} with 1 = interface.
    table: Vec<Vec<Vec<f64>>>,
    theta: f64,
    smoothing_alpha: f64,
}

fn alphabet_strings() -> Vec<String> {
    ALPHABET.iter().map(|aa| aa.to_char().to_string()).collect()
}

fn check_version(version: u32) -> Result<()> {
    if version != FORMAT_VERSION {
        return Err(Error::data(format!(
            "unsupported model format_version {version} (expected {FORMAT_VERSION})"
        )));
    }
    Ok(())
}

fn to_wire(model: &Model) -> ModelWire {
    match model {
        Model::NaiveBayes(m) => ModelWire::NaiveBayes(NbWire {
            format_version: FORMAT_VERSION,
            window_size: m.window_size,
            alphabet: alphabet_strings(),
            prior: m.prior,
            tables: m
                .tables
                .iter()
                .map(|per_class| per_class.iter().map(|dist| dist.to_vec()).collect())
                .collect(),
            theta: m.theta,
            smoothing_alpha: m.smoothing_alpha,
        }),
        Model::Svm(m) => ModelWire::Svm(SvmWire {
            format_version: FORMAT_VERSION,
            window_size: m.window_size,
            feature_dim: m.feature_dim,
            kernel: m.kernel,
            c: m.c,
            bias: m.bias,
            support_vectors: m
                .support_vectors
                .iter()
                .map(|sv| {
                    let (indices, values) = sv
                        .features
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| **v != 0.0)
                        .map(|(i, v)| (i, *v))
                        .unzip();
                    SparseVectorWire {
                        indices,
                        values,
                        label: sv.label,
                        alpha: sv.alpha,
                    }
                })
                .collect(),
        }),
        Model::Cpt(m) => ModelWire::Cpt(CptWire {
            format_version: FORMAT_VERSION,
            radius: m.radius,
            table: m
                .table
                .iter()
                .map(|per_x| per_x.iter().map(|per_y| per_y.clone()).collect())
                .collect(),
            theta: m.theta,
            smoothing_alpha: m.smoothing_alpha,
        }),
    }
}

fn from_wire(wire: ModelWire) -> Result<Model> {
    match wire {
        ModelWire::NaiveBayes(w) => {
            check_version(w.format_version)?;
            if w.alphabet != alphabet_strings() {
                return Err(Error::data(
                    "model alphabet does not match this build's alphabet order",
                ));
            }
            let tables = w
                .tables
                .iter()
                .map(|per_class| {
                    if per_class.len() != 2 {
                        return Err(Error::data("table must hold exactly two classes"));
                    }
                    let mut out = [[0.0; ALPHABET_SIZE]; 2];
                    for (c, dist) in per_class.iter().enumerate() {
                        if dist.len() != ALPHABET_SIZE {
                            return Err(Error::data(format!(
                                "conditional distribution has {} entries (expected {ALPHABET_SIZE})",
                                dist.len()
                            )));
                        }
                        out[c].copy_from_slice(dist);
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Model::NaiveBayes(NbModel::from_parts(
                w.window_size,
                w.prior,
                tables,
                w.theta,
                w.smoothing_alpha,
            )?))
        }
        ModelWire::Svm(w) => {
            check_version(w.format_version)?;
            let support_vectors = w
                .support_vectors
                .into_iter()
                .map(|sv| {
                    if sv.indices.len() != sv.values.len() {
                        return Err(Error::data("sparse vector indices/values length mismatch"));
                    }
                    let mut features = vec![0.0; w.feature_dim];
                    for (i, v) in sv.indices.iter().zip(&sv.values) {
                        if *i >= w.feature_dim {
                            return Err(Error::data(format!(
                                "sparse index {i} out of range for feature_dim {}",
                                w.feature_dim
                            )));
                        }
                        features[*i] = *v;
                    }
                    Ok(SupportVector {
                        features,
                        label: sv.label,
                        alpha: sv.alpha,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Model::Svm(SvmModel::from_parts(
                w.kernel,
                support_vectors,
                w.bias,
                w.c,
                w.window_size,
                w.feature_dim,
            )?))
        }
        ModelWire::Cpt(w) => {
            check_version(w.format_version)?;
            if w.table.len() != 2 || w.table.iter().any(|x| x.len() != 2) {
                return Err(Error::data("CPT table must be 2x2x(2r+1)"));
            }
            let table = [
                [w.table[0][0].clone(), w.table[0][1].clone()],
                [w.table[1][0].clone(), w.table[1][1].clone()],
            ];
            Ok(Model::Cpt(CptModel::from_parts(
                w.radius,
                table,
                w.theta,
                w.smoothing_alpha,
            )?))
        }
    }
}

/// Serialize to the canonical JSON document (pretty, trailing newline).
pub fn to_json(model: &Model) -> Result<String> {
    let mut text = serde_json::to_string_pretty(&to_wire(model))?;
    text.push('\n');
    Ok(text)
}

/// Parse and validate a model document of any kind.
pub fn from_json(text: &str) -> Result<Model> {
    let wire: ModelWire = serde_json::from_str(text)?;
    from_wire(wire)
}

pub fn save_model(path: impl AsRef<Path>, model: &Model) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_json(model)?)
        .map_err(|e| Error::data(format!("cannot write '{}': {e}", path.display())))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<Model> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::data(format!("cannot read model file '{}': {e}", path.display())))?;
    from_json(&text).map_err(|e| Error::data(format!("{}: {e}", path.display())))
}
