//! Redundancy and resolution filters plus the dataset manifest.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::seq::ProteinChain;
use crate::structure::align::sequence_identity;
use crate::structure::{FilterParams, StructureModel};

/// Greedy redundancy culling in input order: a chain is kept iff its
/// identity with every already-kept chain is strictly below
/// `params.max_identity`.
pub fn filter_redundancy(chains: Vec<ProteinChain>, params: &FilterParams) -> Vec<ProteinChain> {
    let mut kept: Vec<ProteinChain> = Vec::new();
    for chain in chains {
        let redundant = kept
            .iter()
            .any(|k| sequence_identity(k, &chain) >= params.max_identity);
        if !redundant {
            kept.push(chain);
        }
    }
    kept
}

/// Result of the resolution filter: models kept, and names of models dropped
/// because their resolution was missing or worse than the ceiling.
#[derive(Debug, Default)]
pub struct ResolutionFilterOutcome {
    pub kept: Vec<StructureModel>,
    pub dropped: Vec<String>,
}

/// Keep models with resolution <= `max_resolution` ("worse than" means
/// strictly greater is dropped). Models without a resolution entry are
/// dropped and reported in `dropped`.
pub fn filter_resolution(
    models: Vec<StructureModel>,
    max_resolution: f64,
) -> ResolutionFilterOutcome {
    let mut outcome = ResolutionFilterOutcome::default();
    for model in models {
        match model.resolution {
            Some(r) if r <= max_resolution => outcome.kept.push(model),
            Some(r) => outcome.dropped.push(format!(
                "{}: resolution {r} worse than {max_resolution}",
                model.name
            )),
            None => outcome
                .dropped
                .push(format!("{}: no resolution entry in manifest", model.name)),
        }
    }
    outcome
}

/// Parse a manifest of `file_path<TAB>resolution_Å` lines.
pub fn parse_manifest(text: &str) -> Result<Vec<(PathBuf, f64)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (path, res) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(line_no, "expected 'file_path<TAB>resolution'"))?;
        let resolution = res
            .trim()
            .parse::<f64>()
            .map_err(|_| Error::parse(line_no, format!("malformed resolution '{}'", res.trim())))?;
        out.push((PathBuf::from(path), resolution));
    }
    Ok(out)
}
