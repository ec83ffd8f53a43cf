//! Protein chains, windows and labeled datasets.
//!
//! Positions are 0-based everywhere in this crate's APIs; all external I/O
//! (reports, mask files, annotations) is 1-based.

use crate::error::{Error, Result};
use crate::seq::alphabet::{AminoAcid, ResidueLabel};

/// A protein chain: identifier, residue sequence, optional per-residue labels.
///
/// Invariants (enforced at construction): at least one residue, no `Pad`
/// symbols inside the sequence, labels (when present) aligned with residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProteinChain {
    id: String,
    residues: Vec<AminoAcid>,
    labels: Option<Vec<ResidueLabel>>,
}

impl ProteinChain {
    pub fn new(id: impl Into<String>, residues: Vec<AminoAcid>) -> Result<ProteinChain> {
        let id = id.into();
        if residues.is_empty() {
            return Err(Error::data(format!("chain '{id}' has no residues")));
        }
        if residues.contains(&AminoAcid::Pad) {
            return Err(Error::data(format!(
                "chain '{id}' contains PAD inside its sequence"
            )));
        }
        Ok(ProteinChain {
            id,
            residues,
            labels: None,
        })
    }

    pub fn with_labels(
        id: impl Into<String>,
        residues: Vec<AminoAcid>,
        labels: Vec<ResidueLabel>,
    ) -> Result<ProteinChain> {
        let mut chain = ProteinChain::new(id, residues)?;
        chain.attach_labels(labels)?;
        Ok(chain)
    }

    /// Parse a chain from a plain residue string (one-letter codes).
    pub fn from_str_id(id: impl Into<String>, seq: &str) -> Result<ProteinChain> {
        ProteinChain::new(id, seq.chars().map(AminoAcid::from_letter).collect())
    }

    pub fn attach_labels(&mut self, labels: Vec<ResidueLabel>) -> Result<()> {
        if labels.len() != self.residues.len() {
            return Err(Error::data(format!(
                "chain '{}': {} labels for {} residues",
                self.id,
                labels.len(),
                self.residues.len()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Same chain under a different identifier.
    pub fn renamed(&self, id: impl Into<String>) -> ProteinChain {
        ProteinChain {
            id: id.into(),
            residues: self.residues.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn residues(&self) -> &[AminoAcid] {
        &self.residues
    }

    pub fn labels(&self) -> Option<&[ResidueLabel]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Residues as a one-letter string ('X' for UNK).
    pub fn sequence_string(&self) -> String {
        self.residues.iter().map(|aa| aa.to_char()).collect()
    }

    /// Extract the window of `w` residue identities centered at `position`
    /// (0-based). Offsets falling outside the chain carry `Pad`.
    pub fn window_at(&self, position: usize, w: usize) -> Result<Window> {
        if w == 0 || w % 2 == 0 {
            return Err(Error::invalid(format!("window size {w} is not odd")));
        }
        if position >= self.len() {
            return Err(Error::invalid(format!(
                "position {position} out of range for chain '{}' of length {}",
                self.id,
                self.len()
            )));
        }
        let half = (w as isize - 1) / 2;
        let symbols = (-half..=half)
            .map(|offset| {
                let p = position as isize + offset;
                if p < 0 || p >= self.len() as isize {
                    AminoAcid::Pad
                } else {
                    self.residues[p as usize]
                }
            })
            .collect();
        Ok(Window {
            center_position: position,
            symbols,
        })
    }

    /// All windows of size `w`, one per residue, in sequence order.
    pub fn windows(&self, w: usize) -> Result<Vec<Window>> {
        (0..self.len()).map(|p| self.window_at(p, w)).collect()
    }
}

/// An odd-length run of residue identities centered on the residue being
/// classified. The only feature representation used by the classifiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    center_position: usize,
    symbols: Vec<AminoAcid>,
}

impl Window {
    /// Build a window directly. `symbols` must have odd length.
    pub fn new(center_position: usize, symbols: Vec<AminoAcid>) -> Result<Window> {
        if symbols.is_empty() || symbols.len() % 2 == 0 {
            return Err(Error::invalid(format!(
                "window length {} is not odd",
                symbols.len()
            )));
        }
        Ok(Window {
            center_position,
            symbols,
        })
    }

    pub fn center_position(&self) -> usize {
        self.center_position
    }

    pub fn symbols(&self) -> &[AminoAcid] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The symbol at the window center (the residue being classified).
    pub fn center_symbol(&self) -> AminoAcid {
        self.symbols[self.symbols.len() / 2]
    }
}

/// A named collection of labeled chains with unique identifiers.
#[derive(Clone, Debug)]
pub struct Dataset {
    name: String,
    chains: Vec<ProteinChain>,
}

impl Dataset {
    pub fn new(name: impl Into<String>, chains: Vec<ProteinChain>) -> Result<Dataset> {
        let name = name.into();
        let mut seen = std::collections::HashSet::new();
        for chain in &chains {
            if chain.labels().is_none() {
                return Err(Error::data(format!(
                    "dataset '{name}': chain '{}' is unlabeled",
                    chain.id()
                )));
            }
            if !seen.insert(chain.id().to_string()) {
                return Err(Error::data(format!(
                    "dataset '{name}': duplicate chain id '{}'",
                    chain.id()
                )));
            }
        }
        Ok(Dataset { name, chains })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn chains(&self) -> &[ProteinChain] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn stats(&self) -> DatasetStats {
        // Chains are labeled by construction, so this cannot fail.
        dataset_stats(&self.chains).expect("dataset invariant: all chains labeled")
    }

    /// The dataset without the chain at `index`, for leave-one-out folds.
    pub fn without_chain(&self, index: usize) -> Dataset {
        let chains = self
            .chains
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, c)| c.clone())
            .collect();
        Dataset {
            name: format!("{}/fold-{index}", self.name),
            chains,
        }
    }
}

/// Summary counts over a labeled chain collection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DatasetStats {
    pub chains: usize,
    pub residues: usize,
    pub positives: usize,
    pub positive_fraction: f64,
}

/// Sum residue and interface counts over all chains. Errors on the first
/// unlabeled chain, naming it.
pub fn dataset_stats(chains: &[ProteinChain]) -> Result<DatasetStats> {
    let mut residues = 0usize;
    let mut positives = 0usize;
    for chain in chains {
        let labels = chain
            .labels()
            .ok_or_else(|| Error::data(format!("chain '{}' is unlabeled", chain.id())))?;
        residues += chain.len();
        positives += labels.iter().filter(|l| l.is_interface()).count();
    }
    let positive_fraction = if residues == 0 {
        0.0
    } else {
        positives as f64 / residues as f64
    };
    Ok(DatasetStats {
        chains: chains.len(),
        residues,
        positives,
        positive_fraction,
    })
}

/// Retain chains with at least `min_len` residues, preserving order.
pub fn filter_short_chains(chains: Vec<ProteinChain>, min_len: usize) -> Vec<ProteinChain> {
    chains.into_iter().filter(|c| c.len() >= min_len).collect()
}
