//! Structure-derived dataset construction: coordinate parsing, interface
//! labeling by inter-molecule atomic contact, and redundancy/resolution
//! filters.

pub mod align;
pub mod contact;
pub mod filter;
pub mod parse;

use std::collections::BTreeMap;

use crate::seq::ProteinChain;

/// One atom of a parsed structure.
#[derive(Clone, Debug, PartialEq)]
pub struct Atom {
    pub name: String,
    /// 1-based index into the owning molecule's residue sequence.
    pub residue_index: usize,
    pub chain_id: char,
    /// x/y/z in Ångström.
    pub position: [f64; 3],
    pub is_hydrogen: bool,
}

impl Atom {
    pub fn distance_sq(&self, other: &Atom) -> f64 {
        let dx = self.position[0] - other.position[0];
        let dy = self.position[1] - other.position[1];
        let dz = self.position[2] - other.position[2];
        dx * dx + dy * dy + dz * dz
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartnerKind {
    Protein,
    Rna,
}

/// A non-protein binding partner (one RNA chain, in practice).
#[derive(Clone, Debug)]
pub struct PartnerMolecule {
    pub kind: PartnerKind,
    pub atoms: Vec<Atom>,
}

/// A protein chain together with its atoms.
#[derive(Clone, Debug)]
pub struct ChainStructure {
    pub sequence: ProteinChain,
    pub atoms: Vec<Atom>,
}

/// One parsed complex: protein chains keyed by chain id, partner molecules,
/// and an optional resolution supplied by the dataset manifest.
#[derive(Clone, Debug)]
pub struct StructureModel {
    pub name: String,
    pub protein_chains: BTreeMap<char, ChainStructure>,
    pub partner_molecules: Vec<PartnerMolecule>,
    pub resolution: Option<f64>,
}

/// Contact rule for interface labeling: a residue is an interface residue iff
/// any of its (heavy, unless `include_hydrogens`) atoms lies within `cutoff`
/// Å of any partner atom.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContactParams {
    pub cutoff: f64,
    pub include_hydrogens: bool,
}

impl Default for ContactParams {
    fn default() -> Self {
        ContactParams {
            cutoff: 5.0,
            include_hydrogens: false,
        }
    }
}

/// Dataset-construction filters: pairwise identity ceiling, resolution
/// ceiling, minimum chain length.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterParams {
    pub max_identity: f64,
    pub max_resolution: f64,
    pub min_chain_len: usize,
}

impl Default for FilterParams {
    fn default() -> Self {
        FilterParams {
            max_identity: 0.30,
            max_resolution: 3.5,
            min_chain_len: 10,
        }
    }
}

pub use align::sequence_identity;
pub use contact::label_interface;
pub use filter::{filter_redundancy, filter_resolution, parse_manifest, ResolutionFilterOutcome};
pub use parse::{load_structure, parse_structure};
