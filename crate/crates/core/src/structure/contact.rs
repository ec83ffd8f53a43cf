//! Interface labeling by inter-molecule atomic contact.
//!
//! A residue is labeled interface iff any of its atoms lies within the
//! cutoff distance of any partner atom (hydrogens excluded unless
//! requested). Partner atoms are indexed in a uniform spatial hash grid
//! with cell size equal to the cutoff, so each query examines at most the
//! 27 surrounding cells.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::seq::ResidueLabel;
use crate::structure::{Atom, ContactParams, PartnerKind, StructureModel};

struct SpatialGrid<'a> {
    cells: HashMap<(i64, i64, i64), Vec<&'a Atom>>,
    cell_size: f64,
}

impl<'a> SpatialGrid<'a> {
    fn build(atoms: &[&'a Atom], cell_size: f64) -> SpatialGrid<'a> {
        let mut cells: HashMap<(i64, i64, i64), Vec<&Atom>> = HashMap::new();
        for atom in atoms {
            cells
                .entry(Self::key(atom.position, cell_size))
                .or_default()
                .push(atom);
        }
        SpatialGrid { cells, cell_size }
    }

    fn key(pos: [f64; 3], cell_size: f64) -> (i64, i64, i64) {
        (
            (pos[0] / cell_size).floor() as i64,
            (pos[1] / cell_size).floor() as i64,
            (pos[2] / cell_size).floor() as i64,
        )
    }

    /// True iff any indexed atom lies within `cutoff` of `pos`.
    fn has_contact(&self, pos: [f64; 3], cutoff: f64) -> bool {
        let (cx, cy, cz) = Self::key(pos, self.cell_size);
        let cutoff_sq = cutoff * cutoff;
        for dx in -1..=1 {
            for dy in -1..=1 {
                for dz in -1..=1 {
                    if let Some(atoms) = self.cells.get(&(cx + dx, cy + dy, cz + dz)) {
                        for atom in atoms {
                            let d = [
                                atom.position[0] - pos[0],
                                atom.position[1] - pos[1],
                                atom.position[2] - pos[2],
                            ];
                            if d[0] * d[0] + d[1] * d[1] + d[2] * d[2] <= cutoff_sq {
                                return true;
                            }
                        }
                    }
                }
            }
        }
        false
    }
}

fn keep(atom: &Atom, params: &ContactParams) -> bool {
    params.include_hydrogens || !atom.is_hydrogen
}

/// Label every residue of `chain_id` against the model's partner molecules
/// of `partner_kind`. For `PartnerKind::Protein` the partners are all other
/// protein chains (plus any explicitly stored protein partner molecules).
pub fn label_interface(
    model: &StructureModel,
    chain_id: char,
    partner_kind: PartnerKind,
    params: &ContactParams,
) -> Result<Vec<ResidueLabel>> {
    if params.cutoff <= 0.0 {
        return Err(Error::invalid(format!(
            "contact cutoff must be positive, got {}",
            params.cutoff
        )));
    }
    let chain = model.protein_chains.get(&chain_id).ok_or_else(|| {
        Error::data(format!(
            "chain '{chain_id}' not found in model '{}'",
            model.name
        ))
    })?;
    if chain.atoms.is_empty() {
        return Err(Error::data(format!(
            "chain '{chain_id}' in model '{}' has no atoms",
            model.name
        )));
    }

    let mut partner_atoms: Vec<&Atom> = Vec::new();
    match partner_kind {
        PartnerKind::Rna => {
            for p in &model.partner_molecules {
                if p.kind == PartnerKind::Rna {
                    partner_atoms.extend(p.atoms.iter().filter(|a| keep(a, params)));
                }
            }
        }
        PartnerKind::Protein => {
            for (other_id, other) in &model.protein_chains {
                if *other_id != chain_id {
                    partner_atoms.extend(other.atoms.iter().filter(|a| keep(a, params)));
                }
            }
            for p in &model.partner_molecules {
                if p.kind == PartnerKind::Protein {
                    partner_atoms.extend(p.atoms.iter().filter(|a| keep(a, params)));
                }
            }
        }
    }
    if partner_atoms.is_empty() {
        return Err(Error::data(format!(
            "model '{}' has no partner molecules of the requested kind for chain '{chain_id}'",
            model.name
        )));
    }

    let grid = SpatialGrid::build(&partner_atoms, params.cutoff);
    let mut labels = vec![ResidueLabel::NonInterface; chain.sequence.len()];
    for atom in chain.atoms.iter().filter(|a| keep(a, params)) {
        let idx = atom.residue_index - 1;
        if labels[idx].is_interface() {
            continue;
        }
        if grid.has_contact(atom.position, params.cutoff) {
            labels[idx] = ResidueLabel::Interface;
        }
    }
    Ok(labels)
}
