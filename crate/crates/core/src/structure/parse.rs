//! Fixed-column coordinate file parser (legacy PDB layout).
//!
//! Column ranges (1-based, inclusive): record name 1-6, atom name 13-16,
//! residue name 18-20, chain id 22, residue sequence number 23-26,
//! x 31-38, y 39-46, z 47-54.
//!
//! Protein residues are recognized by the 20 standard three-letter names and
//! RNA residues by the right-justified names A/C/G/U; all other residues
//! (waters, ions, DNA, modified residues) are ignored before any numeric
//! field is touched. Only the first model of a multi-model file is read.

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::seq::{AminoAcid, ProteinChain};
use crate::structure::{Atom, ChainStructure, PartnerKind, PartnerMolecule, StructureModel};

const RNA_NAMES: [&str; 4] = ["A", "C", "G", "U"];

fn field(line: &str, start: usize, end: usize) -> Option<&str> {
    // 1-based inclusive columns on the ASCII line.
    line.get(start - 1..end)
}

fn numeric_field(line: &str, start: usize, end: usize, line_no: usize, what: &str) -> Result<f64> {
    let raw = field(line, start, end)
        .ok_or_else(|| Error::parse(line_no, format!("record too short for {what} field")))?;
    raw.trim().parse::<f64>().map_err(|_| {
        Error::parse(
            line_no,
            format!("malformed fixed-width {what} field '{raw}'"),
        )
    })
}

/// An atom name denotes hydrogen when its first alphabetic character is 'H'
/// or 'D' (names like "1HB" carry a leading digit).
fn name_is_hydrogen(name: &str) -> bool {
    name.chars()
        .find(|c| c.is_ascii_alphabetic())
        .map(|c| c == 'H' || c == 'D')
        .unwrap_or(false)
}

#[derive(Default)]
struct MoleculeBuilder {
    residues: Vec<AminoAcid>,
    index_by_resseq: HashMap<i32, usize>,
    atoms: Vec<Atom>,
}

impl MoleculeBuilder {
    fn push_atom(&mut self, resseq: i32, aa: AminoAcid, mut atom: Atom) {
        let idx = *self.index_by_resseq.entry(resseq).or_insert_with(|| {
            self.residues.push(aa);
            self.residues.len() - 1
        });
        atom.residue_index = idx + 1;
        self.atoms.push(atom);
    }
}

/// Parse one coordinate file. The model name is left empty; `load_structure`
/// fills it from the file stem.
pub fn parse_structure(text: &str) -> Result<StructureModel> {
    let mut protein: BTreeMap<char, MoleculeBuilder> = BTreeMap::new();
    let mut rna: BTreeMap<char, MoleculeBuilder> = BTreeMap::new();

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let record = field(line, 1, 6).unwrap_or(line).trim_end();
        match record {
            "ATOM" | "HETATM" => {}
            // First model only.
            "ENDMDL" => break,
            _ => continue,
        }

        let res_name = field(line, 18, 20)
            .ok_or_else(|| Error::parse(line_no, "record too short for residue name field"))?;
        let trimmed_res = res_name.trim();

        enum Kind {
            Protein(AminoAcid),
            Rna,
        }
        let kind = if let Some(aa) = AminoAcid::from_three_letter(trimmed_res) {
            Kind::Protein(aa)
        } else if RNA_NAMES.contains(&trimmed_res) {
            Kind::Rna
        } else {
            continue; // waters, ions, DNA, anything else
        };

        let atom_name = field(line, 13, 16)
            .ok_or_else(|| Error::parse(line_no, "record too short for atom name field"))?
            .trim()
            .to_string();
        let chain_id = field(line, 22, 22)
            .and_then(|s| s.chars().next())
            .ok_or_else(|| Error::parse(line_no, "record too short for chain id field"))?;
        let resseq_raw = field(line, 23, 26)
            .ok_or_else(|| Error::parse(line_no, "record too short for residue number field"))?;
        let resseq = resseq_raw.trim().parse::<i32>().map_err(|_| {
            Error::parse(
                line_no,
                format!("malformed fixed-width residue number field '{resseq_raw}'"),
            )
        })?;
        let x = numeric_field(line, 31, 38, line_no, "x")?;
        let y = numeric_field(line, 39, 46, line_no, "y")?;
        let z = numeric_field(line, 47, 54, line_no, "z")?;
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::parse(line_no, "non-finite coordinate"));
        }

        let atom = Atom {
            is_hydrogen: name_is_hydrogen(&atom_name),
            name: atom_name,
            residue_index: 0, // set by the builder
            chain_id,
            position: [x, y, z],
        };
        match kind {
            Kind::Protein(aa) => protein
                .entry(chain_id)
                .or_default()
                .push_atom(resseq, aa, atom),
            Kind::Rna => rna
                .entry(chain_id)
                .or_default()
                .push_atom(resseq, AminoAcid::Unk, atom),
        }
    }

    if protein.is_empty() {
        return Err(Error::data("no protein chain in structure"));
    }

    let protein_chains = protein
        .into_iter()
        .map(|(chain_id, b)| {
            let sequence = ProteinChain::new(chain_id.to_string(), b.residues)?;
            Ok((
                chain_id,
                ChainStructure {
                    sequence,
                    atoms: b.atoms,
                },
            ))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;

    let partner_molecules = rna
        .into_values()
        .map(|b| PartnerMolecule {
            kind: PartnerKind::Rna,
            atoms: b.atoms,
        })
        .collect();

    Ok(StructureModel {
        name: String::new(),
        protein_chains,
        partner_molecules,
        resolution: None,
    })
}

/// Read and parse a coordinate file, naming the model after the file stem.
pub fn load_structure(path: impl AsRef<Path>) -> Result<StructureModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::data(format!("cannot read '{}': {e}", path.display())))?;
    let mut model = parse_structure(&text)?;
    model.name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(model)
}
