//! FASTA parsing and writing.

use crate::error::{Error, Result};
use crate::seq::alphabet::AminoAcid;
use crate::seq::chain::ProteinChain;

/// Parse FASTA text into chains. The record id is the header up to the first
/// whitespace; unrecognized letters map to UNK; whitespace inside sequence
/// lines is ignored.
pub fn parse_fasta(text: &str) -> Result<Vec<ProteinChain>> {
    let mut chains = Vec::new();
    let mut current: Option<(String, Vec<AminoAcid>, usize)> = None;

    let flush = |record: Option<(String, Vec<AminoAcid>, usize)>,
                 chains: &mut Vec<ProteinChain>|
     -> Result<()> {
        if let Some((id, residues, header_line)) = record {
            if residues.is_empty() {
                return Err(Error::parse(
                    header_line,
                    format!("record '{id}' has an empty sequence"),
                ));
            }
            chains.push(ProteinChain::new(id, residues)?);
        }
        Ok(())
    };

    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(header) = trimmed.strip_prefix('>') {
            flush(current.take(), &mut chains)?;
            let id = header.split_whitespace().next().unwrap_or("").to_string();
            if id.is_empty() {
                return Err(Error::parse(line_no, "record header has no id"));
            }
            current = Some((id, Vec::new(), line_no));
        } else {
            match current.as_mut() {
                Some((_, residues, _)) => {
                    residues.extend(
                        trimmed
                            .chars()
                            .filter(|c| !c.is_whitespace())
                            .map(AminoAcid::from_letter),
                    );
                }
                None => {
                    return Err(Error::parse(line_no, "sequence line before any '>' header"));
                }
            }
        }
    }
    flush(current.take(), &mut chains)?;

    if chains.is_empty() {
        return Err(Error::parse(1, "empty input: no FASTA records"));
    }
    Ok(chains)
}

/// Serialize chains as FASTA, wrapping sequence lines at `wrap` columns.
pub fn write_fasta(chains: &[ProteinChain], wrap: usize) -> String {
    let wrap = wrap.max(1);
    let mut out = String::new();
    for chain in chains {
        out.push('>');
        out.push_str(chain.id());
        out.push('\n');
        let seq = chain.sequence_string();
        let bytes = seq.as_bytes();
        for block in bytes.chunks(wrap) {
            out.push_str(std::str::from_utf8(block).expect("one-letter codes are ASCII"));
            out.push('\n');
        }
    }
    out
}
