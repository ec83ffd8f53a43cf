//! Label/mask file I/O.
//!
//! One line per chain: `chain_id<TAB>mask`, where the mask is a string over
//! {+,-} with one character per residue. The same format serves as the
//! training label file and as the prediction mask file.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::seq::alphabet::ResidueLabel;
use crate::seq::chain::ProteinChain;

/// Parse a label/mask file into (chain id, labels) pairs. Blank lines and
/// lines starting with '#' are skipped.
pub fn parse_label_file(text: &str) -> Result<Vec<(String, Vec<ResidueLabel>)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let (id, mask) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(line_no, "expected 'chain_id<TAB>mask'"))?;
        if id.is_empty() {
            return Err(Error::parse(line_no, "empty chain id"));
        }
        let labels = mask
            .trim_end()
            .chars()
            .map(|c| {
                ResidueLabel::from_char(c)
                    .ok_or_else(|| Error::parse(line_no, format!("invalid mask character '{c}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        if labels.is_empty() {
            return Err(Error::parse(line_no, "empty mask"));
        }
        out.push((id.to_string(), labels));
    }
    if out.is_empty() {
        return Err(Error::parse(1, "empty input: no label records"));
    }
    Ok(out)
}

pub fn write_label_file(entries: &[(String, Vec<ResidueLabel>)]) -> String {
    let mut out = String::new();
    for (id, labels) in entries {
        out.push_str(id);
        out.push('\t');
        out.extend(labels.iter().map(|l| l.to_char()));
        out.push('\n');
    }
    out
}

/// Attach labels from a parsed label file to chains, matched by id. Every
/// chain must have a label line of matching length.
pub fn apply_labels(
    chains: Vec<ProteinChain>,
    entries: &[(String, Vec<ResidueLabel>)],
) -> Result<Vec<ProteinChain>> {
    let by_id: HashMap<&str, &Vec<ResidueLabel>> =
        entries.iter().map(|(id, l)| (id.as_str(), l)).collect();
    chains
        .into_iter()
        .map(|mut chain| {
            let labels = by_id
                .get(chain.id())
                .ok_or_else(|| Error::data(format!("no labels for chain '{}'", chain.id())))?;
            chain.attach_labels((*labels).clone())?;
            Ok(chain)
        })
        .collect()
}

pub fn labels_to_mask(labels: &[ResidueLabel]) -> Vec<bool> {
    labels.iter().map(|l| l.is_interface()).collect()
}

pub fn mask_to_labels(mask: &[bool]) -> Vec<ResidueLabel> {
    mask.iter().map(|&b| ResidueLabel::from_bool(b)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write_round_trip() {
        let text = "1abc_A\t--++-\nother\t+\n";
        let entries = parse_label_file(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].0, "1abc_A");
        assert_eq!(
            labels_to_mask(&entries[0].1),
            vec![false, false, true, true, false]
        );
        assert_eq!(write_label_file(&entries), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_label_file("a --++") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_label_file("a\t++\nb\t+x\n") {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 2);
                assert!(msg.contains('x'));
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn apply_labels_checks_presence_and_length() {
        let chains = vec![ProteinChain::from_str_id("a", "MKV").unwrap()];
        let entries = parse_label_file("a\t++-\n").unwrap();
        let labeled = apply_labels(chains.clone(), &entries).unwrap();
        assert!(labeled[0].labels().is_some());

        let wrong_len = parse_label_file("a\t+-\n").unwrap();
        assert!(apply_labels(chains.clone(), &wrong_len).is_err());

        let missing = parse_label_file("b\t++-\n").unwrap();
        assert!(apply_labels(chains, &missing).is_err());
    }
}
