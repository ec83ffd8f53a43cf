//! Shared fixtures for the integration suites: synthetic corpora with
//! interface residues planted in contiguous runs whose residue composition
//! differs from the background.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bindsite::seq::{AminoAcid, Dataset, ProteinChain, ResidueLabel};

/// Letters over-represented inside planted interface runs.
pub const SIGNAL: [char; 4] = ['R', 'K', 'W', 'N'];
/// Background letters (the 16 canonicals outside the signal set).
pub const BACKGROUND: [char; 16] = [
    'A', 'C', 'D', 'E', 'F', 'G', 'H', 'I', 'L', 'M', 'P', 'Q', 'S', 'T', 'V', 'Y',
];

/// Probability that an interface residue is drawn from the signal set.
pub const SIGNAL_RATE_POS: f64 = 0.60;
/// Probability that a background residue is drawn from the signal set.
pub const SIGNAL_RATE_NEG: f64 = 0.20;

fn draw_residue(rng: &mut ChaCha8Rng, positive: bool) -> char {
    let rate = if positive {
        SIGNAL_RATE_POS
    } else {
        SIGNAL_RATE_NEG
    };
    if rng.gen_bool(rate) {
        SIGNAL[rng.gen_range(0..SIGNAL.len())]
    } else {
        BACKGROUND[rng.gen_range(0..BACKGROUND.len())]
    }
}

/// One chain with `runs` planted interface runs of 5..=12 residues,
/// separated by at least 5 background residues.
pub fn planted_chain(rng: &mut ChaCha8Rng, id: &str, len: usize, runs: usize) -> ProteinChain {
    let mut mask = vec![false; len];
    let mut placed = 0;
    let mut attempts = 0;
    while placed < runs && attempts < 200 {
        attempts += 1;
        let run_len = rng.gen_range(5..=12.min(len));
        let start = rng.gen_range(0..=len - run_len);
        // Keep runs separated so neighborhood counts stay informative.
        let lo = start.saturating_sub(5);
        let hi = (start + run_len + 5).min(len);
        if mask[lo..hi].iter().any(|m| *m) {
            continue;
        }
        mask[start..start + run_len].fill(true);
        placed += 1;
    }
    let residues: Vec<AminoAcid> = mask
        .iter()
        .map(|&positive| AminoAcid::from_letter(draw_residue(rng, positive)))
        .collect();
    let labels: Vec<ResidueLabel> = mask.iter().map(|&m| ResidueLabel::from_bool(m)).collect();
    ProteinChain::with_labels(id, residues, labels).expect("valid synthetic chain")
}

/// A corpus of `chains` planted chains of length `chain_len`.
pub fn planted_corpus(seed: u64, chains: usize, chain_len: usize, runs: usize) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let list = (0..chains)
        .map(|i| planted_chain(&mut rng, &format!("syn{seed}_{i}"), chain_len, runs))
        .collect();
    Dataset::new(format!("planted-{seed}"), list).expect("valid synthetic corpus")
}

/// FASTA text for a dataset.
pub fn corpus_fasta(d: &Dataset) -> String {
    bindsite::seq::write_fasta(d.chains(), 60)
}

/// Label-file text for a dataset.
pub fn corpus_labels(d: &Dataset) -> String {
    let entries: Vec<(String, Vec<ResidueLabel>)> = d
        .chains()
        .iter()
        .map(|c| (c.id().to_string(), c.labels().unwrap().to_vec()))
        .collect();
    bindsite::seq::labels::write_label_file(&entries)
}
