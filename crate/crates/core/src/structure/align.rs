//! Global alignment for the pairwise sequence-identity filter.
//!
//! Scoring is fixed for determinism: match +1, mismatch 0, linear gap -0.5.
//! Traceback resolves ties by preferring diagonal, then up (gap in the
//! second sequence), then left. Identity = matches / alignment length.

use crate::seq::{AminoAcid, ProteinChain};

const MATCH: f64 = 1.0;
const MISMATCH: f64 = 0.0;
const GAP: f64 = -0.5;

#[derive(Clone, Copy, PartialEq)]
enum Dir {
    Diag,
    Up,
    Left,
}

/// Result of one global alignment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Alignment {
    pub score: f64,
    pub matches: usize,
    pub length: usize,
}

impl Alignment {
    pub fn identity(&self) -> f64 {
        self.matches as f64 / self.length as f64
    }
}

/// Align two residue sequences globally. All scores are multiples of 0.5, so
/// comparisons are exact and the traceback is deterministic.
pub fn align(a: &[AminoAcid], b: &[AminoAcid]) -> Alignment {
    let n = a.len();
    let m = b.len();
    let cols = m + 1;
    let mut score = vec![0.0f64; (n + 1) * cols];
    let mut dir = vec![Dir::Diag; (n + 1) * cols];
    for i in 1..=n {
        score[i * cols] = GAP * i as f64;
        dir[i * cols] = Dir::Up;
    }
    for j in 1..=m {
        score[j] = GAP * j as f64;
        dir[j] = Dir::Left;
    }
    for i in 1..=n {
        for j in 1..=m {
            let sub = if a[i - 1] == b[j - 1] {
                MATCH
            } else {
                MISMATCH
            };
            let diag = score[(i - 1) * cols + (j - 1)] + sub;
            let up = score[(i - 1) * cols + j] + GAP;
            let left = score[i * cols + (j - 1)] + GAP;
            // Tie preference: diagonal, then up, then left.
            let (best, d) = if diag >= up && diag >= left {
                (diag, Dir::Diag)
            } else if up >= left {
                (up, Dir::Up)
            } else {
                (left, Dir::Left)
            };
            score[i * cols + j] = best;
            dir[i * cols + j] = d;
        }
    }

    let mut i = n;
    let mut j = m;
    let mut matches = 0usize;
    let mut length = 0usize;
    while i > 0 || j > 0 {
        length += 1;
        match dir[i * cols + j] {
            Dir::Diag => {
                if a[i - 1] == b[j - 1] {
                    matches += 1;
                }
                i -= 1;
                j -= 1;
            }
            Dir::Up => i -= 1,
            Dir::Left => j -= 1,
        }
    }
    Alignment {
        score: score[n * cols + m],
        matches,
        length,
    }
}

/// Fraction of identical aligned positions between two chains.
///
/// The alignment itself is asymmetric in its tie-breaking, so the argument
/// pair is put in a canonical order first; identity is then symmetric by
/// construction.
pub fn sequence_identity(a: &ProteinChain, b: &ProteinChain) -> f64 {
    let (x, y) = canonical_order(a.residues(), b.residues());
    align(x, y).identity()
}

fn canonical_order<'a>(
    a: &'a [AminoAcid],
    b: &'a [AminoAcid],
) -> (&'a [AminoAcid], &'a [AminoAcid]) {
    if (a.len(), a) <= (b.len(), b) {
        (a, b)
    } else {
        (b, a)
    }
}
