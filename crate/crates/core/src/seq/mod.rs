//! Alphabet, sequences, labels, window extraction and dataset representation
//! shared by every classifier.

pub mod alphabet;
pub mod chain;
pub mod fasta;
pub mod labels;

pub use alphabet::{AminoAcid, ResidueLabel, ALPHABET, ALPHABET_SIZE};
pub use chain::{dataset_stats, filter_short_chains, Dataset, DatasetStats, ProteinChain, Window};
pub use fasta::{parse_fasta, write_fasta};
