//! The 22-symbol residue alphabet: 20 canonical amino acids plus UNK
//! (unrecognized residue) and PAD (beyond-terminus placeholder).
//!
//! The letter/index mapping is a fixed bijection: canonical one-letter codes
//! in alphabetical order occupy indices 0..20, then UNK = 20 and PAD = 21.
//! PAD never appears inside a stored chain; it only occurs in extracted
//! windows that overhang a terminus.

/// Number of distinct residue symbols.
pub const ALPHABET_SIZE: usize = 22;

/// One residue symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum AminoAcid {
    Ala = 0,
    Cys = 1,
    Asp = 2,
    Glu = 3,
    Phe = 4,
    Gly = 5,
    His = 6,
    Ile = 7,
    Lys = 8,
    Leu = 9,
    Met = 10,
    Asn = 11,
    Pro = 12,
    Gln = 13,
    Arg = 14,
    Ser = 15,
    Thr = 16,
    Val = 17,
    Trp = 18,
    Tyr = 19,
    /// Any letter that is not one of the 20 canonical codes (B, J, O, U, X, Z, ...).
    Unk = 20,
    /// Placeholder for window positions beyond the chain termini.
    Pad = 21,
}

/// All 22 symbols in index order.
pub const ALPHABET: [AminoAcid; ALPHABET_SIZE] = [
    AminoAcid::Ala,
    AminoAcid::Cys,
    AminoAcid::Asp,
    AminoAcid::Glu,
    AminoAcid::Phe,
    AminoAcid::Gly,
    AminoAcid::His,
    AminoAcid::Ile,
    AminoAcid::Lys,
    AminoAcid::Leu,
    AminoAcid::Met,
    AminoAcid::Asn,
    AminoAcid::Pro,
    AminoAcid::Gln,
    AminoAcid::Arg,
    AminoAcid::Ser,
    AminoAcid::Thr,
    AminoAcid::Val,
    AminoAcid::Trp,
    AminoAcid::Tyr,
    AminoAcid::Unk,
    AminoAcid::Pad,
];

impl AminoAcid {
    /// Map a one-letter code to a symbol. Case-insensitive; anything outside
    /// the 20 canonical codes maps to `Unk`. There is no letter for `Pad`.
    pub fn from_letter(c: char) -> AminoAcid {
        match c.to_ascii_uppercase() {
            'A' => AminoAcid::Ala,
            'C' => AminoAcid::Cys,
            'D' => AminoAcid::Asp,
            'E' => AminoAcid::Glu,
            'F' => AminoAcid::Phe,
            'G' => AminoAcid::Gly,
            'H' => AminoAcid::His,
            'I' => AminoAcid::Ile,
            'K' => AminoAcid::Lys,
            'L' => AminoAcid::Leu,
            'M' => AminoAcid::Met,
            'N' => AminoAcid::Asn,
            'P' => AminoAcid::Pro,
            'Q' => AminoAcid::Gln,
            'R' => AminoAcid::Arg,
            'S' => AminoAcid::Ser,
            'T' => AminoAcid::Thr,
            'V' => AminoAcid::Val,
            'W' => AminoAcid::Trp,
            'Y' => AminoAcid::Tyr,
            _ => AminoAcid::Unk,
        }
    }

    /// Map a PDB-style three-letter residue name (e.g. "ALA") to a symbol.
    /// Returns `None` for anything that is not one of the 20 standard names.
    pub fn from_three_letter(name: &str) -> Option<AminoAcid> {
        let aa = match name {
            "ALA" => AminoAcid::Ala,
            "ARG" => AminoAcid::Arg,
            "ASN" => AminoAcid::Asn,
            "ASP" => AminoAcid::Asp,
            "CYS" => AminoAcid::Cys,
            "GLN" => AminoAcid::Gln,
            "GLU" => AminoAcid::Glu,
            "GLY" => AminoAcid::Gly,
            "HIS" => AminoAcid::His,
            "ILE" => AminoAcid::Ile,
            "LEU" => AminoAcid::Leu,
            "LYS" => AminoAcid::Lys,
            "MET" => AminoAcid::Met,
            "PHE" => AminoAcid::Phe,
            "PRO" => AminoAcid::Pro,
            "SER" => AminoAcid::Ser,
            "THR" => AminoAcid::Thr,
            "TRP" => AminoAcid::Trp,
            "TYR" => AminoAcid::Tyr,
            "VAL" => AminoAcid::Val,
            _ => return None,
        };
        Some(aa)
    }

    /// One-letter display code. `Unk` renders as 'X', `Pad` as '-'.
    pub fn to_char(self) -> char {
        match self {
            AminoAcid::Ala => 'A',
            AminoAcid::Cys => 'C',
            AminoAcid::Asp => 'D',
            AminoAcid::Glu => 'E',
            AminoAcid::Phe => 'F',
            AminoAcid::Gly => 'G',
            AminoAcid::His => 'H',
            AminoAcid::Ile => 'I',
            AminoAcid::Lys => 'K',
            AminoAcid::Leu => 'L',
            AminoAcid::Met => 'M',
            AminoAcid::Asn => 'N',
            AminoAcid::Pro => 'P',
            AminoAcid::Gln => 'Q',
            AminoAcid::Arg => 'R',
            AminoAcid::Ser => 'S',
            AminoAcid::Thr => 'T',
            AminoAcid::Val => 'V',
            AminoAcid::Trp => 'W',
            AminoAcid::Tyr => 'Y',
            AminoAcid::Unk => 'X',
            AminoAcid::Pad => '-',
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<AminoAcid> {
        ALPHABET.get(i).copied()
    }
}

/// Binary per-residue class: interface (+) or non-interface (-).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ResidueLabel {
    Interface,
    NonInterface,
}

impl ResidueLabel {
    pub fn is_interface(self) -> bool {
        matches!(self, ResidueLabel::Interface)
    }

    pub fn from_bool(positive: bool) -> ResidueLabel {
        if positive {
            ResidueLabel::Interface
        } else {
            ResidueLabel::NonInterface
        }
    }

    /// '+' for interface, '-' for non-interface.
    pub fn to_char(self) -> char {
        match self {
            ResidueLabel::Interface => '+',
            ResidueLabel::NonInterface => '-',
        }
    }

    pub fn from_char(c: char) -> Option<ResidueLabel> {
        match c {
            '+' => Some(ResidueLabel::Interface),
            '-' => Some(ResidueLabel::NonInterface),
            _ => None,
        }
    }
}
