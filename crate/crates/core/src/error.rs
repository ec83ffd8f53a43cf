use std::io;
use thiserror::Error;

/// Crate-wide error type.
///
/// `Parse` carries a 1-based line number for text-format inputs (FASTA,
/// coordinate files, label/mask/manifest/annotation files). `InvalidArgument`
/// covers API misuse (even window sizes, out-of-range indices); `Data` covers
/// semantically bad inputs (missing chains, single-class training sets,
/// length mismatches).
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0}")]
    Data(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
