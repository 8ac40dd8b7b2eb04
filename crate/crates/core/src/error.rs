use thiserror::Error;

/// Errors raised by the core model, solvers and file formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid door {0}: doors are numbered 1, 2, 3")]
    InvalidDoor(i64),

    #[error("invalid strategy code {code:?}: {reason}")]
    InvalidStrategy { code: String, reason: String },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid rational {text:?}: {reason}")]
    InvalidRational { text: String, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("information set *{pick}{offer} is unreachable under this host")]
    UnreachableInfoSet { pick: u8, offer: u8 },

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("singular system: {0}")]
    Singular(String),

    #[error("rounds must be at least 1")]
    ZeroRounds,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
