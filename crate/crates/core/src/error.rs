use thiserror::Error;

/// Errors produced by the numeric, transform, search and beam-simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("integer overflow in exact arithmetic ({0})")]
    Overflow(&'static str),

    #[error("invalid stage {name}: {reason}")]
    InvalidStage { name: String, reason: String },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("angle {0} deg is outside [-90, 90]")]
    AngleOutOfRange(f64),

    #[error("all beam weights are zero")]
    ZeroWeights,

    #[error("matrix is zero; ratio is undefined")]
    ZeroMatrix,

    #[error("pattern grids differ")]
    GridMismatch,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch { expected: expected.to_string(), found: found.to_string() }
    }
}
