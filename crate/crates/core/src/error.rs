use thiserror::Error;

/// Errors raised by the toolkit. Everything except [`Error::Io`] is a
/// validation failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("malformed Pauli label {0:?}")]
    MalformedLabel(String),

    #[error("unsupported basis family for this operation: {0}")]
    UnsupportedBasis(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("mixture element {index} is not unitary (deviation {deviation:.3e})")]
    NotUnitary { index: usize, deviation: f64 },

    #[error("invalid truth table: {0}")]
    InvalidTable(String),

    #[error("infeasible marginals: row total {rows} vs column total {cols}")]
    InfeasibleMarginals { rows: f64, cols: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
