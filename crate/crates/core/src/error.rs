use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("qubit index {index} out of range 1..={n}")]
    QubitIndex { index: usize, n: usize },

    #[error("invalid gate arguments: {0}")]
    InvalidGate(String),

    #[error("capacity exceeded: {what} (limit {limit})")]
    Capacity { what: String, limit: usize },

    #[error("unsupported qubit count n={n}: {reason}")]
    UnsupportedN { n: usize, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("index corruption: {0}")]
    IndexCorruption(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
