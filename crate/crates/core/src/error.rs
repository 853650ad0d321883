//! Error type shared across the crate.

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A precondition on an argument was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A value that must be finite was not.
    #[error("non-finite value: {0}")]
    NonFinite(String),

    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A vector or matrix had the wrong size.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A data file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A loaded rotation matrix failed the orthogonality check.
    #[error("matrix is not orthogonal: max |Q^T Q - I| entry is {max_deviation:e}")]
    NotOrthogonal { max_deviation: f64 },

    /// Too few samples for the requested statistic.
    #[error("need at least {needed} samples, got {got}")]
    NotEnoughSamples { needed: usize, got: usize },

    /// A result grid is missing algorithm/problem cells.
    #[error("missing result cells: {}", .0.join(", "))]
    MissingCells(Vec<String>),

    /// An algorithm name did not resolve.
    #[error("unknown algorithm '{name}'; valid names: {}", .valid.join(", "))]
    UnknownAlgorithm { name: String, valid: Vec<String> },

    /// A problem name did not resolve.
    #[error("unknown problem '{name}'; valid names: {}", .valid.join(", "))]
    UnknownProblem { name: String, valid: Vec<String> },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
