use thiserror::Error;

/// Errors raised by invariant computations, metric solvers and parsers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeoError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Minkowski exponent must be at least 1, got {0}")]
    InvalidExponent(f64),

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("cost matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("weights sum to {0}, expected 1 within 1e-9")]
    WeightSum(f64),

    #[error("weights must be positive and finite, got {0}")]
    InvalidWeight(f64),

    #[error("costs must be non-negative and finite, got {0}")]
    InvalidCost(f64),

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("{0}")]
    OutOfRange(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("transport solver exceeded {0} pivots")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, GeoError>;
