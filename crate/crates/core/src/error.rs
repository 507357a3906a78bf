use thiserror::Error;

/// Errors raised by the solver, the baselines, the harness and the file codecs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} elements, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("channel must have at least one element")]
    EmptyChannel,

    #[error("{name} must be positive and finite, got {value}")]
    InvalidPower { name: &'static str, value: f64 },

    #[error("phase entry {index} is {value}, expected +1 or -1")]
    InvalidSign { index: usize, value: i8 },

    #[error("exhaustive search refused: N = {n} exceeds the limit of {limit}")]
    ExhaustiveLimit { n: usize, limit: usize },

    #[error("invalid plan: {0}")]
    InvalidPlan(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
