use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("operation `{op}` is not supported over {ring}")]
    UnsupportedRing { op: &'static str, ring: String },
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("{0} is not a regular element (zero or zero divisor)")]
    ZeroDivisor(String),
    #[error("{0} has infinite spectrum")]
    InfiniteSpectrum(String),
    #[error("size limit exceeded: {needed} generators requested, limit {limit}")]
    SizeLimitExceeded { needed: u128, limit: u128 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(String),
    #[error("could not factor {0} within the trial-division bound")]
    FactorizationBound(String),
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
