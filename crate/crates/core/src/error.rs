use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator in Planck constant")]
    ZeroDenominator,
    #[error("denominator {0} out of supported range")]
    DenominatorTooLarge(i64),
    #[error("matrix has determinant {det}, expected 1")]
    NotUnimodular { det: i128 },
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
    #[error("invalid input: {0}")]
    Parse(String),
    #[error("lifting index {0} out of range 0..12")]
    LiftingIndex(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
