use thiserror::Error;

/// Errors raised by table construction, planning and error measurement.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid size {0}: n must be a power of two >= 2")]
    InvalidSize(usize),
    #[error("invalid size {0}: n exceeds the maximum plan size 2^24")]
    SizeTooLarge(usize),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("unknown precision `{0}`")]
    UnknownPrecision(String),
    #[error("unknown metric `{0}`")]
    UnknownMetric(String),
    #[error("clamp epsilon must be finite and positive, got {0}")]
    InvalidClamp(f64),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("reference vector is all zero")]
    ZeroReference,
    #[error("trial count must be at least 1")]
    NoTrials,
}

pub type Result<T> = std::result::Result<T, Error>;
