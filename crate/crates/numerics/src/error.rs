use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("time must be nonnegative, got {t}")]
    NegativeTime { t: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("sample is empty")]
    EmptySample,

    #[error("step size underflow: steps no longer advance time")]
    StepSizeUnderflow,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
