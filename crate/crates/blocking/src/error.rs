use eseplab_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BlockingError {
    #[error("unstable regime: expiry rate {beta} must exceed jump {alpha}")]
    Unstable { alpha: f64, beta: f64 },
    #[error("capacity is required for the blocking model")]
    CapacityMissing,
    #[error("argument {argument} outside domain {domain}")]
    DomainViolation { argument: f64, domain: &'static str },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
