use eseplab_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BranchingError {
    /// The offspring mean is at or above one, so cluster laws do not exist.
    #[error("unstable regime: expiry rate {beta} must exceed jump {alpha}")]
    Unstable { alpha: f64, beta: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
