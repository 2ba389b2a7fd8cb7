use eseplab_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("event count {events} exceeded cap {cap}; process may be exploding")]
    ExplosionGuard { events: u64, cap: u64 },

    #[error("kernel is not non-increasing; thinning bounds would be invalid")]
    NonMonotoneKernel,

    #[error("{0}")]
    Unsupported(String),

    #[error(transparent)]
    Core(#[from] CoreError),
}
