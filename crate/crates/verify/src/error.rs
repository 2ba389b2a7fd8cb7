use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    /// The claim id, generator, or oracle does not match any registered
    /// recipe.
    #[error("unknown claim reference: {0}")]
    UnknownClaim(String),
    #[error("duplicate claim id in suite: {0}")]
    DuplicateClaim(String),
    #[error("invalid claim specification: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] eseplab_core::CoreError),
    #[error(transparent)]
    Sim(#[from] eseplab_sim::SimError),
    /// Oracle domain violations surface through this variant.
    #[error(transparent)]
    Analytics(#[from] eseplab_analytics::AnalyticsError),
    #[error(transparent)]
    Branching(#[from] eseplab_branching::BranchingError),
    #[error(transparent)]
    Blocking(#[from] eseplab_blocking::BlockingError),
    #[error(transparent)]
    Limits(#[from] eseplab_limits::LimitsError),
    #[error(transparent)]
    Numerics(#[from] eseplab_numerics::NumericsError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
