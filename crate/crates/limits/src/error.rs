use eseplab_core::CoreError;
use eseplab_sim::SimError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LimitsError {
    #[error("limit regime needs mu + beta > alpha, got alpha = {alpha}, rates = {rates}")]
    Unstable { alpha: f64, rates: f64 },
    #[error("invalid limit request: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Numerics(#[from] eseplab_numerics::NumericsError),
    #[error(transparent)]
    Analytics(#[from] eseplab_analytics::AnalyticsError),
}
