use eseplab_core::CoreError;
use eseplab_numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalyticsError {
    #[error("argument {argument} outside the transform domain (bound {bound})")]
    DomainViolation { argument: f64, bound: f64 },
    #[error("square-root branch leaves the real line (radicand {radicand})")]
    BranchViolation { radicand: f64 },
    #[error("requires a stable process (expiry rate must exceed the jump)")]
    Unstable,
    #[error("state space dimension {dim} exceeds the cap {cap}")]
    DimensionOverflow { dim: usize, cap: usize },
    #[error("rates coincide where the closed form needs them distinct")]
    DegenerateRate,
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Core(#[from] CoreError),
}
