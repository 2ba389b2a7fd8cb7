//! Scaling regimes of the self-exciting family, each reduced to an
//! executable experiment or a closed-form limit object:
//!
//! - batch scaling: batched arrivals with per-active jump `alpha/n` converge
//!   to a marked Hawkes process with the duration-tail kernel;
//! - population scaling: the finite-population SIS infected count converges
//!   to the ESEP active count and hence to its negative binomial steady law;
//! - renewal strong law: the long-run arrival rate settles at `nu_inf`;
//! - fluid limit: means become deterministic, the MGF collapses to
//!   `exp(theta . m(t))`;
//! - diffusion bracket: centered fluctuations are squeezed between two
//!   Gaussian laws indexed by `gamma in {0, 1}`, with the mean-ratio
//!   heuristic `gamma = mu/(mu+beta)` as the recommended point estimate;
//! - the transient variance sandwich between matched Hawkes, hybrid, and
//!   ESEP models.
//!
//! Simulation-backed checks return `SweepReport` tables; closed forms return
//! typed evaluators.

pub mod batch;
pub mod diffusion;
pub mod error;
pub mod fluid;
pub mod renewal;
pub mod sandwich;
pub mod sis;

pub use batch::{batch_scaling_sweep, log_log_slope, matched_kernel_spec, BatchFamily};
pub use diffusion::{
    diffusion_bound, diffusion_fit_check, gamma_star, DiffusionBound, SteadyNormal,
};
pub use error::LimitsError;
pub use fluid::{fluid_limit_mgf, fluid_mean_count, fluid_mean_intensity};
pub use renewal::renewal_check;
pub use sandwich::{sandwich_check, ProcessStats, SandwichReport};
pub use sis::{sis_convergence_sweep, sis_exact_stationary};
