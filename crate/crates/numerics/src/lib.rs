//! Numerical kernels used across eseplab: the action of a sub-generator
//! matrix exponential computed by uniformization, a fixed-step RK4 integrator
//! for moment ODE systems, finite differences, and the statistical distances
//! and tests the verification layer is built on (Kolmogorov-Smirnov, total
//! variation, chi-square, streaming moments).

pub mod diff;
pub mod error;
pub mod expm;
pub mod rk4;
pub mod stats;

pub use diff::{central_diff, second_central_diff};
pub use error::NumericsError;
pub use expm::{expm_action, expm_action_with_rate, SparseSubGenerator};
pub use rk4::rk4_integrate;
pub use stats::{
    chi_square_gof, ks_two_sample, ks_vs_cdf, tv_dense, tv_noise_band, Chi2Outcome, Welford,
};
