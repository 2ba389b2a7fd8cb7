//! Closed-form transforms, distributions, and moment systems for the ESEP
//! model family. Everything here is deterministic: transient and stationary
//! transforms of the intensity and active count, counting-process
//! probability generating functions and their probability mass tables
//! (extracted either by contour integration of the transform or by matrix
//! exponentiation of a truncated sub-generator), exact moment ODE
//! hierarchies for matched ESEP/Hawkes pairs, and the stationary transform
//! of the two-sided batch variant.
//!
//! Conventions shared across the crate: an ESEP is parameterized by
//! `baseline` (`eta*`), `jump` (`alpha`), and `expire_rate` (`beta`), is
//! stable iff `beta > alpha`, and the counting variable `N_t` includes the
//! `n0` events recorded before time zero (so its generating function at
//! `t = 0` is `z^n0`). Transform evaluations report their argument and
//! domain boundary alongside the value; tabulated distributions carry an
//! explicit truncation mass so totals can be checked exactly.

pub mod counting;
pub mod error;
pub mod matrix;
pub mod moments;
pub mod steady;
pub mod transient;
pub mod types;

pub use counting::{
    counting_pmf_taylor, esep_counting_pgf, esep_counting_pgf_hyperbolic, esep_mean_nt,
    joint_qd_pgf,
};
pub use error::AnalyticsError;
pub use matrix::{
    counting_pmf_matrix, counting_pmf_matrix_capped, counting_pmf_matrix_table,
    DEFAULT_DIMENSION_CAP,
};
pub use moments::{moment_odes, MomentTrajectories};
pub use steady::{esep_steady_moments, esep_steady_negbin, gesep2_steady_mgf};
pub use transient::{esep_qt_pgf, esep_transient_mgf};
pub use types::{PmfTable, TransformResult};
