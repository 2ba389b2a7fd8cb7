//! Simulators for the ESEP family.
//!
//! - `simulate_esep`, `simulate_esep_b`, `simulate_sis`: exact CTMC
//!   (Gillespie) schemes driven by the affine intensity.
//! - `simulate_hawkes`: Ogata thinning for marked Hawkes processes with
//!   non-increasing kernels; an O(1) recursion is used when the kernel is an
//!   exact exponential shape.
//! - `simulate_hesep`: thinning for the hybrid model whose intensity decays
//!   continuously at rate beta, jumps by alpha at arrivals, and loses the
//!   mean per-active share at each expiry.
//! - `simulate_ngesep`: competing-clocks scheme for batched arrivals with
//!   general activity-duration laws (exact, no thinning).
//! - `simulate_cluster`: branching representation of a single cluster,
//!   either in ESEP form (lifetimes, uniform offspring) or Hawkes form
//!   (Poisson offspring, exponential displacements).
//!
//! Every entry point takes an `RngStreamSpec`, making single paths and
//! parallel ensembles byte-reproducible.

pub mod cluster;
pub mod ensemble;
pub mod error;
pub mod esep;
pub mod esep_b;
pub mod hawkes;
pub mod hesep;
pub mod ngesep;
pub mod options;
pub mod sink;
pub mod sis;

pub use cluster::{simulate_cluster, ClusterPath, Individual};
pub use ensemble::par_map_streams;
pub use error::SimError;
pub use esep::{esep_end_state, simulate_esep, simulate_esep_opt};
pub use esep_b::{esep_b_end_state, simulate_esep_b, simulate_esep_b_opt, BlockTally};
pub use hawkes::{hawkes_end_state, simulate_hawkes, simulate_hawkes_exp, simulate_hawkes_opt};
pub use hesep::{hesep_end_state, hesep_with_sink, simulate_hesep, simulate_hesep_opt};
pub use ngesep::{ngesep_end_state, simulate_ngesep, simulate_ngesep_opt};
pub use options::{default_burn_in, relaxation_time, EndState, SimOptions, ThinningStats};
pub use sink::{EventSink, LogSink, NullSink};
pub use sis::{simulate_sis, simulate_sis_opt, sis_end_state};
