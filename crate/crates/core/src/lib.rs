//! Shared foundation for the eseplab workspace: model parameter records with
//! validation, duration/batch/mark distributions, Hawkes kernel descriptions,
//! reproducible RNG streams, event logs with state reconstruction, empirical
//! summaries, and (de)serialization of all of the above.
//!
//! The model family covered here is the ephemerally self-exciting point
//! process (ESEP) and its relatives. An ESEP has stochastic intensity
//! `eta_t = eta* + alpha * Q_t`, where `Q_t` counts currently active
//! arrivals and each active arrival expires at rate `beta`. Related models
//! share the same parameter record: Hawkes processes (excitement decays
//! instead of expiring), batched/general-duration variants (n-GESEP), the
//! hybrid HESEP (decay and expiry combined), a finite-capacity variant with
//! blocking (ESEP-B), and a mean-reverting SIS epidemic analogue.

pub mod error;
pub mod io;
pub mod law;
pub mod params;
pub mod path;
pub mod rng;
pub mod summary;
pub mod sweep;

pub use error::CoreError;
pub use law::{BatchLaw, DurationLaw, Kernel, KernelSpec, MarkLaw};
pub use params::{validate_params, ClusterModel, ModelKind, ModelParams, Validated};
pub use path::{reconstruct_state, Event, EventKind, SamplePath};
pub use rng::RngStreamSpec;
pub use summary::EmpiricalSummary;
pub use sweep::{SweepReport, SweepRow};
