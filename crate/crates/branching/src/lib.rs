//! Cluster (branching-process) laws of the ESEP family in the subcritical
//! regime `beta > alpha`: per-individual offspring counts, total progeny,
//! generation depth, family lifetimes, and the Poisson-logarithmic family
//! decomposition of the stationary active count. Everything is a pure
//! closed-form evaluation; tables carry explicit tail masses so they can be
//! checked against simulation histograms bin by bin.

pub mod discrete;
pub mod error;
pub mod families;
pub mod generations;
pub mod offspring;
pub mod progeny;

pub use discrete::DiscreteLaw;
pub use error::BranchingError;
pub use families::{active_families_law, family_duration_mean, logarithmic_law};
pub use generations::{generations_cdf_hawkes, generations_law_esep};
pub use offspring::offspring_law;
pub use progeny::progeny_law;
