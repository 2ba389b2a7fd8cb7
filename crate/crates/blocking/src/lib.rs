//! Finite-capacity blocking variant of the ESEP. Arrivals finding `Q = c`
//! actives are turned away; the stationary law is the stable ESEP's
//! negative binomial truncated to `0..=c`, and the fraction of arrivals
//! blocked differs from the capacity probability because arrivals are
//! state-dependent. Includes the regularized incomplete beta kernel the
//! closed forms are written in, and the joint baseline/capacity scaling
//! sweep under which the two blocking measures merge.

pub mod betainc;
pub mod error;
pub mod steady;

pub use betainc::regularized_incomplete_beta;
pub use error::BlockingError;
pub use steady::{
    blocking_fraction, esepb_steady, ln_negbin, pasta_ratio_sweep, truncated_negbin_direct,
    BlockingSummary,
};
