//! Family-level decomposition of the stationary ESEP. A family is a root
//! arrival together with all of its progeny; families begin at rate `eta*`,
//! live for a duration `tau` with `E[tau] = (1/alpha) ln(beta/(beta-alpha))`,
//! and by the M/G/infinity property the number of families with a member
//! active in steady state is Poisson with mean `eta* E[tau]`. Conditioned
//! on being active, a family's active-member count is logarithmic, and the
//! Poisson-logarithmic compound recovers the negative binomial law of the
//! active count.

use crate::discrete::DiscreteLaw;
use crate::error::BranchingError;
use crate::offspring::{model_rates, poisson_table};
use eseplab_core::{ClusterModel, ModelParams};

/// `(1/alpha) ln(beta/(beta-alpha))`, switching to the series
/// `(1/beta)(1 + r/2 + r^2/3)` once `r = alpha/beta` is small enough that
/// the direct logarithm loses everything to cancellation.
pub fn family_duration_mean(p: &ModelParams) -> Result<f64, BranchingError> {
    let (alpha, beta) = model_rates(p, ClusterModel::Esep)?;
    let r = alpha / beta;
    if r < 1e-8 {
        return Ok((1.0 + r / 2.0 + r * r / 3.0) / beta);
    }
    Ok((beta / (beta - alpha)).ln() / alpha)
}

/// Poisson number of families active in steady state, mean
/// `(eta*/alpha) ln(beta/(beta-alpha))`.
pub fn active_families_law(p: &ModelParams) -> Result<DiscreteLaw, BranchingError> {
    let (alpha, beta) = model_rates(p, ClusterModel::Esep)?;
    let r = alpha / beta;
    let mean = if r < 1e-8 {
        p.baseline * (1.0 + r / 2.0 + r * r / 3.0) / beta
    } else {
        p.baseline * (beta / (beta - alpha)).ln() / alpha
    };
    Ok(poisson_table(mean))
}

/// Active members of one family conditioned on activity: logarithmic law
/// `P(L = k) = r^k / (k ln(beta/(beta-alpha)))` tabulated on `1..=cap`.
pub fn logarithmic_law(p: &ModelParams, cap: u64) -> Result<DiscreteLaw, BranchingError> {
    let (alpha, beta) = model_rates(p, ClusterModel::Esep)?;
    if cap == 0 {
        return Err(BranchingError::Invalid("logarithmic table needs cap >= 1".into()));
    }
    if alpha == 0.0 {
        // Families shrink to single customers as the jump vanishes.
        return Ok(DiscreteLaw::new(1, vec![1.0], 0.0).with_moments(1.0, 0.0));
    }
    let r = alpha / beta;
    let l0 = (beta / (beta - alpha)).ln();
    let mut probs = Vec::with_capacity(cap as usize);
    let mut cum = 0.0;
    let mut rk = 1.0;
    for k in 1..=cap {
        rk *= r;
        let pk = rk / (k as f64 * l0);
        probs.push(pk);
        cum += pk;
    }
    let mean = r / ((1.0 - r) * l0);
    let var = r * (l0 - r) / ((1.0 - r) * l0).powi(2);
    Ok(DiscreteLaw::new(1, probs, (1.0 - cum).max(0.0)).with_moments(mean, var))
}
