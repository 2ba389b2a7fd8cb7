//! Steady-state laws. The stable ESEP active count converges to a negative
//! binomial with success probability `alpha/beta` and size `eta*/alpha`; the
//! batch-2 generalization has an explicit steady MGF with an `atanh` term.

use crate::error::AnalyticsError;
use crate::types::{PmfTable, TransformResult};
use eseplab_core::ModelParams;
use statrs::function::gamma::ln_gamma;

const TAIL_TARGET: f64 = 1e-12;
const MAX_SUPPORT: usize = 500_000;

fn stable_ratio(p: &ModelParams) -> Result<(f64, f64), AnalyticsError> {
    let (alpha, beta) = (p.jump, p.expire_rate);
    if beta <= alpha {
        return Err(AnalyticsError::Unstable);
    }
    if alpha <= 0.0 {
        return Err(AnalyticsError::Invalid(
            "steady negative binomial needs a positive jump".into(),
        ));
    }
    Ok((alpha, beta))
}

/// Steady-state PMF of the active count, tabulated until the remaining tail
/// drops below `1e-12` (recorded as `truncation_mass`).
pub fn esep_steady_negbin(p: &ModelParams) -> Result<PmfTable, AnalyticsError> {
    let (alpha, beta) = stable_ratio(p)?;
    let succ = alpha / beta;
    let r = p.baseline / alpha;
    let ln_succ = succ.ln();
    let ln_fail = (1.0 - succ).ln();
    let ln_gamma_r = ln_gamma(r);
    let mut probs = Vec::new();
    let mut cum = 0.0;
    for k in 0..MAX_SUPPORT {
        let kf = k as f64;
        let lp = ln_gamma(kf + r) - ln_gamma_r - ln_gamma(kf + 1.0) + r * ln_fail + kf * ln_succ;
        let pk = lp.exp();
        probs.push(pk);
        cum += pk;
        // Keep going until past the mode and the tail target is met.
        if cum >= 1.0 - TAIL_TARGET {
            break;
        }
    }
    Ok(PmfTable::new(probs, (1.0 - cum).max(0.0)))
}

/// Mean and variance of the steady-state active count.
pub fn esep_steady_moments(p: &ModelParams) -> Result<(f64, f64), AnalyticsError> {
    let (alpha, beta) = stable_ratio(p)?;
    let succ = alpha / beta;
    let r = p.baseline / alpha;
    let mean = r * succ / (1.0 - succ);
    let var = r * succ / ((1.0 - succ) * (1.0 - succ));
    Ok((mean, var))
}

/// Steady-state MGF `E[e^{theta Q}]` of the batched process with pairs of
/// actives per arrival (batch size 2), intensity `eta* + (alpha/2) Q` and
/// unit-pair expiry rate `beta` per active. Valid for
/// `theta < ln((sqrt(1 + 8 beta/alpha) - 1)/2)`.
pub fn gesep2_steady_mgf(p: &ModelParams, theta: f64) -> Result<TransformResult, AnalyticsError> {
    let (alpha, beta) = stable_ratio(p)?;
    let eta = p.baseline;
    let s = (1.0 + 8.0 * beta / alpha).sqrt();
    let bound = ((s - 1.0) / 2.0).ln();
    if theta >= bound {
        return Err(AnalyticsError::DomainViolation { argument: theta, bound });
    }
    let c = (alpha / (alpha + 8.0 * beta)).sqrt();
    let et = theta.exp();
    let atanh_term = ((2.0 * et + 1.0) * c).atanh() - (3.0 * c).atanh();
    let front = (2.0 * eta / (alpha * (alpha + 8.0 * beta)).sqrt() * atanh_term).exp();
    let den = 2.0 * beta - alpha * (et + et * et);
    if den < 1e-12 {
        return Err(AnalyticsError::DomainViolation { argument: theta, bound });
    }
    let value = front * ((2.0 * beta - 2.0 * alpha) / den).powf(eta / alpha);
    Ok(TransformResult::new(value, vec![theta], Some(bound)))
}
