//! Transient transforms of the ESEP intensity `eta_t = eta* + alpha Q_t` and
//! of the active count `Q_t` itself, for a start at `Q_0 = q0`.
//!
//! Both come from the same closed form. With `a = e^{alpha theta}` (or the
//! PGF argument `z`), `d = e^{-(beta - alpha) t}` and
//!
//! `ratio(z) = (beta - alpha z - beta (1 - z) d) / (beta - alpha z - alpha (1 - z) d)`
//!
//! the PGF of `Q_t` is `ratio(z)^{q0} (beta/(beta - alpha z)
//! - alpha ratio(z)/(beta - alpha z))^{eta*/alpha}` and the MGF of `eta_t`
//! follows through the affine map: `E[e^{theta eta_t}] = e^{theta eta*}
//! P(e^{alpha theta}, t)`.

use crate::error::AnalyticsError;
use crate::types::TransformResult;
use eseplab_core::{validate_params, ModelKind, ModelParams};

const DEN_EPS: f64 = 1e-12;

fn require_stable(p: &ModelParams) -> Result<(), AnalyticsError> {
    validate_params(p, ModelKind::Esep)?;
    if p.expire_rate <= p.jump {
        return Err(AnalyticsError::Unstable);
    }
    Ok(())
}

/// `ratio(z)` and the second-factor base of the transient `Q_t` PGF.
fn pgf_pieces(p: &ModelParams, z: f64, t: f64) -> Result<(f64, f64), AnalyticsError> {
    let (alpha, beta) = (p.jump, p.expire_rate);
    let d = (-(beta - alpha) * t).exp();
    let lin = beta - alpha * z;
    if lin < DEN_EPS {
        return Err(AnalyticsError::DomainViolation { argument: z, bound: beta / alpha });
    }
    let den = lin - alpha * (1.0 - z) * d;
    if den.abs() < DEN_EPS {
        return Err(AnalyticsError::DomainViolation { argument: z, bound: beta / alpha });
    }
    let ratio = (lin - beta * (1.0 - z) * d) / den;
    let base = beta / lin - alpha * ratio / lin;
    Ok((ratio, base))
}

/// Moment generating function `E[e^{theta eta_t}]` of the transient
/// intensity, valid for `theta < (1/alpha) ln(beta/alpha)`.
pub fn esep_transient_mgf(
    p: &ModelParams,
    theta: f64,
    t: f64,
) -> Result<TransformResult, AnalyticsError> {
    require_stable(p)?;
    let (alpha, beta) = (p.jump, p.expire_rate);
    if alpha == 0.0 {
        // Degenerate Poisson process: the intensity never moves.
        return Ok(TransformResult::new((theta * p.baseline).exp(), vec![theta, t], None));
    }
    let bound = (beta / alpha).ln() / alpha;
    if theta >= bound {
        return Err(AnalyticsError::DomainViolation { argument: theta, bound });
    }
    let a = (alpha * theta).exp();
    let (ratio, base) = pgf_pieces(p, a, t).map_err(|e| match e {
        AnalyticsError::DomainViolation { .. } => {
            AnalyticsError::DomainViolation { argument: theta, bound }
        }
        other => other,
    })?;
    // The affine shift contributes e^{theta eta*} = a^{eta*/alpha}.
    let value = ratio.powi(p.q0 as i32) * (a * base).powf(p.baseline / alpha);
    Ok(TransformResult::new(value, vec![theta, t], Some(bound)))
}

/// Probability generating function `E[z^{Q_t}]` of the transient active
/// count, valid for `z < beta/alpha`.
pub fn esep_qt_pgf(p: &ModelParams, z: f64, t: f64) -> Result<TransformResult, AnalyticsError> {
    require_stable(p)?;
    let (alpha, beta) = (p.jump, p.expire_rate);
    if alpha == 0.0 {
        // M/M/infinity: Poisson actives thinned exponentially.
        let d = (-beta * t).exp();
        let value = (1.0 - (1.0 - z) * d).powi(p.q0 as i32)
            * (-(p.baseline / beta) * (1.0 - z) * (1.0 - d)).exp();
        return Ok(TransformResult::new(value, vec![z, t], None));
    }
    let (ratio, base) = pgf_pieces(p, z, t)?;
    let value = ratio.powi(p.q0 as i32) * base.powf(p.baseline / alpha);
    Ok(TransformResult::new(value, vec![z, t], Some(beta / alpha)))
}
