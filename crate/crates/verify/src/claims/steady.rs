//! Steady-state law of the base process, plus the deliberate failure case.

use super::support::{ensemble, histogram};
use crate::error::VerifyError;
use crate::types::ClaimSpec;
use eseplab_analytics::esep_steady_negbin;
use eseplab_core::{ModelKind, ModelParams};
use eseplab_numerics::tv_dense;
use eseplab_sim::{default_burn_in, esep_end_state, SimOptions};

fn flagship() -> ModelParams {
    ModelParams::esep(10.0, 2.0, 3.0)
}

fn end_state_tv(spec: &ClaimSpec, probs: &[f64], tail_mass: f64) -> Result<f64, VerifyError> {
    let p = flagship();
    let horizon = default_burn_in(&p, ModelKind::Esep)
        .ok_or_else(|| VerifyError::Invalid("generator parameters are unstable".into()))?;
    let opts = SimOptions::default();
    let qs = ensemble(spec.seed, 0, spec.replications, |s| {
        esep_end_state(&p, horizon, s, &opts).map(|e| e.q)
    })?;
    let (counts, overflow) = histogram(&qs, probs.len());
    Ok(tv_dense(&counts, overflow, probs, tail_mass)?)
}

/// End-of-burn-in active counts against the negative binomial steady law.
pub(crate) fn steady_state_negbin(spec: &ClaimSpec) -> Result<f64, VerifyError> {
    let law = esep_steady_negbin(&flagship())?;
    end_state_tv(spec, &law.probs, law.truncation_mass)
}

/// Same generator, deliberately wrong oracle: the steady negative binomial
/// with its geometric ratio complemented. Must fail by a wide margin.
pub(crate) fn negative_control_swapped_negbin(spec: &ClaimSpec) -> Result<f64, VerifyError> {
    let (r, q) = (5.0, 1.0 / 3.0);
    let mut probs = vec![(1.0 - q).powf(r)];
    let mut cum = probs[0];
    for k in 1..200usize {
        let kf = k as f64;
        let next = probs[k - 1] * q * (kf + r - 1.0) / kf;
        probs.push(next);
        cum += next;
        if cum >= 1.0 - 1e-12 {
            break;
        }
    }
    end_state_tv(spec, &probs, (1.0 - cum).max(0.0))
}
