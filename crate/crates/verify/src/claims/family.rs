//! Compound-family identity: a Poisson number of logarithmic-size families
//! reproduces the negative binomial steady law exactly at the pgf level.

use crate::error::VerifyError;
use crate::types::ClaimSpec;
use eseplab_analytics::esep_steady_negbin;
use eseplab_branching::logarithmic_law;
use eseplab_core::ModelParams;

const LOG_CAP: u64 = 200;
const POINTS: [f64; 3] = [0.3, 0.7, 0.95];

/// Worst pgf gap between the compound composition and the direct negative
/// binomial over the evaluation points.
pub(crate) fn family_decomposition(_spec: &ClaimSpec) -> Result<f64, VerifyError> {
    let p = ModelParams::esep(10.0, 2.0, 3.0);
    let negbin = esep_steady_negbin(&p)?;
    let log = logarithmic_law(&p, LOG_CAP)?;
    let rate = (p.baseline / p.jump) * (p.expire_rate / (p.expire_rate - p.jump)).ln();
    let mut worst = 0.0f64;
    for z in POINTS {
        let log_pgf: f64 = log
            .probs
            .iter()
            .enumerate()
            .map(|(i, &pk)| pk * z.powi((log.offset + i as u64) as i32))
            .sum();
        let compound = (rate * (log_pgf - 1.0)).exp();
        let direct: f64 = negbin
            .probs
            .iter()
            .enumerate()
            .map(|(k, &pk)| pk * z.powi(k as i32))
            .sum();
        worst = worst.max((compound - direct).abs());
    }
    Ok(worst)
}
