//! Distribution of the number of distinct generations in a cluster, root
//! counted as generation one. The ESEP law telescopes through the survival
//! function `P(G >= k) = (1-r) r^(k-1) / (1 - r^k)` with `r = alpha/beta`,
//! so a table up to `K` plus the exact tail `P(G > K)` sums to one by
//! construction. The Hawkes analogue has no closed pmf; its cdf is computed
//! by iterating `F(k) = exp(-(alpha/beta)(1 - F(k-1)))` from `F(0) = 0`.

use crate::discrete::DiscreteLaw;
use crate::error::BranchingError;
use crate::offspring::model_rates;
use eseplab_core::{ClusterModel, ModelParams};

fn survival(r: f64, k: u64) -> f64 {
    // (1-r) r^(k-1) / (1 - r^k); k >= 1, exact 1 at k = 1.
    let rk1 = r.powi(k as i32 - 1);
    (1.0 - r) * rk1 / (1.0 - rk1 * r)
}

/// `P(G = k)` for `k = 1..=cap`, with the exact remainder beyond `cap`.
/// The mean and variance are evaluated from the survival series, which
/// converges geometrically.
pub fn generations_law_esep(p: &ModelParams, cap: u64) -> Result<DiscreteLaw, BranchingError> {
    let (alpha, beta) = model_rates(p, ClusterModel::Esep)?;
    if cap == 0 {
        return Err(BranchingError::Invalid("generations table needs cap >= 1".into()));
    }
    if alpha == 0.0 {
        return Ok(DiscreteLaw::new(1, vec![1.0], 0.0).with_moments(1.0, 0.0));
    }
    let r = alpha / beta;
    let probs: Vec<f64> =
        (1..=cap).map(|k| survival(r, k) - survival(r, k + 1)).collect();
    let tail = survival(r, cap + 1);

    // E[G] = sum of survivals, E[G^2] = sum of (2k-1) survivals.
    let mut mean = 0.0;
    let mut second = 0.0;
    let mut k = 1u64;
    loop {
        let s = survival(r, k);
        mean += s;
        second += (2 * k - 1) as f64 * s;
        if s < 1e-16 * second.max(1.0) || k > 100_000 {
            break;
        }
        k += 1;
    }
    Ok(DiscreteLaw::new(1, probs, tail).with_moments(mean, second - mean * mean))
}

/// CDF `F(k) = P(G <= k)` of the Hawkes generation count, by the stated
/// recursion from `F(0) = 0`.
pub fn generations_cdf_hawkes(p: &ModelParams, k: u64) -> Result<f64, BranchingError> {
    let (alpha, beta) = model_rates(p, ClusterModel::Hawkes)?;
    let ratio = alpha / beta;
    let mut f = 0.0;
    for _ in 0..k {
        f = (-ratio * (1.0 - f)).exp();
    }
    Ok(f)
}
