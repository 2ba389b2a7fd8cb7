//! Steady state of the finite-capacity ESEP-B: the stationary active-count
//! law is the stable ESEP's negative binomial truncated at the capacity and
//! renormalized, with mean and variance expressed through three regularized
//! incomplete beta terms. The blocking fraction weighs the capacity state by
//! its arrival rate, which is why it exceeds the plain capacity probability
//! at small scale and only approaches it (PASTA-style) as baseline and
//! capacity grow together.

use crate::betainc::regularized_incomplete_beta;
use crate::error::BlockingError;
use eseplab_analytics::PmfTable;
use eseplab_core::{validate_params, ModelKind, ModelParams, SweepReport};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

/// Stationary description of the blocking system.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockingSummary {
    /// `P(Q = n)` for `n = 0..=c`; the truncation mass is zero because the
    /// support really is finite.
    pub pmf: PmfTable,
    pub mean: f64,
    pub variance: f64,
    /// Long-run fraction of arrivals that find the system full.
    pub block_fraction: f64,
}

fn checked(p: &ModelParams) -> Result<(f64, f64, f64, u64), BlockingError> {
    let v = validate_params(p, ModelKind::EsepB)?;
    let c = p.capacity.ok_or(BlockingError::CapacityMissing)?;
    if p.jump > 0.0 && !v.stable {
        return Err(BlockingError::Unstable { alpha: p.jump, beta: p.expire_rate });
    }
    Ok((p.baseline, p.jump, p.expire_rate, c))
}

/// Stationary law, moments, and blocking fraction of the ESEP-B. The pmf is
/// the untruncated negative binomial divided by the incomplete-beta
/// normalizer `1 - I_(alpha/beta)(c+1, eta*/alpha)`, so the direct-sum
/// renormalization stays available as an independent oracle.
pub fn esepb_steady(p: &ModelParams) -> Result<BlockingSummary, BlockingError> {
    let (eta, alpha, beta, c) = checked(p)?;
    if c == 0 {
        return Ok(BlockingSummary {
            pmf: PmfTable::new(vec![1.0], 0.0),
            mean: 0.0,
            variance: 0.0,
            block_fraction: 1.0,
        });
    }
    if alpha == 0.0 {
        // Poisson arrivals: the truncated law is Erlang-B with offered load
        // eta/beta, and moments come from the finite support directly.
        let m = eta / beta;
        let mut probs = Vec::with_capacity(c as usize + 1);
        let mut pk = 1.0f64;
        probs.push(pk);
        for k in 1..=c {
            pk *= m / k as f64;
            probs.push(pk);
        }
        let total: f64 = probs.iter().sum();
        probs.iter_mut().for_each(|v| *v /= total);
        let mean: f64 = probs.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
        let second: f64 =
            probs.iter().enumerate().map(|(k, p)| (k * k) as f64 * p).sum();
        let pc = *probs.last().expect("non-empty");
        return Ok(BlockingSummary {
            pmf: PmfTable::new(probs, 0.0),
            mean,
            variance: second - mean * mean,
            block_fraction: pc,
        });
    }

    let z = alpha / beta;
    let r = eta / alpha;
    let m = eta / (beta - alpha);
    let norm = 1.0 - regularized_incomplete_beta(z, c as f64 + 1.0, r)?;
    let probs: Vec<f64> =
        (0..=c).map(|n| ln_negbin(eta, alpha, beta, n).exp() / norm).collect();

    let mean_num = 1.0 - regularized_incomplete_beta(z, c as f64, r + 1.0)?;
    let var_num = 1.0 - regularized_incomplete_beta(z, c as f64 - 1.0, r + 2.0)?;
    let mean = m * mean_num / norm;
    let variance = m * (m + alpha / (beta - alpha)) * var_num / norm - mean * mean + mean;

    let pc = *probs.last().expect("capacity table is non-empty");
    let block_fraction = (eta + alpha * c as f64) * pc / (eta + alpha * mean);
    Ok(BlockingSummary {
        pmf: PmfTable::new(probs, 0.0),
        mean,
        variance,
        block_fraction,
    })
}

/// Long-run fraction of arrivals blocked at capacity.
pub fn blocking_fraction(p: &ModelParams) -> Result<f64, BlockingError> {
    Ok(esepb_steady(p)?.block_fraction)
}

/// Scale baseline and capacity together by each `n` and report the ratio of
/// the blocking fraction to the capacity probability. State-dependent
/// arrivals push the ratio above one; it falls back toward one only when the
/// capacity stays binding in the limit.
pub fn pasta_ratio_sweep(p: &ModelParams, n_list: &[u64]) -> Result<SweepReport, BlockingError> {
    let (eta, _, _, c) = checked(p)?;
    let mut report = SweepReport::expect_monotone();
    for &n in n_list {
        if n == 0 {
            return Err(BlockingError::Invalid("scale factors must be positive".into()));
        }
        let scaled = ModelParams::esep_b(eta * n as f64, p.jump, p.expire_rate, c * n);
        let summary = esepb_steady(&scaled)?;
        let pc = *summary.pmf.probs.last().expect("non-empty");
        let ratio = if pc > 0.0 { summary.block_fraction / pc } else { f64::NAN };
        report.push(n as f64, "pasta_ratio", ratio, 0, 0);
    }
    Ok(report)
}

/// Brute-force version of the stationary law with no beta function in
/// sight: the negative binomial recurrence `p_k = p_(k-1) (alpha/beta)
/// (k-1+r)/k` summed over `0..=c` and renormalized directly. Serves as the
/// independent oracle for `esepb_steady`.
pub fn truncated_negbin_direct(p: &ModelParams) -> Result<Vec<f64>, BlockingError> {
    let (eta, alpha, beta, c) = checked(p)?;
    if alpha == 0.0 {
        return Ok(esepb_steady(p)?.pmf.probs);
    }
    let r = eta / alpha;
    let succ = alpha / beta;
    let mut probs = Vec::with_capacity(c as usize + 1);
    let mut pk = (1.0 - succ).powf(r);
    probs.push(pk);
    for k in 1..=c {
        let kf = k as f64;
        pk *= succ * (kf - 1.0 + r) / kf;
        probs.push(pk);
    }
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|v| *v /= total);
    Ok(probs)
}

/// Natural-log pmf of the untruncated stationary law at `n`, used by tests
/// that need far-tail values without building tables.
pub fn ln_negbin(eta: f64, alpha: f64, beta: f64, n: u64) -> f64 {
    let r = eta / alpha;
    let nf = n as f64;
    ln_gamma(nf + r) - ln_gamma(r) - ln_gamma(nf + 1.0)
        + r * ((beta - alpha) / beta).ln()
        + nf * (alpha / beta).ln()
}
