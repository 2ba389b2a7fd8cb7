//! Transforms of the counting process. `N_t` is the initial actives plus
//! every arrival on `(0, t]`; `D_t` counts expirations. The closed forms all
//! share one kernel: with `s = beta + alpha`, `w = sqrt(s^2 - 4 alpha beta z)`
//! and `u = (s - 2 alpha z1)/w`, the joint PGF of `(Q_t, D_t)` is
//!
//! `z2^{D0} e^{eta*(beta-alpha)t/(2 alpha)} (2 e^{tw/2} / ((1-u) + (1+u)e^{tw}))^{eta*/alpha}
//!  (s/(2 alpha) + (w/(2 alpha)) ((1-u) - (1+u)e^{tw}) / ((1-u) + (1+u)e^{tw}))^{Q0}`
//!
//! evaluated here in a log-space arrangement that stays finite for large
//! `t w`. The equivalent hyperbolic (`tanh`/`cosh`) arrangement is kept as a
//! cross-check; it cancels catastrophically for large `t` and narrower
//! argument ranges, which is why the exponential form is the primary route.

use crate::error::AnalyticsError;
use crate::types::{PmfTable, TransformResult};
use eseplab_core::{validate_params, ModelKind, ModelParams};
use num_complex::Complex64;
use std::f64::consts::{LN_2, TAU};

fn check(p: &ModelParams) -> Result<(), AnalyticsError> {
    validate_params(p, ModelKind::Esep)?;
    Ok(())
}

fn initial_expired(p: &ModelParams) -> u64 {
    p.n0.saturating_sub(p.q0)
}

/// Shared real evaluation of the joint transform `E[z1^{Q_t} z2^{D_t}]`
/// without the `z2^{D0}` prefactor.
fn joint_core(p: &ModelParams, z1: f64, z2: f64, t: f64) -> Result<f64, AnalyticsError> {
    let (alpha, beta, eta) = (p.jump, p.expire_rate, p.baseline);
    let s = beta + alpha;
    let radicand = s * s - 4.0 * alpha * beta * z2;
    if radicand <= 0.0 {
        return Err(AnalyticsError::BranchViolation { radicand });
    }
    let w = radicand.sqrt();
    let u = (s - 2.0 * alpha * z1) / w;
    let emtw = (-t * w).exp();
    let a = (1.0 + u) + (1.0 - u) * emtw;
    if a <= 0.0 {
        return Err(AnalyticsError::DomainViolation { argument: z1, bound: s / (2.0 * alpha) });
    }
    let exponent = eta * (beta - alpha) * t / (2.0 * alpha)
        + (eta / alpha) * (LN_2 - t * w / 2.0 - a.ln());
    let inner = (-(1.0 + u) + (1.0 - u) * emtw) / a;
    let base = s / (2.0 * alpha) + w / (2.0 * alpha) * inner;
    Ok(exponent.exp() * base.powi(p.q0 as i32))
}

/// PGF `E[z^{N_t}]` of the total count (initial actives included), valid for
/// real `z` below the square-root branch point `(beta+alpha)^2/(4 alpha beta)`.
pub fn esep_counting_pgf(
    p: &ModelParams,
    z: f64,
    t: f64,
) -> Result<TransformResult, AnalyticsError> {
    check(p)?;
    let (alpha, beta, eta) = (p.jump, p.expire_rate, p.baseline);
    let d0 = initial_expired(p);
    if alpha == 0.0 {
        let value = (eta * t * (z - 1.0)).exp() * z.powi((p.q0 + d0) as i32);
        return Ok(TransformResult::new(value, vec![z, t], None));
    }
    let branch = (beta + alpha) * (beta + alpha) / (4.0 * alpha * beta);
    let value = z.powi(d0 as i32) * joint_core(p, z, z, t)?;
    Ok(TransformResult::new(value, vec![z, t], Some(branch)))
}

/// Hyperbolic arrangement of the same PGF, for cross-checking at moderate
/// `t` and `z` strictly inside `(0, 1)`.
pub fn esep_counting_pgf_hyperbolic(
    p: &ModelParams,
    z: f64,
    t: f64,
) -> Result<TransformResult, AnalyticsError> {
    check(p)?;
    let (alpha, beta, eta) = (p.jump, p.expire_rate, p.baseline);
    if alpha == 0.0 {
        return esep_counting_pgf(p, z, t);
    }
    let s = beta + alpha;
    let radicand = s * s - 4.0 * alpha * beta * z;
    if radicand <= 0.0 {
        return Err(AnalyticsError::BranchViolation { radicand });
    }
    let w = radicand.sqrt();
    let u = (s - 2.0 * alpha * z) / w;
    if u.abs() >= 1.0 {
        return Err(AnalyticsError::DomainViolation { argument: z, bound: 1.0 });
    }
    let big_a = t * w / 2.0 + u.atanh();
    let th = big_a.tanh();
    let value = (eta * (beta - alpha) * t / (2.0 * alpha)).exp()
        * (1.0 - th * th).powf(eta / (2.0 * alpha))
        * (s / (2.0 * alpha) - w / (2.0 * alpha) * th).powi(p.q0 as i32)
        * u.atanh().cosh().powf(eta / alpha)
        * z.powi(initial_expired(p) as i32);
    Ok(TransformResult::new(value, vec![z, t], Some(1.0)))
}

/// Joint PGF `E[z1^{Q_t} z2^{D_t}]` of actives and expirations.
pub fn joint_qd_pgf(
    p: &ModelParams,
    z1: f64,
    z2: f64,
    t: f64,
) -> Result<TransformResult, AnalyticsError> {
    check(p)?;
    let (alpha, beta, eta) = (p.jump, p.expire_rate, p.baseline);
    let d0 = initial_expired(p);
    if alpha == 0.0 {
        // Poisson arrivals, each still active at t independently with the
        // exponential survival weight.
        let d = (-beta * t).exp();
        let value = z2.powi(d0 as i32)
            * (z1 * d + z2 * (1.0 - d)).powi(p.q0 as i32)
            * (eta * ((z1 - z2) * (1.0 - d) / beta + (z2 - 1.0) * t)).exp();
        return Ok(TransformResult::new(value, vec![z1, z2, t], None));
    }
    let branch = (beta + alpha) * (beta + alpha) / (4.0 * alpha * beta);
    let value = z2.powi(d0 as i32) * joint_core(p, z1, z2, t)?;
    Ok(TransformResult::new(value, vec![z1, z2, t], Some(branch)))
}

/// Expected number of arrivals on `(0, t]`, with the coinciding-rates case
/// `beta = alpha` filled in by the continuity limit
/// `eta_0 t + alpha eta* t^2/2`.
pub fn esep_mean_nt(p: &ModelParams, t: f64) -> Result<f64, AnalyticsError> {
    check(p)?;
    let (alpha, beta, eta) = (p.jump, p.expire_rate, p.baseline);
    let x = (beta - alpha) * t;
    // phi(x) = (1 - e^{-x})/x and psi(x) = (x - 1 + e^{-x})/x^2, via series
    // near 0 where the direct quotients cancel.
    let phi = if x.abs() < 1e-5 {
        1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0
    } else {
        -(-x).exp_m1() / x
    };
    let psi = if x.abs() < 1e-4 {
        0.5 - x / 6.0 + x * x / 24.0 - x * x * x / 120.0
    } else {
        (x - 1.0 + (-x).exp()) / (x * x)
    };
    Ok(p.intensity0 * t * phi + beta * eta * t * t * psi)
}

const CONTOUR_POINTS: usize = 256;
const CONTOUR_RADIUS: f64 = 0.5;
const MAX_EXTRACTED: u64 = 60;

fn counting_pgf_complex(p: &ModelParams, z: Complex64, t: f64) -> Complex64 {
    let (alpha, beta, eta) = (p.jump, p.expire_rate, p.baseline);
    if alpha == 0.0 {
        return (eta * t * (z - 1.0)).exp() * z.powi(p.q0 as i32);
    }
    let s = beta + alpha;
    let w = (Complex64::new(s * s, 0.0) - 4.0 * alpha * beta * z).sqrt();
    let u = (Complex64::new(s, 0.0) - 2.0 * alpha * z) / w;
    let emtw = (-t * w).exp();
    let one = Complex64::new(1.0, 0.0);
    let a = (one + u) + (one - u) * emtw;
    let exponent = Complex64::new(eta * (beta - alpha) * t / (2.0 * alpha), 0.0)
        + (eta / alpha) * (Complex64::new(LN_2, 0.0) - t * w / 2.0 - a.ln());
    let inner = (-(one + u) + (one - u) * emtw) / a;
    let base = s / (2.0 * alpha) + w / (2.0 * alpha) * inner;
    exponent.exp() * base.powi(p.q0 as i32)
}

/// PMF `P(arrivals on (0,t] = n)` for `n = 0..=n_max`, extracted from the
/// counting PGF as Taylor coefficients along a circular contour. The
/// coefficient order is shifted by `q0` because the PGF carries the initial
/// actives as a `z^{q0}` factor.
pub fn counting_pmf_taylor(
    p: &ModelParams,
    n_max: u64,
    t: f64,
) -> Result<PmfTable, AnalyticsError> {
    check(p)?;
    if n_max + p.q0 > MAX_EXTRACTED {
        return Err(AnalyticsError::Invalid(format!(
            "contour extraction supports n + q0 <= {MAX_EXTRACTED}"
        )));
    }
    let k = CONTOUR_POINTS;
    let mut samples = Vec::with_capacity(k);
    for j in 0..k {
        let angle = TAU * j as f64 / k as f64;
        let z = Complex64::from_polar(CONTOUR_RADIUS, angle);
        samples.push(counting_pgf_complex(p, z, t));
    }
    let mut probs = Vec::with_capacity(n_max as usize + 1);
    let mut total = 0.0;
    for n in 0..=n_max {
        let order = (n + p.q0) as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, f) in samples.iter().enumerate() {
            let angle = -TAU * j as f64 / k as f64 * order;
            acc += f * Complex64::from_polar(1.0, angle);
        }
        let coeff = acc.re / k as f64 / CONTOUR_RADIUS.powf(order);
        let prob = coeff.max(0.0).min(1.0);
        total += prob;
        probs.push(prob);
    }
    Ok(PmfTable::new(probs, (1.0 - total).max(0.0)))
}
