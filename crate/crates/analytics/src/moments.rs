//! Exact moment ODE hierarchies for matched ESEP and Hawkes processes. The
//! hierarchy for intensity moments closes at any order: the derivative of
//! the m-th moment only involves moments up to m. Counting moments ride
//! along via `dE[N]/dt = E[x]`, `dE[xN]/dt = E[x^2] + alpha E[xN] +
//! alpha E[x] - b E[xN] + b x* E[N]` and `dE[N^2]/dt = E[x] + 2E[xN]`,
//! where `b` is the expiry rate (ESEP) or decay rate (Hawkes); the mixed
//! equation has the same shape for both.

use crate::error::AnalyticsError;
use eseplab_core::{validate_params, ModelKind, ModelParams};
use eseplab_numerics::rk4_integrate;
use serde::{Deserialize, Serialize};

/// Moment trajectories on a shared time grid. Each row holds
/// `[E[x], ..., E[x^m], E[N], E[xN], E[N^2]]` for its process.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentTrajectories {
    pub times: Vec<f64>,
    pub order: usize,
    pub esep: Vec<Vec<f64>>,
    pub hawkes: Vec<Vec<f64>>,
}

fn binom(m: usize, k: usize) -> f64 {
    let mut v = 1.0;
    for i in 0..k.min(m - k) {
        v = v * (m - i) as f64 / (i + 1) as f64;
    }
    v
}

/// `x^j` moment from the state vector, with `x^0 = 1`.
fn xm(y: &[f64], j: usize) -> f64 {
    if j == 0 {
        1.0
    } else {
        y[j - 1]
    }
}

fn esep_rhs(p: &ModelParams, mx: usize, y: &[f64], dy: &mut [f64]) {
    let (alpha, beta, eta) = (p.jump, p.expire_rate, p.baseline);
    for m in 1..=mx {
        let mut d = 0.0;
        for k in 0..m {
            let c = binom(m, k);
            let sign = if (m - k) % 2 == 0 { 1.0 } else { -1.0 };
            let alpha_pow = alpha.powi((m - k) as i32);
            let alpha_pow_minus = alpha.powi((m - k - 1) as i32);
            d += c * xm(y, k + 1) * alpha_pow;
            d += c * xm(y, k + 1) * beta * sign * alpha_pow_minus;
            d -= c * xm(y, k) * beta * eta * sign * alpha_pow_minus;
        }
        dy[m - 1] = d;
    }
    counting_rhs(alpha, beta, eta, mx, y, dy);
}

fn hawkes_rhs(p: &ModelParams, mx: usize, y: &[f64], dy: &mut [f64]) {
    let (alpha, beta, eta) = (p.jump, p.decay_rate, p.baseline);
    for m in 1..=mx {
        let mut d = 0.0;
        for k in 0..m {
            d += binom(m, k) * xm(y, k + 1) * alpha.powi((m - k) as i32);
        }
        d -= m as f64 * beta * xm(y, m);
        d += m as f64 * beta * eta * xm(y, m - 1);
        dy[m - 1] = d;
    }
    counting_rhs(alpha, beta, eta, mx, y, dy);
}

fn counting_rhs(alpha: f64, b: f64, baseline: f64, mx: usize, y: &[f64], dy: &mut [f64]) {
    let (n, xn) = (y[mx], y[mx + 1]);
    dy[mx] = xm(y, 1);
    dy[mx + 1] = xm(y, 2) + alpha * xn + alpha * xm(y, 1) - b * xn + b * baseline * n;
    dy[mx + 2] = xm(y, 1) + 2.0 * xn;
}

/// Integrate intensity moments `1..=m` plus counting moments for an ESEP and
/// a Hawkes process with matched parameters, reporting values on `t_grid`.
pub fn moment_odes(
    p_esep: &ModelParams,
    p_hawkes: &ModelParams,
    m: usize,
    t_grid: &[f64],
) -> Result<MomentTrajectories, AnalyticsError> {
    validate_params(p_esep, ModelKind::Esep)?;
    validate_params(p_hawkes, ModelKind::Hawkes)?;
    if !(1..=4).contains(&m) {
        return Err(AnalyticsError::Invalid("moment order must be 1..=4".into()));
    }
    if p_esep.baseline != p_hawkes.baseline
        || p_esep.jump != p_hawkes.jump
        || p_esep.expire_rate != p_hawkes.decay_rate
    {
        return Err(AnalyticsError::Invalid(
            "matched parameters required: same baseline, jump, and rate".into(),
        ));
    }
    // The mixed counting equation needs E[x^2], so integrate at least two
    // intensity moments internally.
    let mx = m.max(2);
    let h_max = 5e-4;

    let run = |p: &ModelParams, rhs: &dyn Fn(&ModelParams, usize, &[f64], &mut [f64])| {
        let x0 = p.intensity0;
        let n0 = p.n0 as f64;
        let mut y0: Vec<f64> = (1..=mx).map(|j| x0.powi(j as i32)).collect();
        y0.extend_from_slice(&[n0, x0 * n0, n0 * n0]);
        rk4_integrate(|_t, y, dy| rhs(p, mx, y, dy), &y0, t_grid, h_max)
    };
    let strip = |rows: Vec<Vec<f64>>| -> Vec<Vec<f64>> {
        rows.into_iter()
            .map(|row| {
                let mut out: Vec<f64> = row[0..m].to_vec();
                out.extend_from_slice(&row[mx..mx + 3]);
                out
            })
            .collect()
    };
    let esep = strip(run(p_esep, &esep_rhs)?);
    let hawkes = strip(run(p_hawkes, &hawkes_rhs)?);
    Ok(MomentTrajectories { times: t_grid.to_vec(), order: m, esep, hawkes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair() -> (ModelParams, ModelParams) {
        (ModelParams::esep(10.0, 2.0, 3.0), ModelParams::hawkes(10.0, 2.0, 3.0))
    }

    fn grid() -> Vec<f64> {
        (0..=20).map(|i| i as f64 * 0.1).collect()
    }

    #[test]
    fn means_of_both_processes_coincide() {
        let (pe, ph) = pair();
        let out = moment_odes(&pe, &ph, 1, &grid()).unwrap();
        for (re, rh) in out.esep.iter().zip(&out.hawkes) {
            assert!((re[0] - rh[0]).abs() < 1e-8, "{} vs {}", re[0], rh[0]);
            assert!((re[1] - rh[1]).abs() < 1e-8, "counts {} vs {}", re[1], rh[1]);
        }
    }

    #[test]
    fn esep_second_moment_dominates_hawkes() {
        let (pe, ph) = pair();
        let out = moment_odes(&pe, &ph, 2, &grid()).unwrap();
        for (i, (re, rh)) in out.esep.iter().zip(&out.hawkes).enumerate() {
            if i == 0 {
                continue;
            }
            assert!(re[1] > rh[1] - 1e-10, "t index {i}: {} vs {}", re[1], rh[1]);
        }
    }

    #[test]
    fn mean_trajectory_matches_closed_form() {
        let (pe, ph) = pair();
        let out = moment_odes(&pe, &ph, 1, &grid()).unwrap();
        // dE/dt = -(beta - alpha) E + beta eta* from either hierarchy.
        for (i, t) in out.times.iter().enumerate() {
            let expected = 30.0 + (10.0 - 30.0) * (-(1.0) * t).exp();
            assert!((out.esep[i][0] - expected).abs() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn zero_jump_freezes_intensity_moments() {
        let pe = ModelParams::esep(10.0, 0.0, 3.0);
        let ph = ModelParams::hawkes(10.0, 0.0, 3.0);
        let out = moment_odes(&pe, &ph, 3, &grid()).unwrap();
        for row in out.esep.iter().chain(&out.hawkes) {
            assert!((row[0] - 10.0).abs() < 1e-10);
            assert!((row[1] - 100.0).abs() < 1e-8);
            assert!((row[2] - 1000.0).abs() < 1e-7);
        }
    }

    #[test]
    fn mismatched_parameters_are_rejected() {
        let pe = ModelParams::esep(10.0, 2.0, 3.0);
        let ph = ModelParams::hawkes(10.0, 2.0, 4.0);
        assert!(matches!(
            moment_odes(&pe, &ph, 2, &grid()),
            Err(AnalyticsError::Invalid(_))
        ));
    }
}
