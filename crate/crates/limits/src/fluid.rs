//! Fluid (mean-field) limit of the hybrid model: under `n -> infinity` the
//! scaled intensity and active count become deterministic, so the limit MGF
//! is `exp(theta_nu m_nu(t) + theta_Q m_Q(t))` with the mean trajectories
//! solving the linear characteristic system
//! `m_nu' = (mu + beta) nu* - (mu + beta - alpha) m_nu`, `m_Q' = m_nu - mu m_Q`.

use crate::error::LimitsError;
use eseplab_analytics::TransformResult;
use eseplab_core::{validate_params, ModelKind, ModelParams};

pub(crate) struct FluidConstants {
    /// Spectral gap `mu + beta - alpha` of the intensity mean.
    pub gap: f64,
    /// Stationary mean intensity `(mu + beta) nu* / gap`.
    pub nu_inf: f64,
}

pub(crate) fn fluid_constants(p: &ModelParams) -> Result<FluidConstants, LimitsError> {
    validate_params(p, ModelKind::Hesep)?;
    let gap = p.expire_rate + p.decay_rate - p.jump;
    if gap <= 0.0 {
        return Err(LimitsError::Unstable {
            alpha: p.jump,
            rates: p.expire_rate + p.decay_rate,
        });
    }
    let nu_inf = (p.expire_rate + p.decay_rate) * p.baseline / gap;
    Ok(FluidConstants { gap, nu_inf })
}

/// Mean intensity of the fluid limit at time `t`, started from `intensity0`.
pub fn fluid_mean_intensity(p: &ModelParams, t: f64) -> Result<f64, LimitsError> {
    let c = fluid_constants(p)?;
    Ok(c.nu_inf + (p.intensity0 - c.nu_inf) * (-c.gap * t).exp())
}

/// Mean active count of the fluid limit at time `t`, started from `q0`.
pub fn fluid_mean_count(p: &ModelParams, t: f64) -> Result<f64, LimitsError> {
    let c = fluid_constants(p)?;
    let mu = p.expire_rate;
    if mu <= 0.0 {
        return Err(LimitsError::Invalid(
            "fluid active-count mean needs a positive expiry rate".into(),
        ));
    }
    // Variation of constants against m_nu; the inner integral collapses to
    // `(1 - e^{-delta t}) / delta` with `delta = beta - alpha`, which tends
    // to `t` as delta -> 0, so the expm1 form covers both branches.
    let delta = p.decay_rate - p.jump;
    let phi = if delta.abs() < 1e-12 { t } else { -(-delta * t).exp_m1() / delta };
    let e_mu = (-mu * t).exp();
    Ok(p.q0 as f64 * e_mu + (p.intensity0 - c.nu_inf) * e_mu * phi
        - c.nu_inf * (-mu * t).exp_m1() / mu)
}

/// MGF of the joint fluid limit `(nu_t, Q_t)`: a point mass at the mean
/// trajectories, hence exactly `exp(theta_nu m_nu(t) + theta_Q m_Q(t))`.
pub fn fluid_limit_mgf(
    p: &ModelParams,
    theta_nu: f64,
    theta_q: f64,
    t: f64,
) -> Result<TransformResult, LimitsError> {
    let exponent = theta_nu * fluid_mean_intensity(p, t)? + theta_q * fluid_mean_count(p, t)?;
    Ok(TransformResult::new(exponent.exp(), vec![theta_nu, theta_q, t], None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ModelParams {
        // nu* = 2, alpha = 1, beta = 2, mu = 3: gap = 4, nu_inf = 2.5.
        ModelParams::hesep(2.0, 1.0, 2.0, 3.0).with_q0(3).with_intensity0(6.0)
    }

    #[test]
    fn zero_arguments_give_one() {
        let p = params();
        for t in [0.0, 0.3, 2.0, 50.0] {
            let r = fluid_limit_mgf(&p, 0.0, 0.0, t).unwrap();
            assert_eq!(r.value, 1.0);
        }
    }

    #[test]
    fn time_zero_reduces_to_the_initial_point() {
        let p = params();
        let r = fluid_limit_mgf(&p, 0.2, -0.1, 0.0).unwrap();
        let expected = (0.2 * 6.0 - 0.1 * 3.0f64).exp();
        assert!((r.value - expected).abs() < 1e-12);
    }

    #[test]
    fn long_run_exponent_is_the_stationary_pair() {
        let p = params();
        let nu_inf = 2.5_f64;
        let q_inf = nu_inf / 3.0;
        let r = fluid_limit_mgf(&p, 0.4, 0.7, 80.0).unwrap();
        let expected = (0.4 * nu_inf + 0.7 * q_inf).exp();
        assert!((r.value - expected).abs() < 1e-10, "{} vs {expected}", r.value);
    }

    #[test]
    fn mean_trajectories_solve_the_characteristic_odes() {
        let p = params();
        let f = |_t: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = (p.expire_rate + p.decay_rate) * p.baseline
                - (p.expire_rate + p.decay_rate - p.jump) * y[0];
            dy[1] = y[0] - p.expire_rate * y[1];
        };
        let grid = [0.0, 0.25, 0.5, 1.0, 2.0, 4.0];
        let sol = eseplab_numerics::rk4_integrate(f, &[6.0, 3.0], &grid, 1e-4).unwrap();
        for (i, t) in grid.iter().enumerate() {
            let m_nu = fluid_mean_intensity(&p, *t).unwrap();
            let m_q = fluid_mean_count(&p, *t).unwrap();
            assert!((m_nu - sol[i][0]).abs() < 1e-8, "t={t}: {m_nu} vs {}", sol[i][0]);
            assert!((m_q - sol[i][1]).abs() < 1e-8, "t={t}: {m_q} vs {}", sol[i][1]);
        }
    }

    #[test]
    fn matched_decay_and_jump_hits_the_degenerate_branch() {
        // beta = alpha exercises the phi -> t limit; check against RK4.
        let p = ModelParams::hesep(1.0, 2.0, 2.0, 1.5).with_q0(1).with_intensity0(1.0);
        let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| {
            dy[0] = 3.5 - 1.5 * y[0];
            dy[1] = y[0] - 1.5 * y[1];
        };
        let grid = [0.0, 0.5, 1.0, 3.0];
        let sol = eseplab_numerics::rk4_integrate(rhs, &[1.0, 1.0], &grid, 1e-4).unwrap();
        for (i, t) in grid.iter().enumerate() {
            let m_nu = fluid_mean_intensity(&p, *t).unwrap();
            let m_q = fluid_mean_count(&p, *t).unwrap();
            assert!((m_nu - sol[i][0]).abs() < 1e-8);
            assert!((m_q - sol[i][1]).abs() < 1e-8);
        }
    }

    #[test]
    fn exponent_is_linear_in_the_arguments() {
        let p = params();
        let t = 1.3;
        let ln = |a: f64, b: f64| fluid_limit_mgf(&p, a, b, t).unwrap().value.ln();
        // Three-point collinearity along both axes.
        let mid = ln(0.2, 0.1);
        assert!((2.0 * mid - ln(0.1, 0.1) - ln(0.3, 0.1)).abs() < 1e-12);
        assert!((2.0 * mid - ln(0.2, 0.0) - ln(0.2, 0.2)).abs() < 1e-12);
    }

    #[test]
    fn unstable_rates_are_refused() {
        let p = ModelParams::hesep(1.0, 5.0, 2.0, 2.0);
        assert!(matches!(
            fluid_mean_intensity(&p, 1.0),
            Err(LimitsError::Unstable { .. })
        ));
    }
}
