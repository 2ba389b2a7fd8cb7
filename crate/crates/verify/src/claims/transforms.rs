//! Transient transforms against Monte Carlo.
//!
//! Every closed-form evaluator (intensity mgf, active-count pgf, counting
//! pgf, joint pgf) is checked at a grid of arguments and horizons against
//! plain sample averages of the corresponding path functional. The mgf grid
//! stays well inside the convergence strip so the averaged exponentials keep
//! finite fourth moments and the standard errors mean something.

use super::support::{ensemble, stream_block, z_of};
use crate::error::VerifyError;
use crate::types::ClaimSpec;
use eseplab_analytics::{esep_counting_pgf, esep_qt_pgf, esep_transient_mgf, joint_qd_pgf};
use eseplab_core::ModelParams;
use eseplab_numerics::Welford;
use eseplab_sim::{esep_end_state, SimOptions};

const THETAS: [f64; 5] = [-0.3, -0.2, -0.1, -0.03, 0.05];
const ZS: [f64; 5] = [0.2, 0.4, 0.6, 0.8, 0.95];
const PAIRS: [(f64, f64); 5] = [(0.3, 0.7), (0.5, 0.5), (0.7, 0.3), (0.9, 0.6), (0.6, 0.9)];
const HORIZONS: [f64; 3] = [0.5, 1.0, 2.0];

/// Worst z score over the whole transform grid.
pub(crate) fn transient_transforms_mc(spec: &ClaimSpec) -> Result<f64, VerifyError> {
    let p = ModelParams::esep(10.0, 2.0, 3.0);
    let opts = SimOptions::default();
    let mut worst = 0.0f64;
    for (i, &t) in HORIZONS.iter().enumerate() {
        let ends: Vec<(u32, u32)> =
            ensemble(spec.seed, stream_block(i as u64), spec.replications, |s| {
                esep_end_state(&p, t, s, &opts).map(|e| (e.q as u32, e.arrivals as u32))
            })?;
        let score = |target: f64, f: &dyn Fn(u32, u32) -> f64| {
            let mut w = Welford::new();
            for &(q, a) in &ends {
                w.push(f(q, a));
            }
            z_of(&w, target)
        };
        for &theta in &THETAS {
            let target = esep_transient_mgf(&p, theta, t)?.value;
            let baseline = p.baseline;
            let jump = p.jump;
            worst = worst.max(score(target, &move |q, _| {
                (theta * (baseline + jump * f64::from(q))).exp()
            }));
        }
        for &z in &ZS {
            let active = esep_qt_pgf(&p, z, t)?.value;
            worst = worst.max(score(active, &move |q, _| z.powi(q as i32)));
            let counting = esep_counting_pgf(&p, z, t)?.value;
            worst = worst.max(score(counting, &move |_, a| z.powi(a as i32)));
        }
        for &(z1, z2) in &PAIRS {
            let target = joint_qd_pgf(&p, z1, z2, t)?.value;
            worst = worst.max(score(target, &move |q, a| {
                z1.powi(q as i32) * z2.powi((a - q) as i32)
            }));
        }
    }
    Ok(worst)
}
