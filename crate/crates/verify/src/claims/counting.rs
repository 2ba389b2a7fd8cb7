//! Counting-distribution claims: the matrix-exponential pmf against
//! simulated arrival counts, and against the series extraction of the
//! counting pgf.

use super::support::{ensemble, histogram};
use crate::error::VerifyError;
use crate::types::ClaimSpec;
use eseplab_analytics::{counting_pmf_matrix_table, counting_pmf_taylor};
use eseplab_core::ModelParams;
use eseplab_sim::{esep_end_state, SimOptions};

const N_MAX: u64 = 10;

/// Per-count z scores of the empirical arrival histogram at `t = 1`.
pub(crate) fn counting_pmf_vs_simulation(spec: &ClaimSpec) -> Result<f64, VerifyError> {
    let p = ModelParams::esep(10.0, 2.0, 3.0);
    let t = 1.0;
    let table = counting_pmf_matrix_table(&p, N_MAX, t)?;
    let opts = SimOptions::default();
    let arrivals = ensemble(spec.seed, 0, spec.replications, |s| {
        esep_end_state(&p, t, s, &opts).map(|e| e.arrivals)
    })?;
    let (counts, _) = histogram(&arrivals, table.probs.len());
    let n = spec.replications as f64;
    let mut worst = 0.0f64;
    for (k, &pk) in table.probs.iter().enumerate() {
        let se = (pk * (1.0 - pk) / n).sqrt().max(f64::MIN_POSITIVE);
        worst = worst.max((counts[k] as f64 / n - pk).abs() / se);
    }
    Ok(worst)
}

/// The two deterministic routes to `P(N_t = n)` must agree to solver
/// accuracy at every tabulated count and horizon.
pub(crate) fn counting_pmf_derivative_route(_spec: &ClaimSpec) -> Result<f64, VerifyError> {
    let p = ModelParams::esep(10.0, 2.0, 3.0);
    let mut worst = 0.0f64;
    for t in [0.25, 0.5, 1.0] {
        let matrix = counting_pmf_matrix_table(&p, N_MAX, t)?;
        let series = counting_pmf_taylor(&p, N_MAX, t)?;
        for (a, b) in matrix.probs.iter().zip(&series.probs) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}
