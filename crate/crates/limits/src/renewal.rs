//! Long-run arrival rate of the hybrid model. The arrival process is a
//! Markov renewal process whose strong law gives `N_t / t -> nu_inf` almost
//! surely, with `nu_inf = (mu + beta) nu* / (mu + beta - alpha)`; the mean
//! inter-arrival time correspondingly tends to `1 / nu_inf`.

use crate::error::LimitsError;
use crate::fluid::fluid_constants;
use eseplab_core::{ModelParams, RngStreamSpec, SweepReport};
use eseplab_sim::{hesep_end_state, SimOptions};

/// Relative error of the empirical rate on one long path per horizon in
/// `t_list`. Rows per t: `rate_rel_err` for `|N_t/t - nu_inf| / nu_inf` and
/// `interarrival_rel_err` for the companion mean-gap check.
pub fn renewal_check(
    p: &ModelParams,
    t_list: &[f64],
    spec: RngStreamSpec,
) -> Result<SweepReport, LimitsError> {
    let c = fluid_constants(p)?;
    let mut report = SweepReport::default();
    for (i, &t) in t_list.iter().enumerate() {
        if !(t > 0.0) {
            return Err(LimitsError::Invalid(format!("horizon must be positive, got {t}")));
        }
        // Long horizons at high rates produce many arrivals; scale the guard
        // with the expected count instead of the default cap.
        let expected = (c.nu_inf * t).max(1.0);
        let opts = SimOptions { max_events: (expected as u64).saturating_mul(50).max(10_000_000) };
        let end = hesep_end_state(p, t, spec.stream(i as u64), &opts)?;
        let rate = end.arrivals as f64 / t;
        report.push(t, "rate_rel_err", (rate - c.nu_inf).abs() / c.nu_inf, end.arrivals, spec.seed);
        // The sample mean gap is t / N up to the residual after the last
        // arrival, an O(1/N) correction that the tolerance absorbs.
        let gap_err = if end.arrivals == 0 {
            f64::INFINITY
        } else {
            ((t / end.arrivals as f64) * c.nu_inf - 1.0).abs()
        };
        report.push(t, "interarrival_rel_err", gap_err, end.arrivals, spec.seed);
    }
    Ok(report)
}
