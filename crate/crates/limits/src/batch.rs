//! Batch scaling: an n-GESEP whose batches have mean of order `n` and whose
//! per-active jump is `alpha / n` converges, as `n` grows, to a marked
//! Hawkes process whose kernel is the tail CDF of the activity-duration law
//! and whose marks are the limit of `alpha B / n`.

use crate::error::LimitsError;
use eseplab_core::{
    validate_params, BatchLaw, Kernel, KernelSpec, MarkLaw, ModelKind, ModelParams,
    RngStreamSpec, SweepReport,
};
use eseplab_numerics::ks_two_sample;
use eseplab_sim::{
    default_burn_in, hawkes_end_state, ngesep_end_state, par_map_streams, SimOptions,
};
use serde::{Deserialize, Serialize};

/// How the batch law grows with the scale. Deterministic batches of size `n`
/// have the constant mark `alpha` as their limit; geometric batches with
/// mean `n` have `B/n => Exp(1)`, hence an exponential mark of mean `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BatchFamily {
    Deterministic,
    GeometricMean,
}

impl BatchFamily {
    pub fn law(&self, n: u64) -> BatchLaw {
        match self {
            BatchFamily::Deterministic => BatchLaw::DeterministicInt { n },
            BatchFamily::GeometricMean => BatchLaw::Geometric { p: 1.0 / n as f64 },
        }
    }

    pub fn mark_law(&self, alpha: f64) -> MarkLaw {
        match self {
            BatchFamily::Deterministic => MarkLaw::Deterministic { value: alpha },
            BatchFamily::GeometricMean => MarkLaw::Exponential { mean: alpha },
        }
    }
}

/// The scaling-limit excitation: tail-of-duration kernel plus the family's
/// limiting mark law.
pub fn matched_kernel_spec(
    p: &ModelParams,
    family: BatchFamily,
) -> Result<KernelSpec, LimitsError> {
    let law = p
        .duration_law
        .clone()
        .ok_or_else(|| LimitsError::Invalid("batch scaling needs a duration law".into()))?;
    let spec = KernelSpec::new(Kernel::TailOfDuration { law }, family.mark_law(p.jump));
    spec.validate()?;
    Ok(spec)
}

/// KS distance between the end-of-horizon intensity of the n-GESEP and of
/// its limiting marked Hawkes process, for each scale in `n_list`. The
/// horizon is the simulators' burn-in rule, so both samples are effectively
/// stationary; the distances should fall with `n` up to Monte Carlo noise.
///
/// A final analytic row `log_slope` reports the least-squares slope of
/// `ln KS` against `ln n`; the convergence rate is an open matter, so it is
/// informational only.
pub fn batch_scaling_sweep(
    p: &ModelParams,
    family: BatchFamily,
    n_list: &[u64],
    replications: u64,
    spec: RngStreamSpec,
) -> Result<SweepReport, LimitsError> {
    if replications == 0 {
        return Err(LimitsError::Invalid("replications must be positive".into()));
    }
    let kernel = matched_kernel_spec(p, family)?;
    let base = ModelParams::ngesep(
        p.baseline,
        p.jump,
        family.law(1),
        p.duration_law.clone().unwrap(),
    );
    validate_params(&base, ModelKind::Ngesep)?;
    let horizon = default_burn_in(&base, ModelKind::Ngesep)
        .ok_or_else(|| LimitsError::Invalid("unstable batch model".into()))?;

    // The stability flag of the Hawkes reference reads decay vs jump, so
    // store the duration's rate scale there for an honest record.
    let duration_mean = p.duration_law.as_ref().unwrap().mean();
    let hawkes_p = ModelParams::hawkes(p.baseline, p.jump, 1.0 / duration_mean);
    let opts = SimOptions::default();
    let reference: Vec<f64> =
        par_map_streams(spec.stream(0), replications, |_, s| {
            hawkes_end_state(&hawkes_p, &kernel, horizon, s, &opts)
                .map(|e| e.intensity)
                .unwrap_or(f64::NAN)
        });
    if reference.iter().any(|v| v.is_nan()) {
        return Err(LimitsError::Invalid("hawkes reference simulation failed".into()));
    }

    let mut report = SweepReport::expect_monotone();
    for (i, &n) in n_list.iter().enumerate() {
        if n == 0 {
            return Err(LimitsError::Invalid("scale n must be positive".into()));
        }
        let scaled = ModelParams::ngesep(
            p.baseline,
            p.jump,
            family.law(n),
            p.duration_law.clone().unwrap(),
        );
        let sample: Vec<f64> =
            par_map_streams(spec.stream(i as u64 + 1), replications, |_, s| {
                ngesep_end_state(&scaled, n, horizon, s, &opts)
                    .map(|e| e.intensity)
                    .unwrap_or(f64::NAN)
            });
        if sample.iter().any(|v| v.is_nan()) {
            return Err(LimitsError::Invalid("batched simulation failed".into()));
        }
        let ks = ks_two_sample(&sample, &reference)?;
        report.push(n as f64, "ks", ks, replications, spec.seed);
    }
    if let Some(slope) = log_log_slope(&report, "ks") {
        report.push(0.0, "log_slope", slope, 0, spec.seed);
    }
    Ok(report)
}

/// Least-squares slope of `ln value` against `ln scale` over one metric's
/// rows; `None` with fewer than two usable rows.
pub fn log_log_slope(report: &SweepReport, metric: &str) -> Option<f64> {
    let pts: Vec<(f64, f64)> = report
        .values(metric)
        .into_iter()
        .filter(|(s, v)| *s > 0.0 && *v > 0.0)
        .map(|(s, v)| (s.ln(), v.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let (sx, sy): (f64, f64) = pts.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    let (mx, my) = (sx / n, sy / n);
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
