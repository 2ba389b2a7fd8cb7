//! Variance squeeze between the three matched models. With a common
//! baseline, jump `alpha`, and total relaxation rate `mu + beta`, the
//! exponential Hawkes process (pure decay), the hybrid process (decay `beta`
//! plus expiry `mu`), and the ESEP (pure expiry) share the same mean
//! intensity and count at every `t`, while their variances and
//! intensity-count covariances are ordered Hawkes <= hybrid <= ESEP: moving
//! relaxation from smooth decay to discrete expiries adds noise.

use crate::error::LimitsError;
use crate::fluid::fluid_constants;
use eseplab_core::{KernelSpec, ModelParams, RngStreamSpec};
use eseplab_sim::{
    esep_end_state, hawkes_end_state, hesep_end_state, par_map_streams, SimOptions,
};

/// Moment estimates of one model's `(intensity, count)` pair at the horizon,
/// with asymptotic standard errors (fourth-moment based for the variances).
#[derive(Debug, Clone, Copy)]
pub struct ProcessStats {
    pub mean: f64,
    pub mean_se: f64,
    pub var: f64,
    pub var_se: f64,
    pub count_mean: f64,
    pub count_mean_se: f64,
    pub count_var: f64,
    pub count_var_se: f64,
    pub cov: f64,
    pub cov_se: f64,
}

fn stats_from(xs: &[f64], ns: &[f64]) -> ProcessStats {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let mn = ns.iter().sum::<f64>() / n;
    let (mut s2x, mut s2n, mut sxn) = (0.0, 0.0, 0.0);
    let (mut m4x, mut m4n, mut m22) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ns) {
        let (dx, dy) = (x - mx, y - mn);
        s2x += dx * dx;
        s2n += dy * dy;
        sxn += dx * dy;
        m4x += dx.powi(4);
        m4n += dy.powi(4);
        m22 += dx * dx * dy * dy;
    }
    let var = s2x / (n - 1.0);
    let count_var = s2n / (n - 1.0);
    let cov = sxn / (n - 1.0);
    // Asymptotic standard errors use the population (biased) moments so the
    // fourth-central-moment radicals stay nonnegative at any sample size.
    let (var_p, count_var_p, cov_p) = (s2x / n, s2n / n, sxn / n);
    ProcessStats {
        mean: mx,
        mean_se: (var / n).sqrt(),
        var,
        var_se: ((m4x / n - var_p * var_p).max(0.0) / n).sqrt(),
        count_mean: mn,
        count_mean_se: (count_var / n).sqrt(),
        count_var,
        count_var_se: ((m4n / n - count_var_p * count_var_p).max(0.0) / n).sqrt(),
        cov,
        cov_se: ((m22 / n - cov_p * cov_p).max(0.0) / n).sqrt(),
    }
}

/// The three matched transient ensembles at one horizon.
#[derive(Debug, Clone, Copy)]
pub struct SandwichReport {
    pub t: f64,
    pub replications: u64,
    pub hawkes: ProcessStats,
    pub hybrid: ProcessStats,
    pub esep: ProcessStats,
    /// The common mean intensity all three should exhibit.
    pub mean_closed_form: f64,
}

/// Simulate the three matched models from an empty start and report their
/// transient moment estimates at time `t`.
pub fn sandwich_check(
    p: &ModelParams,
    t: f64,
    replications: u64,
    spec: RngStreamSpec,
) -> Result<SandwichReport, LimitsError> {
    if replications < 2 {
        return Err(LimitsError::Invalid("need at least two replications".into()));
    }
    let c = fluid_constants(p)?;
    if p.expire_rate <= 0.0 || p.decay_rate <= 0.0 {
        return Err(LimitsError::Invalid(
            "the squeeze needs both a decay and an expiry component".into(),
        ));
    }
    let total = p.expire_rate + p.decay_rate;
    let p_esep = ModelParams::esep(p.baseline, p.jump, total);
    let p_hawkes = ModelParams::hawkes(p.baseline, p.jump, total);
    let kernel = KernelSpec::exponential(p.jump, total);
    let p_hybrid = ModelParams::hesep(p.baseline, p.jump, p.decay_rate, p.expire_rate);
    let opts = SimOptions::default();

    let run = |stream: u64, f: &(dyn Fn(RngStreamSpec) -> Result<(f64, f64), LimitsError> + Sync)| {
        let pairs: Vec<(f64, f64)> =
            par_map_streams(spec.stream(stream), replications, |_, s| {
                f(s).unwrap_or((f64::NAN, f64::NAN))
            });
        if pairs.iter().any(|(a, b)| a.is_nan() || b.is_nan()) {
            return Err(LimitsError::Invalid("sandwich simulation failed".into()));
        }
        let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let ns: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        Ok(stats_from(&xs, &ns))
    };

    let hawkes = run(1, &|s| {
        Ok(hawkes_end_state(&p_hawkes, &kernel, t, s, &opts)
            .map(|e| (e.intensity, e.arrivals as f64))?)
    })?;
    let hybrid = run(2, &|s| {
        Ok(hesep_end_state(&p_hybrid, t, s, &opts).map(|e| (e.intensity, e.arrivals as f64))?)
    })?;
    let esep = run(3, &|s| {
        Ok(esep_end_state(&p_esep, t, s, &opts).map(|e| (e.intensity, e.arrivals as f64))?)
    })?;

    let mean_closed_form = c.nu_inf + (p.baseline - c.nu_inf) * (-c.gap * t).exp();
    Ok(SandwichReport { t, replications, hawkes, hybrid, esep, mean_closed_form })
}

impl SandwichReport {
    /// One-sided ordering check `lo <= hi` with a combined `z`-SE allowance,
    /// applied to intensity variance, count variance, and covariance.
    pub fn ordered_within(&self, z: f64) -> bool {
        let leq = |a: f64, sa: f64, b: f64, sb: f64| a <= b + z * (sa * sa + sb * sb).sqrt();
        leq(self.hawkes.var, self.hawkes.var_se, self.hybrid.var, self.hybrid.var_se)
            && leq(self.hybrid.var, self.hybrid.var_se, self.esep.var, self.esep.var_se)
            && leq(
                self.hawkes.count_var,
                self.hawkes.count_var_se,
                self.hybrid.count_var,
                self.hybrid.count_var_se,
            )
            && leq(
                self.hybrid.count_var,
                self.hybrid.count_var_se,
                self.esep.count_var,
                self.esep.count_var_se,
            )
            && leq(self.hawkes.cov, self.hawkes.cov_se, self.hybrid.cov, self.hybrid.cov_se)
            && leq(self.hybrid.cov, self.hybrid.cov_se, self.esep.cov, self.esep.cov_se)
    }

    /// Largest `|mean - closed form| / se` over the three intensity means.
    pub fn mean_max_z(&self) -> f64 {
        [&self.hawkes, &self.hybrid, &self.esep]
            .iter()
            .map(|s| (s.mean - self.mean_closed_form).abs() / s.mean_se.max(1e-300))
            .fold(0.0, f64::max)
    }
}
