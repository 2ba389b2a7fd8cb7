//! Distances and tests between samples and reference laws.

use crate::error::NumericsError;
use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Streaming mean/variance accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.n > 1 {
            self.m2 / (self.n - 1) as f64
        } else {
            0.0
        }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.n > 1 {
            (self.variance() / self.n as f64).sqrt()
        } else {
            f64::INFINITY
        }
    }
}

/// Two-sample Kolmogorov-Smirnov statistic `sup |F_a - F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<f64, NumericsError> {
    if a.is_empty() || b.is_empty() {
        return Err(NumericsError::EmptySample);
    }
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (na, nb) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let x = xs[i];
        let y = ys[j];
        let m = x.min(y);
        while i < xs.len() && xs[i] <= m {
            i += 1;
        }
        while j < ys.len() && ys[j] <= m {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// One-sample Kolmogorov-Smirnov statistic against a reference CDF.
pub fn ks_vs_cdf<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> Result<f64, NumericsError> {
    if sample.is_empty() {
        return Err(NumericsError::EmptySample);
    }
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs());
        d = d.max((f - (i + 1) as f64 / n).abs());
    }
    Ok(d)
}

/// Total variation distance between an integer histogram and a reference pmf
/// table. `counts[k]` holds observations of value k; `overflow` counts
/// observations beyond the table, compared against the table's truncated
/// tail mass.
pub fn tv_dense(
    counts: &[u64],
    overflow: u64,
    probs: &[f64],
    truncation_mass: f64,
) -> Result<f64, NumericsError> {
    if counts.len() != probs.len() {
        return Err(NumericsError::DimensionMismatch {
            expected: probs.len(),
            got: counts.len(),
        });
    }
    let n: u64 = counts.iter().sum::<u64>() + overflow;
    if n == 0 {
        return Err(NumericsError::EmptySample);
    }
    let n = n as f64;
    let mut tv = (overflow as f64 / n - truncation_mass).abs();
    for (c, p) in counts.iter().zip(probs) {
        tv += (*c as f64 / n - p).abs();
    }
    Ok(0.5 * tv)
}

/// Expected total variation between an empirical histogram of `n` draws from
/// `probs` and `probs` itself; the noise floor of a TV comparison. Uses
/// `E|p_hat - p| ~= sqrt(2 p (1-p) / (pi n))` per bin.
pub fn tv_noise_band(probs: &[f64], truncation_mass: f64, n: u64) -> f64 {
    let n = n.max(1) as f64;
    let term = |p: f64| (2.0 * p * (1.0 - p) / (std::f64::consts::PI * n)).sqrt();
    0.5 * (probs.iter().map(|&p| term(p)).sum::<f64>() + term(truncation_mass))
}

#[derive(Debug, Clone, Copy)]
pub struct Chi2Outcome {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
    /// Number of bins after merging small expected counts.
    pub bins: usize,
}

/// Chi-square goodness of fit of an integer histogram against a pmf table.
/// The truncated tail is one extra bin; bins with expected count below 5 are
/// merged into their left neighbor, as usual for the asymptotic chi-square
/// reference.
pub fn chi_square_gof(
    counts: &[u64],
    overflow: u64,
    probs: &[f64],
    truncation_mass: f64,
) -> Result<Chi2Outcome, NumericsError> {
    if counts.len() != probs.len() {
        return Err(NumericsError::DimensionMismatch {
            expected: probs.len(),
            got: counts.len(),
        });
    }
    let n: u64 = counts.iter().sum::<u64>() + overflow;
    if n == 0 {
        return Err(NumericsError::EmptySample);
    }
    let nf = n as f64;

    let mut obs: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    obs.push(overflow as f64);
    let mut exp: Vec<f64> = probs.iter().map(|&p| p * nf).collect();
    exp.push(truncation_mass.max(0.0) * nf);

    // Merge right-to-left so undersized tail bins collapse into the body.
    let mut merged_obs: Vec<f64> = Vec::new();
    let mut merged_exp: Vec<f64> = Vec::new();
    for (o, e) in obs.drain(..).zip(exp.drain(..)) {
        merged_obs.push(o);
        merged_exp.push(e);
    }
    let mut i = merged_exp.len();
    while i > 1 {
        i -= 1;
        if merged_exp[i] < 5.0 {
            merged_exp[i - 1] += merged_exp[i];
            merged_obs[i - 1] += merged_obs[i];
            merged_exp.remove(i);
            merged_obs.remove(i);
        }
    }
    // A leading undersized bin merges rightward.
    while merged_exp.len() > 1 && merged_exp[0] < 5.0 {
        merged_exp[1] += merged_exp[0];
        merged_obs[1] += merged_obs[0];
        merged_exp.remove(0);
        merged_obs.remove(0);
    }

    if merged_exp.len() < 2 {
        return Ok(Chi2Outcome { statistic: 0.0, dof: 0, p_value: 1.0, bins: merged_exp.len() });
    }

    let statistic: f64 = merged_obs
        .iter()
        .zip(&merged_exp)
        .map(|(o, e)| (o - e) * (o - e) / e.max(1e-300))
        .sum();
    let dof = (merged_exp.len() - 1) as u64;
    let p_value = ChiSquared::new(dof as f64)
        .map(|d| d.sf(statistic))
        .unwrap_or(f64::NAN);
    Ok(Chi2Outcome { statistic, dof, p_value, bins: merged_exp.len() })
}
