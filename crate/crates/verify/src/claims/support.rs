//! Shared reductions used by the claim runners.

use crate::error::VerifyError;
use eseplab_core::RngStreamSpec;
use eseplab_numerics::Welford;
use eseplab_sim::{par_map_streams, SimError};

/// Replication fan-out: stream `block + i` drives replication `i`. Blocks
/// are spaced far apart so ensembles within one claim never share a stream.
pub(crate) const fn stream_block(i: u64) -> u64 {
    i << 33
}

/// Run one replication ensemble and surface the first simulation error.
pub(crate) fn ensemble<T, F>(seed: u64, block: u64, reps: u64, f: F) -> Result<Vec<T>, VerifyError>
where
    T: Send,
    F: Fn(RngStreamSpec) -> Result<T, SimError> + Sync,
{
    let out: Result<Vec<T>, SimError> =
        par_map_streams(RngStreamSpec::new(seed, block), reps, |_, s| f(s))
            .into_iter()
            .collect();
    Ok(out?)
}

pub(crate) fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let mut w = Welford::new();
    for &x in xs {
        w.push(x);
    }
    (w.mean(), w.std_error())
}

/// Unbiased variance and its asymptotic standard error. The fourth-moment
/// radical uses the population variance so it stays nonnegative at any
/// sample size.
pub(crate) fn variance_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let (mut s2, mut m4) = (0.0, 0.0);
    for x in xs {
        let d = x - mean;
        s2 += d * d;
        m4 += d * d * d * d;
    }
    let var = s2 / (n - 1.0);
    let var_pop = s2 / n;
    (var, ((m4 / n - var_pop * var_pop).max(0.0) / n).sqrt())
}

/// `|estimate - target|` in standard-error units.
pub(crate) fn z_of(w: &Welford, target: f64) -> f64 {
    (w.mean() - target).abs() / w.std_error().max(f64::MIN_POSITIVE)
}

/// Counts over `0..len` with everything beyond pooled into the overflow bin.
pub(crate) fn histogram(values: &[u64], len: usize) -> (Vec<u64>, u64) {
    let mut counts = vec![0u64; len];
    let mut overflow = 0u64;
    for &v in values {
        match counts.get_mut(v as usize) {
            Some(c) => *c += 1,
            None => overflow += 1,
        }
    }
    (counts, overflow)
}
