//! Arrival-count PMF through a finite CTMC. Tracking `(Q_t, A_t)` with the
//! arrival counter capped at `n` gives a block-bidiagonal sub-generator:
//! block `i` holds the states with `i` arrivals so far (so `Q` ranges over
//! `0..=q0+i`), expirations move within a block and arrivals hop to the next
//! one. Probability escaping block `n` is simply dropped, so the mass left
//! in block `n` at time `t` is exactly `P(A_t = n)`.

use crate::error::AnalyticsError;
use crate::types::PmfTable;
use eseplab_core::{validate_params, ModelKind, ModelParams};
use eseplab_numerics::{expm_action, SparseSubGenerator};

pub const DEFAULT_DIMENSION_CAP: usize = 5000;

fn block_offset(k: usize, i: usize) -> usize {
    i * (k + 1) + i * i.saturating_sub(1) / 2
}

/// `P(arrivals on (0,t] = n)` via the matrix exponential of the capped
/// `(Q, A)` generator, with the state dimension limited to `cap`.
pub fn counting_pmf_matrix_capped(
    p: &ModelParams,
    n: u64,
    t: f64,
    cap: usize,
) -> Result<f64, AnalyticsError> {
    validate_params(p, ModelKind::Esep)?;
    let (alpha, beta, eta) = (p.jump, p.expire_rate, p.baseline);
    let k = p.q0 as usize;
    let n = n as usize;
    let dim = (n + 1) * (k + 1) + n * (n + 1) / 2;
    if dim > cap {
        return Err(AnalyticsError::DimensionOverflow { dim, cap });
    }
    let mut entries = Vec::new();
    for i in 0..=n {
        let off = block_offset(k, i);
        for j in 0..=(k + i) {
            let q = (k + i - j) as f64;
            let row = off + j;
            entries.push((row, row, -(eta + q * (alpha + beta))));
            if q >= 1.0 {
                entries.push((row, row + 1, beta * q));
            }
            if i < n {
                entries.push((row, block_offset(k, i + 1) + j, eta + alpha * q));
            }
        }
    }
    let gen = SparseSubGenerator::from_entries(dim, entries)?;
    let mut v0 = vec![0.0; dim];
    v0[0] = 1.0;
    let v = expm_action(&gen, t, &v0)?;
    let mass: f64 = v[block_offset(k, n)..].iter().sum();
    Ok(mass.clamp(0.0, 1.0))
}

/// Same with the default dimension cap of 5000.
pub fn counting_pmf_matrix(p: &ModelParams, n: u64, t: f64) -> Result<f64, AnalyticsError> {
    counting_pmf_matrix_capped(p, n, t, DEFAULT_DIMENSION_CAP)
}

/// Tabulate `P(A_t = n)` for `n = 0..=n_max` through the matrix route.
pub fn counting_pmf_matrix_table(
    p: &ModelParams,
    n_max: u64,
    t: f64,
) -> Result<PmfTable, AnalyticsError> {
    let mut probs = Vec::with_capacity(n_max as usize + 1);
    let mut total = 0.0;
    for n in 0..=n_max {
        let v = counting_pmf_matrix(p, n, t)?;
        total += v;
        probs.push(v);
    }
    Ok(PmfTable::new(probs, (1.0 - total).max(0.0)))
}
