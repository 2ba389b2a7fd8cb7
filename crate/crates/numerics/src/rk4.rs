//! Classical fixed-step RK4 for small ODE systems.

use crate::error::NumericsError;

/// Integrate `dy/dt = f(t, y)` from `t_grid[0]`, recording the state at every
/// grid point (the first row is `y0`). Each grid interval is subdivided into
/// equal steps no longer than `h_max`.
pub fn rk4_integrate<F>(
    mut f: F,
    y0: &[f64],
    t_grid: &[f64],
    h_max: f64,
) -> Result<Vec<Vec<f64>>, NumericsError>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    if t_grid.is_empty() {
        return Err(NumericsError::InvalidInput("empty time grid".into()));
    }
    if !(h_max > 0.0) {
        return Err(NumericsError::StepSizeUnderflow);
    }
    for w in t_grid.windows(2) {
        if !(w[1] >= w[0]) {
            return Err(NumericsError::InvalidInput("time grid must be nondecreasing".into()));
        }
    }

    let dim = y0.len();
    let mut y = y0.to_vec();
    let mut out = Vec::with_capacity(t_grid.len());
    out.push(y.clone());

    let mut k1 = vec![0.0; dim];
    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut tmp = vec![0.0; dim];

    for w in t_grid.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let span = t1 - t0;
        if span > 0.0 {
            let steps = (span / h_max).ceil().max(1.0) as u64;
            let h = span / steps as f64;
            let mut t = t0;
            for _ in 0..steps {
                if t + h == t {
                    return Err(NumericsError::StepSizeUnderflow);
                }
                f(t, &y, &mut k1);
                for i in 0..dim {
                    tmp[i] = y[i] + 0.5 * h * k1[i];
                }
                f(t + 0.5 * h, &tmp, &mut k2);
                for i in 0..dim {
                    tmp[i] = y[i] + 0.5 * h * k2[i];
                }
                f(t + 0.5 * h, &tmp, &mut k3);
                for i in 0..dim {
                    tmp[i] = y[i] + h * k3[i];
                }
                f(t + h, &tmp, &mut k4);
                for i in 0..dim {
                    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
                t += h;
            }
        }
        out.push(y.clone());
    }
    // First grid point was pushed before the loop; windows() then pushed one
    // row per interval, so the row count already matches the grid.
    debug_assert_eq!(out.len(), t_grid.len().max(1));
    Ok(out)
}
