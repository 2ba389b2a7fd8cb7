//! Uniformization checked against an independently written dense matrix
//! exponential (scaling and squaring with a Taylor core).

use eseplab_numerics::{expm_action, expm_action_with_rate, SparseSubGenerator};

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik != 0.0 {
                for j in 0..n {
                    c[i][j] += aik * b[k][j];
                }
            }
        }
    }
    c
}

fn dense_expm(a: &[Vec<f64>], t: f64) -> Vec<Vec<f64>> {
    let n = a.len();
    let norm: f64 = a
        .iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
        * t;
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = t / 2.0f64.powi(s as i32);

    // Taylor series for exp(A * scale).
    let mut result: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut term = result.clone();
    for k in 1..200 {
        let mut next = mat_mul(&term, a);
        for row in next.iter_mut() {
            for x in row.iter_mut() {
                *x *= scale / k as f64;
            }
        }
        let mag: f64 = next.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
        for i in 0..n {
            for j in 0..n {
                result[i][j] += next[i][j];
            }
        }
        term = next;
        if mag < 1e-20 {
            break;
        }
    }
    for _ in 0..s {
        result = mat_mul(&result, &result);
    }
    result
}

fn to_dense(dim: usize, entries: &[(usize, usize, f64)]) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; dim]; dim];
    for &(i, j, r) in entries {
        m[i][j] += r;
    }
    m
}

fn left_action_dense(v: &[f64], m: &[Vec<f64>]) -> Vec<f64> {
    let n = v.len();
    (0..n).map(|j| (0..n).map(|i| v[i] * m[i][j]).sum()).collect()
}

#[test]
fn uniformization_matches_dense_oracle() {
    let entries = vec![
        (0, 0, -2.0),
        (0, 1, 1.5),
        (0, 2, 0.3),
        (1, 0, 0.5),
        (1, 1, -1.7),
        (1, 2, 1.0),
        (2, 1, 0.4),
        (2, 2, -0.9),
    ];
    let z = SparseSubGenerator::from_entries(3, entries.clone()).unwrap();
    let dense = to_dense(3, &entries);
    for &t in &[0.3, 1.7, 8.0] {
        for v0 in [[1.0, 0.0, 0.0], [0.2, 0.5, 0.3]] {
            let fast = expm_action(&z, t, &v0).unwrap();
            let slow = left_action_dense(&v0, &dense_expm(&dense, t));
            for (f, s) in fast.iter().zip(&slow) {
                assert!((f - s).abs() < 1e-10, "t={t} fast={f} slow={s}");
            }
        }
    }
}

#[test]
fn result_is_invariant_to_uniformization_rate() {
    let entries = vec![
        (0, 0, -5.0),
        (0, 1, 4.0),
        (1, 1, -0.5),
        (1, 0, 0.25),
    ];
    let z = SparseSubGenerator::from_entries(2, entries).unwrap();
    let v0 = [0.7, 0.3];
    let base = expm_action(&z, 2.5, &v0).unwrap();
    let doubled = expm_action_with_rate(&z, 2.5, &v0, 10.0).unwrap();
    let padded = expm_action_with_rate(&z, 2.5, &v0, 37.0).unwrap();
    for ((a, b), c) in base.iter().zip(&doubled).zip(&padded) {
        assert!((a - b).abs() < 1e-10);
        assert!((a - c).abs() < 1e-10);
    }
}

#[test]
fn large_rate_times_horizon_stays_accurate() {
    // Stiff two-state flip at rate 500: distribution converges to 50/50 and
    // uniformization must not lose mass on the way.
    let z = SparseSubGenerator::from_entries(
        2,
        vec![(0, 0, -500.0), (0, 1, 500.0), (1, 0, 500.0), (1, 1, -500.0)],
    )
    .unwrap();
    let out = expm_action(&z, 1.0, &[1.0, 0.0]).unwrap();
    assert!((out[0] - 0.5).abs() < 1e-9);
    assert!((out[1] - 0.5).abs() < 1e-9);
    assert!(((out[0] + out[1]) - 1.0).abs() < 1e-10);
}
