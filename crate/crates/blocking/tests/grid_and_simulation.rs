//! The incomplete-beta route against brute force across a parameter grid,
//! and the closed forms against the blocking simulator.

use eseplab_blocking::{esepb_steady, ln_negbin, truncated_negbin_direct};
use eseplab_core::{ModelParams, RngStreamSpec};
use eseplab_numerics::Welford;
use eseplab_sim::{esep_b_end_state, par_map_streams, SimOptions};

fn grid() -> Vec<ModelParams> {
    let mut out = Vec::new();
    for eta in [1.0, 2.5, 5.0, 10.0, 20.0] {
        for (alpha, beta) in [(2.0, 3.0), (1.0, 2.0)] {
            for c in [2u64, 5, 12] {
                out.push(ModelParams::esep_b(eta, alpha, beta, c));
            }
        }
    }
    out
}

#[test]
fn beta_function_route_matches_brute_force_on_the_grid() {
    let points = grid();
    assert_eq!(points.len(), 30);
    for p in &points {
        let s = esepb_steady(p).unwrap();
        let direct = truncated_negbin_direct(p).unwrap();
        for (k, (a, b)) in s.pmf.probs.iter().zip(&direct).enumerate() {
            assert!((a - b).abs() < 1e-10, "{p:?} k={k}: {a} vs {b}");
        }
        let mass: f64 = s.pmf.probs.iter().sum();
        assert!((mass - 1.0).abs() < 1e-10);

        // The I-term moments must agree with the finite-support sums.
        let mean: f64 = direct.iter().enumerate().map(|(k, q)| k as f64 * q).sum();
        let second: f64 = direct.iter().enumerate().map(|(k, q)| (k * k) as f64 * q).sum();
        assert!((s.mean - mean).abs() < 1e-10, "{p:?}: mean {} vs {mean}", s.mean);
        assert!((s.variance - (second - mean * mean)).abs() < 1e-10, "{p:?}");
    }
}

#[test]
fn mild_truncation_keeps_the_law_over_dispersed() {
    // Over-dispersion survives the capacity cut only while the cut is mild;
    // severe truncation removes the right tail that carries the excess
    // variance and can push the law below Poisson dispersion.
    for p in grid() {
        let s = esepb_steady(&p).unwrap();
        let kept: f64 = (0..=p.capacity.unwrap())
            .map(|n| ln_negbin(p.baseline, p.jump, p.expire_rate, n).exp())
            .sum();
        if kept > 0.95 {
            assert!(s.variance > s.mean, "{p:?}: var {} mean {}", s.variance, s.mean);
        }
    }
    let fig = esepb_steady(&ModelParams::esep_b(5.0, 2.0, 3.0, 8)).unwrap();
    assert!(fig.variance > fig.mean);

    // Counterexample kept on purpose: Geometric(1/2) capped at 2 has
    // mean 4/7 but variance 26/49.
    let tight = esepb_steady(&ModelParams::esep_b(1.0, 1.0, 2.0, 2)).unwrap();
    assert!((tight.mean - 4.0 / 7.0).abs() < 1e-12);
    assert!((tight.variance - 26.0 / 49.0).abs() < 1e-12);
    assert!(tight.variance < tight.mean);
}

#[test]
fn simulated_capacity_frequency_and_blocked_fraction_match() {
    let p = ModelParams::esep_b(5.0, 2.0, 3.0, 8);
    let s = esepb_steady(&p).unwrap();
    // Burn past the transient, then read the end state; blocking tallies
    // accumulate over the whole path, so the window start also skips burn-in
    // by starting the count from a warmed seed state. Simpler and unbiased:
    // long per-path horizon, many paths.
    let horizon = 400.0;
    let reps = 4000u64;
    let opts = SimOptions::default();
    let tallies = par_map_streams(RngStreamSpec::new(0xB10C, 7), reps, |_, spec| {
        esep_b_end_state(&p, horizon, spec, &opts).unwrap()
    });

    let mut at_capacity = Welford::new();
    let mut blocked_fraction = Welford::new();
    for t in &tallies {
        at_capacity.push(if t.q == 8 { 1.0 } else { 0.0 });
        blocked_fraction.push(t.blocked as f64 / t.offered().max(1) as f64);
    }

    let pc = *s.pmf.probs.last().unwrap();
    let diff = (at_capacity.mean() - pc).abs();
    assert!(
        diff <= 3.0 * at_capacity.std_error(),
        "capacity freq {} vs {pc} (se {})",
        at_capacity.mean(),
        at_capacity.std_error()
    );

    // Per-path blocked fractions are slightly biased by the transient, so
    // allow the 3-SE band around the analytic value plus a small burn-in
    // allowance scaled by the relaxation share of the horizon.
    let diff = (blocked_fraction.mean() - s.block_fraction).abs();
    let slack = 3.0 * blocked_fraction.std_error() + 3.0 / horizon * s.block_fraction;
    assert!(
        diff <= slack,
        "blocked fraction {} vs {} (se {})",
        blocked_fraction.mean(),
        s.block_fraction,
        blocked_fraction.std_error()
    );
}

#[test]
fn blocking_fraction_differs_from_capacity_probability_at_small_scale() {
    let p = ModelParams::esep_b(5.0, 2.0, 3.0, 3);
    let s = esepb_steady(&p).unwrap();
    let pc = *s.pmf.probs.last().unwrap();
    assert!(s.block_fraction > pc * 1.05, "{} vs {pc}", s.block_fraction);
}
