//! Simulation-backed consistency checks for the scaling regimes, sized to
//! run in seconds. The full-resolution versions live in the verification
//! suite; these pin the plumbing with modest replication counts.

use eseplab_core::{BatchLaw, DurationLaw, ModelKind, ModelParams, RngStreamSpec};
use eseplab_limits::{diffusion_fit_check, sandwich_check, sis_convergence_sweep, sis_exact_stationary};
use eseplab_numerics::ks_two_sample;
use eseplab_sim::{default_burn_in, esep_end_state, ngesep_end_state, par_map_streams, SimOptions};

/// With unit deterministic batches and exponential service the batch model
/// is the plain self-exciting process, so end-of-horizon intensities from
/// the two simulators must be statistically indistinguishable.
#[test]
fn unit_batches_with_exponential_service_reduce_to_the_base_process() {
    let esep = ModelParams::esep(10.0, 2.0, 3.0);
    let batch = ModelParams::ngesep(
        10.0,
        2.0,
        BatchLaw::DeterministicInt { n: 1 },
        DurationLaw::Exponential { rate: 3.0 },
    );
    let horizon = default_burn_in(&esep, ModelKind::Esep).unwrap();
    let opts = SimOptions::default();
    let reps = 3000u64;
    let spec = RngStreamSpec::new(0x5CA1E, 1);
    let a: Vec<f64> = par_map_streams(spec.stream(0), reps, |_, s| {
        esep_end_state(&esep, horizon, s, &opts).unwrap().intensity
    });
    let b: Vec<f64> = par_map_streams(spec.stream(1), reps, |_, s| {
        ngesep_end_state(&batch, 1, horizon, s, &opts).unwrap().intensity
    });
    let ks = ks_two_sample(&a, &b).unwrap();
    // Twice the 5% two-sample critical value: same-law noise sits well
    // below, a systematic mismatch between the simulators well above.
    let bound = 2.0 * 1.36 * (2.0 / reps as f64).sqrt();
    assert!(ks < bound, "ks = {ks}, bound = {bound}");
}

/// At moderate scale the stationary variance of the centered, sqrt-scaled
/// intensity already falls inside the dispersion bracket.
#[test]
fn scaled_intensity_variance_lands_inside_the_dispersion_bracket() {
    let p = ModelParams::hesep(1.0, 3.0, 2.0, 2.0);
    let report =
        diffusion_fit_check(&p, &[25], &[0.0, 1.0], 4000, RngStreamSpec::new(0xD1FF, 3)).unwrap();
    let sigma = report.values("sigma2");
    assert!((sigma[0].1 - 18.0).abs() < 1e-9);
    assert!((sigma[1].1 - 27.0).abs() < 1e-9);
    let lo = report.values("sigma2_lo")[0].1;
    let hi = report.values("sigma2_hi")[0].1;
    let var = report.values("scaled_var")[0].1;
    // Allow a little room for sampling noise on top of the exact bracket.
    assert!(var > lo - 1.5 && var < hi + 1.5, "var = {var}, bracket = [{lo}, {hi}]");
    let rel = report.values("rel_err_gamma_star")[0].1;
    assert!(rel < 0.5, "relative error at the interpolated point: {rel}");
}

/// The population sweep's Monte Carlo distance must agree with the distance
/// computed from the exact stationary chain, up to its own noise band.
#[test]
fn population_sweep_distance_matches_the_exact_chain() {
    let p = ModelParams::esep(10.0, 0.0, 3.0);
    let n = 100u64;
    let reps = 50_000u64;
    let report =
        sis_convergence_sweep(&p, &[n], reps, RngStreamSpec::new(0x515C, 9)).unwrap();
    let tv_mc = report.values("tv")[0].1;
    let band = report.values("tv_noise")[0].1;

    // Exact route: detailed-balance chain versus the Poisson limit law.
    let chain = sis_exact_stationary(&p, n).unwrap();
    let lambda: f64 = 10.0 / 3.0;
    let mut poisson = vec![(-lambda).exp()];
    for k in 1..chain.len() {
        let prev = poisson[k - 1];
        poisson.push(prev * lambda / k as f64);
    }
    let tv_exact =
        0.5 * chain.iter().zip(&poisson).map(|(a, b)| (a - b).abs()).sum::<f64>();

    assert!(
        (tv_mc - tv_exact).abs() < 2.0 * band + 0.003,
        "mc = {tv_mc}, exact = {tv_exact}, band = {band}"
    );
}

/// Transient variance ordering across the three matched processes, checked
/// with one-sided slack at a short horizon.
#[test]
fn matched_processes_keep_the_variance_ordering_at_a_short_horizon() {
    let p = ModelParams::hesep(1.0, 3.0, 2.0, 2.0);
    let report = sandwich_check(&p, 1.0, 25_000, RngStreamSpec::new(0x5A4D, 5)).unwrap();
    assert!(report.ordered_within(3.0), "ordering violated: {report:?}");
    assert!(report.mean_max_z() < 4.0, "mean z = {}", report.mean_max_z());
}
