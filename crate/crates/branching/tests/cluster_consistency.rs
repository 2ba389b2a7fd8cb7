//! Simulated clusters against the closed-form cluster laws.

use eseplab_branching::{generations_law_esep, progeny_law};
use eseplab_core::{ClusterModel, ModelParams, RngStreamSpec};
use eseplab_numerics::chi_square_gof;
use eseplab_sim::{par_map_streams, simulate_cluster, SimOptions};

fn histogram(values: &[u64], offset: u64, len: usize) -> (Vec<u64>, u64) {
    let mut counts = vec![0u64; len];
    let mut overflow = 0u64;
    for &v in values {
        let idx = (v - offset) as usize;
        if idx < len {
            counts[idx] += 1;
        } else {
            overflow += 1;
        }
    }
    (counts, overflow)
}

#[test]
fn simulated_progeny_histogram_fits_the_law() {
    let reps = 100_000u64;
    let opts = SimOptions { max_events: 200_000 };
    for (model, p, stream) in [
        (ClusterModel::Esep, ModelParams::esep(1.0, 2.0, 3.0), 21),
        (ClusterModel::Hawkes, ModelParams::hawkes(1.0, 2.0, 3.0), 22),
    ] {
        let sizes = par_map_streams(RngStreamSpec::new(0x5EED, stream), reps, |_, spec| {
            simulate_cluster(&p, model, spec, &opts).unwrap().progeny() as u64
        });
        let law = progeny_law(&p, model, 60).unwrap();
        let (counts, overflow) = histogram(&sizes, 1, law.probs.len());
        let outcome = chi_square_gof(&counts, overflow, &law.probs, law.tail_mass).unwrap();
        assert!(
            outcome.p_value > 0.01,
            "{model:?}: chi2={} dof={} p={}",
            outcome.statistic,
            outcome.dof,
            outcome.p_value
        );
    }
}

#[test]
fn simulated_generation_depth_histogram_fits_the_law() {
    let reps = 100_000u64;
    let opts = SimOptions { max_events: 200_000 };
    let p = ModelParams::esep(1.0, 2.0, 3.0);
    let depths = par_map_streams(RngStreamSpec::new(0x5EED, 23), reps, |_, spec| {
        simulate_cluster(&p, ClusterModel::Esep, spec, &opts).unwrap().generations() as u64
    });
    let law = generations_law_esep(&p, 40).unwrap();
    let (counts, overflow) = histogram(&depths, 1, law.probs.len());
    let outcome = chi_square_gof(&counts, overflow, &law.probs, law.tail_mass).unwrap();
    assert!(outcome.p_value > 0.01, "chi2={} p={}", outcome.statistic, outcome.p_value);
}
