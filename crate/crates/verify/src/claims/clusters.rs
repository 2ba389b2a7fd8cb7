//! Cluster-decomposition claims: simulated single-parent cascades against
//! the branching-process progeny and generation laws.

use super::support::{ensemble, z_of};
use crate::error::VerifyError;
use crate::types::ClaimSpec;
use eseplab_branching::{generations_law_esep, progeny_law, DiscreteLaw};
use eseplab_core::ModelParams;
use eseplab_numerics::{chi_square_gof, Welford};
use eseplab_sim::{simulate_cluster, ClusterModel, SimOptions};

const PROGENY_CAP: u64 = 400;
const GENERATION_CAP: u64 = 80;

fn cluster_params() -> ModelParams {
    ModelParams::esep(1.0, 2.0, 3.0)
}

fn cluster_sizes(spec: &ClaimSpec) -> Result<Vec<(u64, u64)>, VerifyError> {
    let p = cluster_params();
    let opts = SimOptions::default();
    ensemble(spec.seed, 0, spec.replications, |s| {
        simulate_cluster(&p, ClusterModel::Esep, s, &opts).map(|c| (c.progeny(), c.generations()))
    })
}

fn gof_p_value(values: &[u64], law: &DiscreteLaw) -> Result<f64, VerifyError> {
    let mut counts = vec![0u64; law.probs.len()];
    let mut overflow = 0u64;
    for &v in values {
        match v.checked_sub(law.offset).map(|i| i as usize) {
            Some(i) if i < counts.len() => counts[i] += 1,
            _ => overflow += 1,
        }
    }
    Ok(chi_square_gof(&counts, overflow, &law.probs, law.tail_mass)?.p_value)
}

/// Chi-square p-value of simulated total cluster sizes against the exact
/// progeny law.
pub(crate) fn cluster_progeny_gof(spec: &ClaimSpec) -> Result<f64, VerifyError> {
    let law = progeny_law(&cluster_params(), ClusterModel::Esep, PROGENY_CAP)?;
    let sizes = cluster_sizes(spec)?;
    let progeny: Vec<u64> = sizes.iter().map(|&(p, _)| p).collect();
    gof_p_value(&progeny, &law)
}

/// Chi-square p-value of simulated generation depths.
pub(crate) fn cluster_generations_gof(spec: &ClaimSpec) -> Result<f64, VerifyError> {
    let law = generations_law_esep(&cluster_params(), GENERATION_CAP)?;
    let sizes = cluster_sizes(spec)?;
    let gens: Vec<u64> = sizes.iter().map(|&(_, g)| g).collect();
    gof_p_value(&gens, &law)
}

/// z score of the mean cluster size against `beta / (beta - alpha)`.
pub(crate) fn cluster_mean_progeny(spec: &ClaimSpec) -> Result<f64, VerifyError> {
    let p = cluster_params();
    let target = p.expire_rate / (p.expire_rate - p.jump);
    let sizes = cluster_sizes(spec)?;
    let mut w = Welford::new();
    for &(prog, _) in &sizes {
        w.push(prog as f64);
    }
    Ok(z_of(&w, target))
}
