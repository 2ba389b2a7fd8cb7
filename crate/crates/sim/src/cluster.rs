//! Single-family branching simulation. A family starts from one root
//! individual; each individual independently produces offspring according to
//! the model's offspring law. For the ESEP an individual lives `Exp(beta)`
//! and reproduces at rate `alpha` while alive, so its offspring count given a
//! lifetime `s` is `Pois(alpha s)` with birth times uniform over the
//! lifetime. For the Hawkes process the count is `Pois(alpha / beta)` with
//! `Exp(beta)` birth offsets.

use crate::error::SimError;
use crate::options::SimOptions;
use eseplab_core::{ClusterModel, ModelParams, RngStreamSpec};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp, Poisson};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Individual {
    pub birth: f64,
    pub parent: Option<usize>,
    /// Root is generation 1.
    pub generation: u64,
    /// `None` for models without expiration (Hawkes).
    pub death: Option<f64>,
}

/// One simulated family, individuals in breadth-first order (root first).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterPath {
    pub model: ClusterModel,
    pub individuals: Vec<Individual>,
    pub seed: u64,
    pub stream_id: u64,
}

impl ClusterPath {
    /// Total progeny including the root.
    pub fn progeny(&self) -> u64 {
        self.individuals.len() as u64
    }

    /// Number of generations in the family (1 for a childless root).
    pub fn generations(&self) -> u64 {
        self.individuals.iter().map(|i| i.generation).max().unwrap_or(0)
    }

    /// Time from the root's birth until the last death, if every individual
    /// has a recorded death time.
    pub fn duration(&self) -> Option<f64> {
        let mut last: f64 = 0.0;
        for ind in &self.individuals {
            last = last.max(ind.death?);
        }
        Some(last - self.individuals.first().map_or(0.0, |r| r.birth))
    }
}

fn spawn_children(
    p: &ModelParams,
    model: ClusterModel,
    parent_idx: usize,
    parent: &Individual,
    rng: &mut ChaCha8Rng,
) -> Vec<Individual> {
    let mut children = Vec::new();
    match model {
        ClusterModel::Esep => {
            let lifetime = parent.death.expect("esep individuals die") - parent.birth;
            let mean = p.jump * lifetime;
            let count = if mean > 0.0 { Poisson::new(mean).unwrap().sample(rng) as u64 } else { 0 };
            for _ in 0..count {
                let birth = parent.birth + rng.gen::<f64>() * lifetime;
                let death = birth + Exp::new(p.expire_rate).unwrap().sample(rng);
                children.push(Individual {
                    birth,
                    parent: Some(parent_idx),
                    generation: parent.generation + 1,
                    death: Some(death),
                });
            }
        }
        ClusterModel::Hawkes => {
            let mean = p.jump / p.decay_rate;
            let count = if mean > 0.0 { Poisson::new(mean).unwrap().sample(rng) as u64 } else { 0 };
            for _ in 0..count {
                let birth = parent.birth + Exp::new(p.decay_rate).unwrap().sample(rng);
                children.push(Individual {
                    birth,
                    parent: Some(parent_idx),
                    generation: parent.generation + 1,
                    death: None,
                });
            }
        }
    }
    children
}

/// Simulate one full family tree rooted at a single individual born at time
/// zero. Fails with `ExplosionGuard` once the family exceeds
/// `opts.max_events` members, which supercritical parameters will hit.
pub fn simulate_cluster(
    p: &ModelParams,
    model: ClusterModel,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<ClusterPath, SimError> {
    if p.jump < 0.0 {
        return Err(SimError::Unsupported("negative jump".into()));
    }
    let rate = match model {
        ClusterModel::Esep => p.expire_rate,
        ClusterModel::Hawkes => p.decay_rate,
    };
    if rate <= 0.0 {
        return Err(SimError::Unsupported("offspring law needs a positive rate".into()));
    }
    let mut rng = spec.rng();
    let root = Individual {
        birth: 0.0,
        parent: None,
        generation: 1,
        death: match model {
            ClusterModel::Esep => Some(Exp::new(p.expire_rate).unwrap().sample(&mut rng)),
            ClusterModel::Hawkes => None,
        },
    };
    let mut individuals = vec![root];
    let mut frontier: VecDeque<usize> = VecDeque::from([0]);
    while let Some(idx) = frontier.pop_front() {
        let parent = individuals[idx].clone();
        for child in spawn_children(p, model, idx, &parent, &mut rng) {
            individuals.push(child);
            frontier.push_back(individuals.len() - 1);
            if individuals.len() as u64 > opts.max_events {
                return Err(SimError::ExplosionGuard {
                    events: individuals.len() as u64,
                    cap: opts.max_events,
                });
            }
        }
    }
    Ok(ClusterPath { model, individuals, seed: spec.seed, stream_id: spec.stream_id })
}
