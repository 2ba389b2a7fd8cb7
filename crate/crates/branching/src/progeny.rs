//! Total-progeny laws of a single cluster: the number of individuals ever
//! born, root included. The ESEP form carries a central binomial weight and
//! the Hawkes form is the Borel distribution; both are evaluated in log
//! space so the tables stay finite far past `k = 500`.

use crate::discrete::DiscreteLaw;
use crate::error::BranchingError;
use crate::offspring::model_rates;
use eseplab_core::{ClusterModel, ModelParams};
use statrs::function::gamma::ln_gamma;

/// `P(Z = k)` for `k = 1..=cap`, with the closed-form mean
/// `beta/(beta-alpha)` and the model's progeny variance attached.
pub fn progeny_law(
    p: &ModelParams,
    model: ClusterModel,
    cap: u64,
) -> Result<DiscreteLaw, BranchingError> {
    let (alpha, beta) = model_rates(p, model)?;
    if cap == 0 {
        return Err(BranchingError::Invalid("progeny table needs cap >= 1".into()));
    }
    if alpha == 0.0 {
        return Ok(DiscreteLaw::new(1, vec![1.0], 0.0).with_moments(1.0, 0.0));
    }
    let gap = beta - alpha;
    let mut probs = Vec::with_capacity(cap as usize);
    let mut cum = 0.0;
    for k in 1..=cap {
        let kf = k as f64;
        let ln_pk = match model {
            ClusterModel::Esep => {
                // (1/k) C(2k-2, k-1) (beta/(alpha+beta))^k (alpha/(alpha+beta))^(k-1)
                -kf.ln() + ln_gamma(2.0 * kf - 1.0) - 2.0 * ln_gamma(kf)
                    + kf * (beta / (alpha + beta)).ln()
                    + (kf - 1.0) * (alpha / (alpha + beta)).ln()
            }
            ClusterModel::Hawkes => {
                // Borel: e^(-mk) (mk)^(k-1) / k!
                let m = alpha / beta;
                -m * kf + (kf - 1.0) * (m * kf).ln() - ln_gamma(kf + 1.0)
            }
        };
        let pk = ln_pk.exp();
        probs.push(pk);
        cum += pk;
    }
    let variance = match model {
        ClusterModel::Esep => alpha * (alpha + beta) * beta / (gap * gap * gap),
        ClusterModel::Hawkes => alpha * beta * beta / (gap * gap * gap),
    };
    Ok(DiscreteLaw::new(1, probs, (1.0 - cum).max(0.0)).with_moments(beta / gap, variance))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_cluster_probability_matches_the_stated_forms() {
        let law = progeny_law(&ModelParams::esep(1.0, 2.0, 3.0), ClusterModel::Esep, 50).unwrap();
        assert!((law.prob(1) - 0.6).abs() < 1e-14);
        let law =
            progeny_law(&ModelParams::hawkes(1.0, 2.0, 3.0), ClusterModel::Hawkes, 50).unwrap();
        assert!((law.prob(1) - (-2.0f64 / 3.0).exp()).abs() < 1e-14);
    }

    #[test]
    fn total_mass_is_nearly_complete_by_k_2000() {
        let pe = ModelParams::esep(1.0, 1.0, 2.0);
        let ph = ModelParams::hawkes(1.0, 1.0, 2.0);
        for (p, model) in [(pe, ClusterModel::Esep), (ph, ClusterModel::Hawkes)] {
            let law = progeny_law(&p, model, 2000).unwrap();
            let mass: f64 = law.probs.iter().sum();
            assert!(mass >= 1.0 - 1e-6, "{model:?}: {mass}");
            assert!((law.total() - 1.0).abs() < 1e-10);
        }
    }

    /// Independent head oracle: the total progeny of a cluster rooted at one
    /// individual satisfies `Z = 1 + sum of X i.i.d. copies of Z`, so its
    /// pmf is the fixed point of offspring-compound convolution. Twelve
    /// iterations pin the first twelve coefficients exactly.
    fn convolution_fixed_point(offspring: &[f64], n: usize) -> Vec<f64> {
        let mut z = vec![0.0; n + 1];
        for _ in 0..=n {
            // compound = sum_j offspring[j] * z^(*j), truncated at n
            let mut compound = vec![0.0; n + 1];
            let mut power = vec![0.0; n + 1];
            power[0] = 1.0;
            for (j, &oj) in offspring.iter().enumerate() {
                if j > 0 {
                    let mut next = vec![0.0; n + 1];
                    for a in 0..=n {
                        if power[a] == 0.0 {
                            continue;
                        }
                        for b in 0..=(n - a) {
                            next[a + b] += power[a] * z[b];
                        }
                    }
                    power = next;
                }
                for a in 0..=n {
                    compound[a] += oj * power[a];
                }
            }
            // shift by one for the root itself
            let mut znew = vec![0.0; n + 1];
            for a in 0..n {
                znew[a + 1] = compound[a];
            }
            z = znew;
        }
        z
    }

    #[test]
    fn convolution_fixed_point_reproduces_the_head() {
        use crate::offspring::offspring_law;
        let pe = ModelParams::esep(1.0, 2.0, 3.0);
        let ph = ModelParams::hawkes(1.0, 2.0, 3.0);
        for (p, model) in [(pe, ClusterModel::Esep), (ph, ClusterModel::Hawkes)] {
            let law = progeny_law(&p, model, 12).unwrap();
            let off = offspring_law(&p, model).unwrap();
            let z = convolution_fixed_point(&off.probs, 12);
            for k in 1..=12u64 {
                assert!(
                    (law.prob(k) - z[k as usize]).abs() < 1e-10,
                    "{model:?} k={k}: {} vs {}",
                    law.prob(k),
                    z[k as usize]
                );
            }
        }
    }

    #[test]
    fn numeric_mean_approaches_the_closed_form() {
        for (alpha, beta) in [(1.0, 2.0), (1.0, 4.0), (2.0, 3.0)] {
            for model in [ClusterModel::Esep, ClusterModel::Hawkes] {
                let p = match model {
                    ClusterModel::Esep => ModelParams::esep(1.0, alpha, beta),
                    ClusterModel::Hawkes => ModelParams::hawkes(1.0, alpha, beta),
                };
                let law = progeny_law(&p, model, 4000).unwrap();
                let numeric = law.tabulated_mean();
                let exact = beta / (beta - alpha);
                assert!(
                    (numeric - exact).abs() < 1e-4,
                    "{model:?} ({alpha},{beta}): {numeric} vs {exact}"
                );
                assert!((law.mean.unwrap() - exact).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn esep_progeny_tail_is_heavier_than_hawkes() {
        let pe = ModelParams::esep(1.0, 2.0, 3.0);
        let ph = ModelParams::hawkes(1.0, 2.0, 3.0);
        let esep = progeny_law(&pe, ClusterModel::Esep, 10).unwrap();
        let hawkes = progeny_law(&ph, ClusterModel::Hawkes, 10).unwrap();
        assert!(esep.tail_mass > hawkes.tail_mass, "{} vs {}", esep.tail_mass, hawkes.tail_mass);
    }
}
