//! Offspring laws of a single individual in the cluster representation.
//! An ESEP individual is active for an `Exp(beta)` lifetime and produces
//! children at rate `alpha` while active, so its offspring count is
//! geometric with success `beta/(alpha+beta)`. A Hawkes individual excites
//! a Poisson number of children with mean `alpha/beta`.

use crate::discrete::DiscreteLaw;
use crate::error::BranchingError;
use eseplab_core::{validate_params, ClusterModel, ModelKind, ModelParams};

const TAIL_TARGET: f64 = 1e-12;
const MAX_SUPPORT: usize = 100_000;

/// Validate the record for the given cluster model and return `(alpha,
/// beta)` with the model's own rate in the `beta` slot, refusing the
/// critical and supercritical regimes.
pub(crate) fn model_rates(
    p: &ModelParams,
    model: ClusterModel,
) -> Result<(f64, f64), BranchingError> {
    let (kind, beta) = match model {
        ClusterModel::Esep => (ModelKind::Esep, p.expire_rate),
        ClusterModel::Hawkes => (ModelKind::Hawkes, p.decay_rate),
    };
    validate_params(p, kind)?;
    if beta <= p.jump {
        return Err(BranchingError::Unstable { alpha: p.jump, beta });
    }
    Ok((p.jump, beta))
}

/// Poisson table with mean `m`, truncated once the remaining tail is below
/// `TAIL_TARGET`.
pub(crate) fn poisson_table(m: f64) -> DiscreteLaw {
    if m <= 0.0 {
        return DiscreteLaw::new(0, vec![1.0], 0.0).with_moments(0.0, 0.0);
    }
    let mut probs = Vec::new();
    let mut pk = (-m).exp();
    let mut cum = 0.0;
    for k in 0..MAX_SUPPORT {
        probs.push(pk);
        cum += pk;
        if 1.0 - cum < TAIL_TARGET && (k as f64) > m {
            break;
        }
        pk *= m / (k + 1) as f64;
    }
    DiscreteLaw::new(0, probs, (1.0 - cum).max(0.0)).with_moments(m, m)
}

/// Offspring distribution of one individual.
pub fn offspring_law(p: &ModelParams, model: ClusterModel) -> Result<DiscreteLaw, BranchingError> {
    let (alpha, beta) = model_rates(p, model)?;
    if alpha == 0.0 {
        return Ok(DiscreteLaw::new(0, vec![1.0], 0.0).with_moments(0.0, 0.0));
    }
    match model {
        ClusterModel::Esep => {
            let succ = beta / (alpha + beta);
            let fail = alpha / (alpha + beta);
            let mut probs = Vec::new();
            let mut pk = succ;
            // Invariant: when index k is about to be pushed, `tail` holds
            // the exact remainder `fail^(k+1)` left beyond it.
            let mut tail = fail;
            while tail >= TAIL_TARGET && probs.len() < MAX_SUPPORT {
                probs.push(pk);
                pk *= fail;
                tail *= fail;
            }
            probs.push(pk);
            let mean = alpha / beta;
            let var = alpha * (alpha + beta) / (beta * beta);
            Ok(DiscreteLaw::new(0, probs, tail).with_moments(mean, var))
        }
        ClusterModel::Hawkes => Ok(poisson_table(alpha / beta)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn esep() -> ModelParams {
        ModelParams::esep(1.0, 2.0, 3.0)
    }

    fn hawkes() -> ModelParams {
        ModelParams::hawkes(1.0, 2.0, 3.0)
    }

    /// Simpson's rule on `[0, hi]` with `2n` panels.
    fn simpson(f: impl Fn(f64) -> f64, hi: f64, n: usize) -> f64 {
        let h = hi / (2 * n) as f64;
        let mut acc = f(0.0) + f(hi);
        for i in 1..2 * n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn esep_offspring_is_geometric_with_the_stated_head() {
        let law = offspring_law(&esep(), ClusterModel::Esep).unwrap();
        assert!((law.prob(0) - 0.6).abs() < 1e-14);
        assert!((law.mean.unwrap() - 2.0 / 3.0).abs() < 1e-14);
        assert!((law.variance.unwrap() - 10.0 / 9.0).abs() < 1e-14);
        assert!((law.total() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn offspring_heads_match_the_lifetime_mixture_quadrature() {
        // A child count conditioned on the lifetime s is Poisson(alpha s);
        // integrating against the Exp(beta) lifetime must recover the
        // geometric table.
        let law = offspring_law(&esep(), ClusterModel::Esep).unwrap();
        let (alpha, beta) = (2.0, 3.0);
        for k in 0..=8u64 {
            let kf = k as f64;
            let lg = statrs::function::gamma::ln_gamma(kf + 1.0);
            let integrand = |s: f64| {
                let ln_pois = -alpha * s + kf * (alpha * s).max(1e-300).ln() - lg;
                ln_pois.exp() * beta * (-beta * s).exp()
            };
            let q = simpson(integrand, 25.0, 20_000);
            assert!((law.prob(k) - q).abs() < 1e-8, "k={k}: {} vs {q}", law.prob(k));
        }

        let hlaw = offspring_law(&hawkes(), ClusterModel::Hawkes).unwrap();
        let mass = simpson(|s: f64| alpha * (-beta * s).exp(), 25.0, 20_000);
        for k in 0..=8u64 {
            let kf = k as f64;
            let lg = statrs::function::gamma::ln_gamma(kf + 1.0);
            let direct = (-mass + kf * mass.ln() - lg).exp();
            assert!((hlaw.prob(k) - direct).abs() < 1e-8, "k={k}");
        }
        assert!((hlaw.prob(0) - (-2.0f64 / 3.0).exp()).abs() < 1e-12);
    }

    #[test]
    fn zero_jump_collapses_to_a_point_mass_at_zero() {
        for (p, model) in [
            (ModelParams::esep(1.0, 0.0, 3.0), ClusterModel::Esep),
            (ModelParams::hawkes(1.0, 0.0, 3.0), ClusterModel::Hawkes),
        ] {
            let law = offspring_law(&p, model).unwrap();
            assert_eq!(law.prob(0), 1.0);
            assert_eq!(law.tail_mass, 0.0);
            assert_eq!(law.mean, Some(0.0));
        }
    }

    #[test]
    fn critical_and_supercritical_regimes_are_refused() {
        for beta in [2.0, 1.5] {
            let p = ModelParams::esep(1.0, 2.0, beta);
            assert!(matches!(
                offspring_law(&p, ClusterModel::Esep),
                Err(BranchingError::Unstable { .. })
            ));
        }
    }
}
