//! Population-size limit of the exogenously driven stochastic SIS model:
//! with infection pressure `(eta* + alpha I)(N - I)/N` and recovery `beta I`
//! the infected count converges, as `N` grows, to the ESEP active count, so
//! its steady histogram approaches the negative binomial law. The finite
//! population always keeps the chain ergodic; no stability condition enters.

use crate::error::LimitsError;
use eseplab_analytics::{esep_steady_negbin, PmfTable};
use eseplab_core::{ModelKind, ModelParams, RngStreamSpec, SweepReport};
use eseplab_numerics::{tv_dense, tv_noise_band};
use eseplab_sim::{default_burn_in, par_map_streams, sis_end_state, SimOptions};

/// Reference steady pmf in the infinite-population limit: negative binomial
/// for a positive jump, Poisson when the jump is zero.
pub(crate) fn limit_pmf(p: &ModelParams) -> Result<PmfTable, LimitsError> {
    if p.jump > 0.0 {
        return Ok(esep_steady_negbin(&ModelParams::esep(
            p.baseline,
            p.jump,
            p.expire_rate,
        ))?);
    }
    let m = p.baseline / p.expire_rate;
    let mut probs = vec![(-m).exp()];
    let mut cum = probs[0];
    while cum < 1.0 - 1e-12 {
        let k = probs.len() as f64;
        let next = probs.last().unwrap() * m / k;
        probs.push(next);
        cum += next;
    }
    Ok(PmfTable::new(probs, (1.0 - cum).max(0.0)))
}

/// Steady TV distance to the limit law per population size. Rows: `tv` (the
/// measurement) and `tv_noise` (the expected histogram noise floor at the
/// same sample count) per N.
pub fn sis_convergence_sweep(
    p: &ModelParams,
    n_list: &[u64],
    replications: u64,
    spec: RngStreamSpec,
) -> Result<SweepReport, LimitsError> {
    if replications == 0 {
        return Err(LimitsError::Invalid("replications must be positive".into()));
    }
    let pmf = limit_pmf(p)?;
    let horizon = default_burn_in(
        &ModelParams::esep(p.baseline, p.jump, p.expire_rate),
        ModelKind::Esep,
    )
    .ok_or_else(|| LimitsError::Invalid("limit comparison needs beta > alpha".into()))?;
    let opts = SimOptions::default();

    let mut report = SweepReport::expect_monotone();
    for (i, &n) in n_list.iter().enumerate() {
        if n == 0 {
            return Err(LimitsError::Invalid("population must be positive".into()));
        }
        let sis = ModelParams::sis(p.baseline, p.jump, p.expire_rate, n);
        let states: Vec<u64> = par_map_streams(spec.stream(i as u64), replications, |_, s| {
            sis_end_state(&sis, horizon, s, &opts).map(|e| e.q).unwrap_or(u64::MAX)
        });
        if states.iter().any(|&q| q == u64::MAX) {
            return Err(LimitsError::Invalid("sis simulation failed".into()));
        }
        let mut counts = vec![0u64; pmf.probs.len()];
        let mut overflow = 0u64;
        for &q in &states {
            match counts.get_mut(q as usize) {
                Some(c) => *c += 1,
                None => overflow += 1,
            }
        }
        let tv = tv_dense(&counts, overflow, &pmf.probs, pmf.truncation_mass)?;
        report.push(n as f64, "tv", tv, replications, spec.seed);
        report.push(
            n as f64,
            "tv_noise",
            tv_noise_band(&pmf.probs, pmf.truncation_mass, replications),
            replications,
            spec.seed,
        );
    }
    Ok(report)
}

/// Exact stationary law of the finite-population chain, solved by detailed
/// balance on the birth-death ladder. Used as the simulation-free oracle.
pub fn sis_exact_stationary(p: &ModelParams, population: u64) -> Result<Vec<f64>, LimitsError> {
    if population == 0 {
        return Err(LimitsError::Invalid("population must be positive".into()));
    }
    let n = population as f64;
    let mut pi = vec![1.0f64];
    for i in 0..population {
        let fi = i as f64;
        let up = (p.baseline + p.jump * fi) * (n - fi) / n;
        let down = p.expire_rate * (fi + 1.0);
        let next = pi.last().unwrap() * up / down;
        pi.push(next);
    }
    let z: f64 = pi.iter().sum();
    Ok(pi.into_iter().map(|x| x / z).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_chain_approaches_the_poisson_limit_without_excitation() {
        // Zero jump: the limit is Poisson(eta*/beta); the finite-population
        // correction decays like 1/N.
        let p = ModelParams::esep(10.0, 0.0, 3.0);
        let pmf = limit_pmf(&p).unwrap();
        let tv_at = |n: u64| {
            let pi = sis_exact_stationary(&p, n).unwrap();
            let mut tv = 0.0;
            for k in 0..pi.len().max(pmf.probs.len()) {
                let a = pi.get(k).copied().unwrap_or(0.0);
                let b = pmf.probs.get(k).copied().unwrap_or(0.0);
                tv += (a - b).abs();
            }
            0.5 * (tv + pmf.truncation_mass)
        };
        let (t100, t500) = (tv_at(100), tv_at(500));
        assert!(t100 < 0.03, "{t100}");
        assert!(t500 < 0.005, "{t500}");
        assert!(t500 < t100);
    }

    #[test]
    fn poisson_reference_is_normalized() {
        let pmf = limit_pmf(&ModelParams::esep(4.0, 0.0, 2.0)).unwrap();
        assert!((pmf.total() - 1.0).abs() < 1e-9);
        assert!((pmf.mean() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn detailed_balance_solution_is_stationary() {
        // pi must satisfy global balance: flow up from k equals flow down
        // from k+1.
        let p = ModelParams::esep(3.0, 1.5, 2.0);
        let pop = 40;
        let pi = sis_exact_stationary(&p, pop).unwrap();
        let n = pop as f64;
        for k in 0..pop as usize {
            let fk = k as f64;
            let up = (p.baseline + p.jump * fk) * (n - fk) / n * pi[k];
            let down = p.expire_rate * (fk + 1.0) * pi[k + 1];
            assert!((up - down).abs() < 1e-12 * up.max(down).max(1e-300));
        }
        assert!((pi.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_population_is_refused() {
        let p = ModelParams::esep(1.0, 0.5, 2.0);
        assert!(sis_exact_stationary(&p, 0).is_err());
        assert!(matches!(
            sis_convergence_sweep(&p, &[0], 10, RngStreamSpec::new(1, 0)),
            Err(LimitsError::Invalid(_))
        ));
    }
}
