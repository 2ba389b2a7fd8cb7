//! Exact CTMC simulation of the SIS epidemic analogue on N agents: with I
//! infected, new infections occur at rate `(eta* + alpha I)(N - I)/N` and
//! recoveries at rate `beta I`. As N grows with parameters fixed, I converges
//! to the ESEP active count.

use crate::error::SimError;
use crate::options::{EndState, SimOptions};
use crate::sink::{EventSink, LogSink, NullSink};
use eseplab_core::{
    validate_params, EventKind, ModelKind, ModelParams, RngStreamSpec, SamplePath,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

pub(crate) fn sis_core<S: EventSink>(
    p: &ModelParams,
    horizon: f64,
    rng: &mut ChaCha8Rng,
    opts: &SimOptions,
    sink: &mut S,
) -> Result<EndState, SimError> {
    let pop = p.population.expect("validated") as f64;
    let mut t = 0.0;
    let mut i = p.q0;
    let mut infections = 0u64;
    let mut events = 0u64;
    loop {
        let up = (p.baseline + p.jump * i as f64) * (pop - i as f64).max(0.0) / pop;
        let down = p.expire_rate * i as f64;
        let total = up + down;
        if total <= 0.0 {
            break;
        }
        t += Exp::new(total).unwrap().sample(rng);
        if t > horizon {
            break;
        }
        events += 1;
        if events > opts.max_events {
            return Err(SimError::ExplosionGuard { events, cap: opts.max_events });
        }
        if rng.gen::<f64>() * total < up {
            i += 1;
            infections += 1;
            sink.event(t, EventKind::Arrival, 1);
        } else {
            i -= 1;
            sink.event(t, EventKind::Expiration, 1);
        }
    }
    let up = (p.baseline + p.jump * i as f64) * (pop - i as f64).max(0.0) / pop;
    Ok(EndState { q: i, arrivals: infections, intensity: up })
}

pub fn simulate_sis(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
) -> Result<SamplePath, SimError> {
    simulate_sis_opt(p, horizon, spec, &SimOptions::default())
}

pub fn simulate_sis_opt(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<SamplePath, SimError> {
    validate_params(p, ModelKind::Sis)?;
    let mut sink = LogSink::default();
    sis_core(p, horizon, &mut spec.rng(), opts, &mut sink)?;
    Ok(SamplePath {
        model: ModelKind::Sis,
        params: p.clone(),
        horizon,
        seed: spec.seed,
        stream_id: spec.stream_id,
        scale_n: 1,
        kernel: None,
        marks: vec![],
        events: sink.0,
    })
}

pub fn sis_end_state(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<EndState, SimError> {
    validate_params(p, ModelKind::Sis)?;
    sis_core(p, horizon, &mut spec.rng(), opts, &mut NullSink)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_death_decays_exponentially() {
        // eta* = alpha = 0 and I_0 = N: recoveries only, mean N e^{-beta t}.
        let pop = 200;
        let p = ModelParams::sis(0.0, 0.0, 1.0, pop).with_q0(pop);
        let reps = 3000;
        let mut total = 0u64;
        for s in 0..reps {
            let end =
                sis_end_state(&p, 1.0, RngStreamSpec::new(5, s), &SimOptions::default())
                    .unwrap();
            assert_eq!(end.arrivals, 0);
            total += end.q;
        }
        let mean = total as f64 / reps as f64;
        let expected = pop as f64 * (-1.0f64).exp();
        // sd per path ~ sqrt(N e^{-t}(1-e^{-t})) ~ 6.8
        assert!((mean - expected).abs() < 0.5, "mean {mean} vs {expected}");
    }

    #[test]
    fn infected_count_never_exceeds_population() {
        let p = ModelParams::sis(10.0, 2.0, 0.1, 30);
        let path = simulate_sis(&p, 30.0, RngStreamSpec::new(1, 0)).unwrap();
        let mut i = 0i64;
        let mut peak = 0i64;
        for e in &path.events {
            match e.kind {
                EventKind::Arrival => i += 1,
                EventKind::Expiration => i -= 1,
                EventKind::Block => {}
            }
            peak = peak.max(i);
            assert!(i >= 0);
        }
        assert!(peak <= 30);
        // With weak recovery the epidemic should saturate most of the pool.
        assert!(peak > 20, "peak {peak}");
    }

    #[test]
    fn deterministic_per_stream() {
        let p = ModelParams::sis(10.0, 2.0, 3.0, 100);
        let spec = RngStreamSpec::new(77, 8);
        let a = simulate_sis(&p, 5.0, spec).unwrap();
        let b = simulate_sis(&p, 5.0, spec).unwrap();
        assert_eq!(a.events, b.events);
    }
}
