//! Exact CTMC simulation of the ESEP: intensity `eta* + alpha Q`, each of the
//! Q actives expiring at rate `beta`.

use crate::error::SimError;
use crate::options::{EndState, SimOptions};
use crate::sink::{EventSink, LogSink, NullSink};
use eseplab_core::{
    validate_params, EventKind, ModelKind, ModelParams, RngStreamSpec, SamplePath,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

pub(crate) fn esep_core<S: EventSink>(
    p: &ModelParams,
    horizon: f64,
    rng: &mut ChaCha8Rng,
    opts: &SimOptions,
    sink: &mut S,
) -> Result<EndState, SimError> {
    let mut t = 0.0;
    let mut q = p.q0;
    let mut arrivals = 0u64;
    let mut events = 0u64;
    loop {
        let up = p.baseline + p.jump * q as f64;
        let total = up + p.expire_rate * q as f64;
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
            q += 1;
            arrivals += 1;
            sink.event(t, EventKind::Arrival, 1);
        } else {
            q -= 1;
            sink.event(t, EventKind::Expiration, 1);
        }
    }
    Ok(EndState { q, arrivals, intensity: p.affine_intensity(q) })
}

pub fn simulate_esep(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
) -> Result<SamplePath, SimError> {
    simulate_esep_opt(p, horizon, spec, &SimOptions::default())
}

pub fn simulate_esep_opt(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<SamplePath, SimError> {
    validate_params(p, ModelKind::Esep)?;
    let mut sink = LogSink::default();
    esep_core(p, horizon, &mut spec.rng(), opts, &mut sink)?;
    Ok(SamplePath {
        model: ModelKind::Esep,
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

/// Terminal state only; no event log is kept.
pub fn esep_end_state(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<EndState, SimError> {
    validate_params(p, ModelKind::Esep)?;
    esep_core(p, horizon, &mut spec.rng(), opts, &mut NullSink)
}
