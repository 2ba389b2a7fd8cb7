//! Thinning simulation of the hybrid ESEP/Hawkes model: between events the
//! intensity reverts continuously toward the baseline at rate beta, each
//! arrival lifts it by alpha and adds an active that expires at rate mu, and
//! each expiry removes the mean per-active excess `(nu - nu*) / Q`.
//!
//! With the per-active shares all equal at every instant (which the mean
//! down-jump preserves), the total event rate is `nu + mu Q`; since `nu` is
//! non-increasing between events and the expiry part is constant, that value
//! right after an event is a valid thinning bound. Setting mu = 0 recovers
//! the exponential Hawkes process exactly; beta = 0 recovers the ESEP.

use crate::error::SimError;
use crate::options::{EndState, SimOptions, ThinningStats};
use crate::sink::{EventSink, LogSink, NullSink};
use eseplab_core::{
    validate_params, EventKind, ModelKind, ModelParams, RngStreamSpec, SamplePath,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

pub(crate) fn hesep_core<S: EventSink>(
    p: &ModelParams,
    horizon: f64,
    rng: &mut ChaCha8Rng,
    opts: &SimOptions,
    sink: &mut S,
) -> Result<(EndState, ThinningStats), SimError> {
    let beta = p.decay_rate;
    let mu = p.expire_rate;
    // Decay is always evaluated from the last event, never chained through
    // rejected proposals, so replaying the event log reproduces the
    // simulator's intensity bit for bit.
    let mut t = 0.0;
    let mut t_event = 0.0;
    let mut nu_event = p.intensity0;
    let mut nu_now = p.intensity0;
    let mut q = p.q0;
    let mut arrivals = 0u64;
    let mut stats = ThinningStats::default();
    let proposal_cap = opts.max_events.saturating_mul(20).saturating_add(10_000);

    loop {
        let bound = nu_now + mu * q as f64;
        if bound <= 0.0 {
            break;
        }
        let dt = Exp::new(bound).unwrap().sample(rng);
        if t + dt > horizon {
            break;
        }
        t += dt;
        stats.proposed += 1;
        if stats.proposed > proposal_cap {
            return Err(SimError::ExplosionGuard { events: stats.proposed, cap: proposal_cap });
        }
        let nu_cand = p.baseline + (nu_event - p.baseline) * (-beta * (t - t_event)).exp();
        let u = rng.gen::<f64>() * bound;
        if u < nu_cand {
            nu_event = nu_cand + p.jump;
            t_event = t;
            nu_now = nu_event;
            q += 1;
            arrivals += 1;
            stats.accepted += 1;
            if arrivals > opts.max_events {
                return Err(SimError::ExplosionGuard { events: arrivals, cap: opts.max_events });
            }
            sink.event(t, EventKind::Arrival, 1);
        } else if u < nu_cand + mu * q as f64 {
            // Expiry: drop the mean per-active share. With q = 1 this puts
            // the intensity exactly back at the baseline.
            nu_event = nu_cand - (nu_cand - p.baseline) / q as f64;
            t_event = t;
            nu_now = nu_event;
            q -= 1;
            stats.accepted += 1;
            sink.event(t, EventKind::Expiration, 1);
        } else {
            // Rejection: the intensity at the proposal tightens the bound.
            nu_now = nu_cand;
        }
    }
    // Revert the rest of the way to the horizon.
    let nu = p.baseline + (nu_event - p.baseline) * (-beta * (horizon - t_event)).exp();
    Ok((EndState { q, arrivals, intensity: nu }, stats))
}

pub fn simulate_hesep(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
) -> Result<SamplePath, SimError> {
    simulate_hesep_opt(p, horizon, spec, &SimOptions::default())
}

/// Run one path, streaming events into a caller-provided sink instead of a
/// log. Long-horizon consumers (ergodic averages, grid samplers) use this to
/// avoid storing the event history. Replaying the sink's events with the
/// documented decay rule reproduces the intensity exactly.
pub fn hesep_with_sink<S: EventSink>(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
    sink: &mut S,
) -> Result<EndState, SimError> {
    validate_params(p, ModelKind::Hesep)?;
    let (end, _) = hesep_core(p, horizon, &mut spec.rng(), opts, sink)?;
    Ok(end)
}

pub fn simulate_hesep_opt(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<SamplePath, SimError> {
    validate_params(p, ModelKind::Hesep)?;
    let mut sink = LogSink::default();
    hesep_core(p, horizon, &mut spec.rng(), opts, &mut sink)?;
    Ok(SamplePath {
        model: ModelKind::Hesep,
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

pub fn hesep_end_state(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<EndState, SimError> {
    validate_params(p, ModelKind::Hesep)?;
    let (end, _) = hesep_core(p, horizon, &mut spec.rng(), opts, &mut NullSink)?;
    Ok(end)
}
