//! Exact competing-clocks simulation of the batched, general-duration model:
//! arrivals occur at rate `eta* + (alpha / n) Q`, each arrival admits an
//! i.i.d. batch of actives, and every active keeps its own duration drawn
//! from the duration law.
//!
//! Pending expirations live in a min-heap of absolute deadlines. Because the
//! arrival clock is exponential with a rate that is constant between events,
//! redrawing it after every event is exact by memorylessness; durations are
//! arbitrary and never redrawn. When an expiration and the arrival candidate
//! tie, the expiration is processed first (ties have probability zero and
//! the rule only pins down determinism).

use crate::error::SimError;
use crate::options::{EndState, SimOptions};
use crate::sink::{EventSink, LogSink, NullSink};
use eseplab_core::{
    validate_params, EventKind, ModelKind, ModelParams, RngStreamSpec, SamplePath,
};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

#[derive(Debug, PartialEq)]
struct Deadline {
    time: f64,
    seq: u64,
}

impl Eq for Deadline {}

impl PartialOrd for Deadline {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Deadline {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.time.total_cmp(&other.time).then(self.seq.cmp(&other.seq))
    }
}

pub(crate) fn ngesep_core<S: EventSink>(
    p: &ModelParams,
    scale_n: u64,
    horizon: f64,
    rng: &mut ChaCha8Rng,
    opts: &SimOptions,
    sink: &mut S,
) -> Result<EndState, SimError> {
    let batch_law = p.batch_law.as_ref().expect("validated");
    let duration_law = p.duration_law.as_ref().expect("validated");
    let per_active_jump = p.jump / scale_n as f64;

    let mut heap: BinaryHeap<Reverse<Deadline>> = BinaryHeap::new();
    let mut seq = 0u64;
    let push = |heap: &mut BinaryHeap<Reverse<Deadline>>, seq: &mut u64, time: f64| {
        heap.push(Reverse(Deadline { time, seq: *seq }));
        *seq += 1;
    };

    // Initial actives get fresh full durations drawn at time zero.
    for _ in 0..p.q0 {
        let d = duration_law.sample(rng);
        push(&mut heap, &mut seq, d);
    }

    let mut t = 0.0;
    let mut q = p.q0;
    let mut arrivals = 0u64;
    let mut events = 0u64;
    loop {
        let rate = p.baseline + per_active_jump * q as f64;
        let t_arr = if rate > 0.0 {
            t + Exp::new(rate).unwrap().sample(rng)
        } else {
            f64::INFINITY
        };
        let next_expiry = heap.peek().map(|Reverse(d)| d.time).unwrap_or(f64::INFINITY);

        if next_expiry < t_arr {
            if next_expiry > horizon {
                break;
            }
            t = next_expiry;
            heap.pop();
            q -= 1;
            events += 1;
            sink.event(t, EventKind::Expiration, 1);
        } else {
            if t_arr > horizon {
                break;
            }
            t = t_arr;
            let b = batch_law.sample(rng);
            for _ in 0..b {
                let d = duration_law.sample(rng);
                push(&mut heap, &mut seq, t + d);
            }
            q += b;
            arrivals += 1;
            events += 1;
            sink.event(t, EventKind::Arrival, b);
        }
        if events > opts.max_events {
            return Err(SimError::ExplosionGuard { events, cap: opts.max_events });
        }
    }
    Ok(EndState { q, arrivals, intensity: p.baseline + per_active_jump * q as f64 })
}

pub fn simulate_ngesep(
    p: &ModelParams,
    scale_n: u64,
    horizon: f64,
    spec: RngStreamSpec,
) -> Result<SamplePath, SimError> {
    simulate_ngesep_opt(p, scale_n, horizon, spec, &SimOptions::default())
}

pub fn simulate_ngesep_opt(
    p: &ModelParams,
    scale_n: u64,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<SamplePath, SimError> {
    validate_params(p, ModelKind::Ngesep)?;
    check_scale(scale_n)?;
    let mut sink = LogSink::default();
    ngesep_core(p, scale_n, horizon, &mut spec.rng(), opts, &mut sink)?;
    Ok(SamplePath {
        model: ModelKind::Ngesep,
        params: p.clone(),
        horizon,
        seed: spec.seed,
        stream_id: spec.stream_id,
        scale_n,
        kernel: None,
        marks: vec![],
        events: sink.0,
    })
}

pub fn ngesep_end_state(
    p: &ModelParams,
    scale_n: u64,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<EndState, SimError> {
    validate_params(p, ModelKind::Ngesep)?;
    check_scale(scale_n)?;
    ngesep_core(p, scale_n, horizon, &mut spec.rng(), opts, &mut NullSink)
}

fn check_scale(scale_n: u64) -> Result<(), SimError> {
    if scale_n == 0 {
        Err(SimError::Unsupported("batch scale n must be at least 1".into()))
    } else {
        Ok(())
    }
}
