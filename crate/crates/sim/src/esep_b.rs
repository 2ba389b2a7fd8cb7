//! ESEP with a finite capacity c. The offered arrival intensity is always
//! `eta* + alpha Q`; attempts made while Q = c are logged as blocks and
//! change nothing.

use crate::error::SimError;
use crate::options::SimOptions;
use crate::sink::{EventSink, LogSink, NullSink};
use eseplab_core::{
    validate_params, EventKind, ModelKind, ModelParams, RngStreamSpec, SamplePath,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

/// Counts of offered, admitted, and blocked arrivals plus the end state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockTally {
    pub admitted: u64,
    pub blocked: u64,
    pub q: u64,
}

impl BlockTally {
    pub fn offered(&self) -> u64 {
        self.admitted + self.blocked
    }

    pub fn blocked_fraction(&self) -> f64 {
        if self.offered() == 0 {
            0.0
        } else {
            self.blocked as f64 / self.offered() as f64
        }
    }
}

pub(crate) fn esep_b_core<S: EventSink>(
    p: &ModelParams,
    horizon: f64,
    rng: &mut ChaCha8Rng,
    opts: &SimOptions,
    sink: &mut S,
) -> Result<BlockTally, SimError> {
    let cap = p.capacity.expect("validated");
    let mut t = 0.0;
    let mut q = p.q0;
    let mut tally = BlockTally { admitted: 0, blocked: 0, q };
    let mut events = 0u64;
    loop {
        let offered = p.baseline + p.jump * q as f64;
        let total = offered + p.expire_rate * q as f64;
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
        if rng.gen::<f64>() * total < offered {
            if q == cap {
                tally.blocked += 1;
                sink.event(t, EventKind::Block, 1);
            } else {
                q += 1;
                tally.admitted += 1;
                sink.event(t, EventKind::Arrival, 1);
            }
        } else {
            q -= 1;
            sink.event(t, EventKind::Expiration, 1);
        }
    }
    tally.q = q;
    Ok(tally)
}

pub fn simulate_esep_b(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
) -> Result<SamplePath, SimError> {
    simulate_esep_b_opt(p, horizon, spec, &SimOptions::default())
}

pub fn simulate_esep_b_opt(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<SamplePath, SimError> {
    validate_params(p, ModelKind::EsepB)?;
    let mut sink = LogSink::default();
    esep_b_core(p, horizon, &mut spec.rng(), opts, &mut sink)?;
    Ok(SamplePath {
        model: ModelKind::EsepB,
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

pub fn esep_b_end_state(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<BlockTally, SimError> {
    validate_params(p, ModelKind::EsepB)?;
    esep_b_core(p, horizon, &mut spec.rng(), opts, &mut NullSink)
}

#[cfg(test)]
mod tests {
    use super::*;
    use eseplab_core::reconstruct_state;

    fn params() -> ModelParams {
        ModelParams::esep_b(5.0, 2.0, 3.0, 4)
    }

    #[test]
    fn active_count_respects_capacity_and_blocks_only_at_it() {
        let path = simulate_esep_b(&params(), 50.0, RngStreamSpec::new(4, 0)).unwrap();
        assert!(path.block_count() > 0, "expected at least one block in 50 time units");
        for e in &path.events {
            let (q, _, _) = reconstruct_state(&path, e.time).unwrap();
            assert!(q <= 4);
            if e.kind == EventKind::Block {
                assert_eq!(q, 4, "block logged while below capacity");
            }
        }
    }

    #[test]
    fn capacity_zero_blocks_everything() {
        let p = ModelParams::esep_b(5.0, 2.0, 3.0, 0);
        let tally =
            esep_b_end_state(&p, 20.0, RngStreamSpec::new(6, 0), &SimOptions::default())
                .unwrap();
        assert_eq!(tally.admitted, 0);
        assert!(tally.blocked > 0);
        assert_eq!(tally.blocked_fraction(), 1.0);
    }

    #[test]
    fn deterministic_per_stream() {
        let spec = RngStreamSpec::new(123, 9);
        let a = simulate_esep_b(&params(), 10.0, spec).unwrap();
        let b = simulate_esep_b(&params(), 10.0, spec).unwrap();
        assert_eq!(a.events, b.events);
    }
}
