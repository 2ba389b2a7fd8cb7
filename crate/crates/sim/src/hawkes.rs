//! Ogata thinning for marked Hawkes processes
//! `lambda_t = lambda* + sum_{A_i <= t} M_i g(t - A_i)`.
//!
//! The kernel must be non-increasing, so the intensity right after the most
//! recent event bounds the intensity until the next one; the bound is
//! refreshed after every proposal. Kernels of exact exponential shape get an
//! O(1) state recursion; everything else sums over past arrivals.

use crate::error::SimError;
use crate::options::{EndState, SimOptions, ThinningStats};
use crate::sink::{EventSink, LogSink, NullSink};
use eseplab_core::{
    validate_params, EventKind, Kernel, KernelSpec, ModelKind, ModelParams, RngStreamSpec,
    SamplePath,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};

fn kernel_is_nonincreasing(kernel: &Kernel) -> bool {
    match kernel {
        Kernel::Exponential { .. } => true,
        Kernel::PowerLaw { p, .. } => *p > 0.0,
        Kernel::TailOfDuration { .. } => true,
    }
}

enum State {
    /// Kernel is `scale * exp(-rate x)`: track the summed excitation.
    ExpShape { excess: f64, scale: f64, rate: f64 },
    /// General kernel: keep past arrivals and their marks.
    General { arrivals: Vec<(f64, f64)>, base_excess: f64 },
}

impl State {
    fn intensity(&self, kernel: &Kernel, baseline: f64, t: f64) -> f64 {
        match self {
            State::ExpShape { excess, .. } => baseline + excess,
            State::General { arrivals, base_excess } => {
                let g0 = kernel.value(0.0);
                let mut v = baseline;
                if *base_excess > 0.0 && g0 > 0.0 {
                    v += base_excess / g0 * kernel.value(t);
                }
                for &(a, m) in arrivals {
                    v += m * kernel.value(t - a);
                }
                v
            }
        }
    }

    fn advance(&mut self, dt: f64) {
        if let State::ExpShape { excess, rate, .. } = self {
            *excess *= (-*rate * dt).exp();
        }
    }

    fn arrive(&mut self, t: f64, mark: f64) {
        match self {
            State::ExpShape { excess, scale, .. } => *excess += mark * *scale,
            State::General { arrivals, .. } => arrivals.push((t, mark)),
        }
    }
}

pub(crate) fn hawkes_core<S: EventSink>(
    p: &ModelParams,
    spec: &KernelSpec,
    horizon: f64,
    rng: &mut ChaCha8Rng,
    opts: &SimOptions,
    sink: &mut S,
    marks_out: Option<&mut Vec<f64>>,
) -> Result<(EndState, ThinningStats), SimError> {
    if !kernel_is_nonincreasing(&spec.kernel) {
        return Err(SimError::NonMonotoneKernel);
    }
    spec.validate().map_err(SimError::Core)?;
    let excess0 = p.intensity0 - p.baseline;
    let mut state = match spec.kernel.exp_decay_shape() {
        Some((scale, rate)) => State::ExpShape { excess: excess0, scale, rate },
        None => {
            if excess0 > 1e-12 && spec.kernel.value(0.0) <= 0.0 {
                return Err(SimError::Unsupported(
                    "initial excess intensity requires a kernel with g(0) > 0".into(),
                ));
            }
            State::General { arrivals: Vec::new(), base_excess: excess0 }
        }
    };

    let mut t = 0.0;
    let mut arrivals = 0u64;
    let mut stats = ThinningStats::default();
    let mut bound = p.baseline + excess0;
    let proposal_cap = opts.max_events.saturating_mul(20).saturating_add(10_000);
    let mut marks_sink = marks_out;

    loop {
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
        state.advance(dt);
        let lambda = state.intensity(&spec.kernel, p.baseline, t);
        if rng.gen::<f64>() * bound <= lambda {
            let mark = spec.mark_law.sample(rng);
            state.arrive(t, mark);
            arrivals += 1;
            stats.accepted += 1;
            if arrivals > opts.max_events {
                return Err(SimError::ExplosionGuard { events: arrivals, cap: opts.max_events });
            }
            sink.event(t, EventKind::Arrival, 1);
            if let Some(ms) = marks_sink.as_deref_mut() {
                ms.push(mark);
            }
            bound = state.intensity(&spec.kernel, p.baseline, t);
        } else {
            // The kernel is non-increasing, so the current intensity already
            // bounds the future until the next arrival.
            bound = lambda;
        }
    }
    // Decay the excitation the rest of the way so the reported intensity is
    // exactly lambda(horizon).
    if horizon > t {
        state.advance(horizon - t);
    }
    let intensity = state.intensity(&spec.kernel, p.baseline, horizon);
    Ok((EndState { q: 0, arrivals, intensity }, stats))
}

pub fn simulate_hawkes(
    p: &ModelParams,
    kernel: &KernelSpec,
    horizon: f64,
    spec: RngStreamSpec,
) -> Result<SamplePath, SimError> {
    simulate_hawkes_opt(p, kernel, horizon, spec, &SimOptions::default())
}

/// Exponential-kernel convenience: `g(x) = jump * exp(-decay x)`, unit marks.
pub fn simulate_hawkes_exp(
    p: &ModelParams,
    horizon: f64,
    spec: RngStreamSpec,
) -> Result<SamplePath, SimError> {
    let kernel = KernelSpec::exponential(p.jump, p.decay_rate);
    simulate_hawkes_opt(p, &kernel, horizon, spec, &SimOptions::default())
}

pub fn simulate_hawkes_opt(
    p: &ModelParams,
    kernel: &KernelSpec,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<SamplePath, SimError> {
    validate_params(p, ModelKind::Hawkes)?;
    let mut sink = LogSink::default();
    let mut marks = Vec::new();
    hawkes_core(p, kernel, horizon, &mut spec.rng(), opts, &mut sink, Some(&mut marks))?;
    Ok(SamplePath {
        model: ModelKind::Hawkes,
        params: p.clone(),
        horizon,
        seed: spec.seed,
        stream_id: spec.stream_id,
        scale_n: 1,
        kernel: Some(kernel.clone()),
        marks,
        events: sink.0,
    })
}

/// Terminal intensity and arrival count; no log.
pub fn hawkes_end_state(
    p: &ModelParams,
    kernel: &KernelSpec,
    horizon: f64,
    spec: RngStreamSpec,
    opts: &SimOptions,
) -> Result<EndState, SimError> {
    validate_params(p, ModelKind::Hawkes)?;
    let (end, _) = hawkes_core(p, kernel, horizon, &mut spec.rng(), opts, &mut NullSink, None)?;
    Ok(end)
}

#[cfg(test)]
mod tests {
    use super::*;
    use eseplab_core::{reconstruct_state, DurationLaw, MarkLaw};

    fn params() -> ModelParams {
        ModelParams::hawkes(10.0, 2.0, 3.0)
    }

    #[test]
    fn deterministic_per_stream() {
        let spec = RngStreamSpec::new(5, 9);
        let a = simulate_hawkes_exp(&params(), 2.0, spec).unwrap();
        let b = simulate_hawkes_exp(&params(), 2.0, spec).unwrap();
        assert_eq!(a.events, b.events);
        assert_eq!(a.marks, b.marks);
    }

    #[test]
    fn end_intensity_matches_reconstruction() {
        let spec = RngStreamSpec::new(11, 2);
        let path = simulate_hawkes_exp(&params(), 2.0, spec).unwrap();
        let end = hawkes_end_state(
            &params(),
            &KernelSpec::exponential(2.0, 3.0),
            2.0,
            spec,
            &SimOptions::default(),
        )
        .unwrap();
        let (_, n, intensity) = reconstruct_state(&path, 2.0).unwrap();
        assert_eq!(n, end.arrivals);
        assert!((intensity - end.intensity).abs() < 1e-9, "{intensity} vs {}", end.intensity);
    }

    #[test]
    fn tail_kernel_mean_count_matches_linear_ode() {
        // TailOfDuration(Exp(2)) is the kernel 1 * exp(-2x): a Hawkes process
        // with unit jump and decay 2, so E[N_t] solves the usual linear ODE.
        let p = ModelParams::hawkes(5.0, 1.0, 2.0);
        let tail = KernelSpec::new(
            Kernel::TailOfDuration { law: DurationLaw::Exponential { rate: 2.0 } },
            MarkLaw::Deterministic { value: 1.0 },
        );
        let reps = 4000;
        let mut total = 0u64;
        for i in 0..reps {
            let end = hawkes_end_state(
                &p,
                &tail,
                4.0,
                RngStreamSpec::new(77, i),
                &SimOptions::default(),
            )
            .unwrap();
            total += end.arrivals;
        }
        let mean = total as f64 / reps as f64;
        // Stationary mean intensity 5 * 2 / (2 - 1) = 10 and spectral gap 1:
        // E[N_4] = 10 * 4 + (5 - 10)(1 - e^{-4}).
        let expected = 40.0 - 5.0 * (1.0 - (-4.0f64).exp());
        assert!((mean - expected).abs() < 0.8, "mean {mean} vs {expected}");
    }

    #[test]
    fn power_law_kernel_runs_and_rejects_nonmonotone() {
        let p = ModelParams::hawkes(2.0, 0.5, 1.0);
        let pl = KernelSpec::new(
            Kernel::PowerLaw { k: 0.5, c: 1.0, p: 2.0 },
            MarkLaw::Deterministic { value: 1.0 },
        );
        let path = simulate_hawkes(&p, &pl, 5.0, RngStreamSpec::new(8, 0)).unwrap();
        assert!(path.kernel.is_some());
        let bad = KernelSpec::new(
            Kernel::PowerLaw { k: 0.5, c: 1.0, p: -1.0 },
            MarkLaw::Deterministic { value: 1.0 },
        );
        assert!(matches!(
            simulate_hawkes(&p, &bad, 5.0, RngStreamSpec::new(8, 0)),
            Err(SimError::NonMonotoneKernel)
        ));
    }

    #[test]
    fn explosion_guard_fires_for_supercritical_kernel() {
        let p = ModelParams::hawkes(5.0, 3.0, 1.0);
        let opts = SimOptions { max_events: 1_000 };
        let r = simulate_hawkes_opt(
            &p,
            &KernelSpec::exponential(3.0, 1.0),
            1e9,
            RngStreamSpec::new(2, 0),
            &opts,
        );
        assert!(matches!(r, Err(SimError::ExplosionGuard { .. })));
    }

    #[test]
    fn exponential_marks_are_recorded() {
        let p = ModelParams::hawkes(10.0, 2.0, 4.0);
        let spec = KernelSpec::new(
            Kernel::Exponential { jump: 2.0, decay: 4.0 },
            MarkLaw::Exponential { mean: 1.0 },
        );
        let path = simulate_hawkes(&p, &spec, 3.0, RngStreamSpec::new(21, 0)).unwrap();
        assert_eq!(path.marks.len(), path.arrival_count() as usize);
        assert!(path.marks.iter().all(|&m| m > 0.0));
    }
}
