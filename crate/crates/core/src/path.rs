//! Event logs and state reconstruction.

use crate::error::CoreError;
use crate::law::KernelSpec;
use crate::params::{ModelKind, ModelParams};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// An accepted arrival epoch; `batch` actives enter (1 for plain models).
    Arrival,
    /// One active unit leaves (expiry, recovery, or departure).
    Expiration,
    /// An arrival attempt refused at capacity (ESEP-B only); state unchanged.
    Block,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Arrival => "arrival",
            EventKind::Expiration => "expiration",
            EventKind::Block => "block",
        }
    }

    pub fn parse(s: &str) -> Result<Self, CoreError> {
        match s {
            "arrival" => Ok(EventKind::Arrival),
            "expiration" => Ok(EventKind::Expiration),
            "block" => Ok(EventKind::Block),
            other => Err(CoreError::Parse(format!("unknown event kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub time: f64,
    pub kind: EventKind,
    pub batch: u64,
}

impl Event {
    pub fn new(time: f64, kind: EventKind, batch: u64) -> Self {
        Event { time, kind, batch }
    }
}

/// A simulated trajectory: the generating parameters, the RNG coordinates,
/// and the time-ordered event log. `marks` is parallel to the arrival events
/// for marked Hawkes paths and empty otherwise. `scale_n` is the batch scale
/// of an n-GESEP run (1 for everything else); the per-active intensity jump
/// is `params.jump / scale_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePath {
    pub model: ModelKind,
    pub params: ModelParams,
    pub horizon: f64,
    pub seed: u64,
    pub stream_id: u64,
    #[serde(default = "one")]
    pub scale_n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<KernelSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marks: Vec<f64>,
    pub events: Vec<Event>,
}

fn one() -> u64 {
    1
}

impl SamplePath {
    pub fn arrival_count(&self) -> u64 {
        self.events.iter().filter(|e| e.kind == EventKind::Arrival).count() as u64
    }

    pub fn block_count(&self) -> u64 {
        self.events.iter().filter(|e| e.kind == EventKind::Block).count() as u64
    }
}

/// State of a path at a query time: active count, cumulative event count, and
/// conditional intensity, all right-continuous in `t`.
pub fn reconstruct_state(path: &SamplePath, t: f64) -> Result<(u64, u64, f64), CoreError> {
    if !(0.0..=path.horizon).contains(&t) || t.is_nan() {
        return Err(CoreError::TimeOutOfRange { t, horizon: path.horizon });
    }
    let p = &path.params;
    let mut q = p.q0 as i64;
    let mut n = p.n0;
    for e in &path.events {
        if e.time > t {
            break;
        }
        match e.kind {
            EventKind::Arrival => {
                q += e.batch as i64;
                n += 1;
            }
            EventKind::Expiration => q -= 1,
            EventKind::Block => {}
        }
    }
    if q < 0 {
        return Err(CoreError::Parse(format!(
            "event log drives active count negative at t = {t}"
        )));
    }
    let q = q as u64;
    let intensity = match path.model {
        ModelKind::Esep | ModelKind::EsepB => p.affine_intensity(q),
        ModelKind::Ngesep => p.baseline + p.jump / path.scale_n as f64 * q as f64,
        ModelKind::Sis => {
            let pop = p.population.unwrap_or(1) as f64;
            let i = q as f64;
            (p.baseline + p.jump * i) * (pop - i).max(0.0) / pop
        }
        ModelKind::Hawkes => hawkes_intensity(path, t)?,
        ModelKind::Hesep => hesep_intensity(path, t),
    };
    Ok((q, n, intensity))
}

fn hawkes_intensity(path: &SamplePath, t: f64) -> Result<f64, CoreError> {
    let spec = path.kernel.as_ref().ok_or(CoreError::MissingField {
        model: "hawkes",
        field: "kernel",
    })?;
    let p = &path.params;
    // Initial excess intensity rides the same kernel shape, normalized by
    // g(0); only meaningful for kernels with g(0) > 0, which validation of
    // intensity0 > baseline enforces upstream.
    let g0 = spec.kernel.value(0.0);
    let mut v = p.baseline;
    let excess = p.intensity0 - p.baseline;
    if excess > 0.0 && g0 > 0.0 {
        v += excess / g0 * spec.kernel.value(t);
    }
    let mut arrival_idx = 0usize;
    for e in &path.events {
        if e.time > t {
            break;
        }
        if e.kind == EventKind::Arrival {
            let mark = path.marks.get(arrival_idx).copied().unwrap_or(1.0);
            v += mark * spec.kernel.value(t - e.time);
            arrival_idx += 1;
        }
    }
    Ok(v)
}

/// Replay the HESEP intensity: continuous reversion toward the baseline at
/// rate beta between events, +alpha at arrivals, and at each expiry a drop of
/// the current per-active share (nu - nu*) / Q.
fn hesep_intensity(path: &SamplePath, t: f64) -> f64 {
    let p = &path.params;
    let beta = p.decay_rate;
    let mut nu = p.intensity0;
    let mut q = p.q0 as f64;
    let mut now = 0.0;
    for e in &path.events {
        if e.time > t {
            break;
        }
        nu = p.baseline + (nu - p.baseline) * (-beta * (e.time - now)).exp();
        now = e.time;
        match e.kind {
            EventKind::Arrival => {
                nu += p.jump * e.batch as f64;
                q += e.batch as f64;
            }
            EventKind::Expiration => {
                if q > 0.0 {
                    nu -= (nu - p.baseline) / q;
                    q -= 1.0;
                }
            }
            EventKind::Block => {}
        }
    }
    p.baseline + (nu - p.baseline) * (-beta * (t - now)).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::law::{Kernel, MarkLaw};

    fn toy_esep_path() -> SamplePath {
        SamplePath {
            model: ModelKind::Esep,
            params: ModelParams::esep(10.0, 2.0, 3.0),
            horizon: 5.0,
            seed: 1,
            stream_id: 0,
            scale_n: 1,
            kernel: None,
            marks: vec![],
            events: vec![
                Event::new(0.5, EventKind::Arrival, 1),
                Event::new(1.0, EventKind::Arrival, 1),
                Event::new(1.5, EventKind::Expiration, 1),
                Event::new(3.0, EventKind::Expiration, 1),
            ],
        }
    }

    #[test]
    fn reconstruction_is_right_continuous_and_affine() {
        let path = toy_esep_path();
        assert_eq!(reconstruct_state(&path, 0.0).unwrap(), (0, 0, 10.0));
        assert_eq!(reconstruct_state(&path, 0.5).unwrap(), (1, 1, 12.0));
        assert_eq!(reconstruct_state(&path, 0.75).unwrap(), (1, 1, 12.0));
        assert_eq!(reconstruct_state(&path, 1.0).unwrap(), (2, 2, 14.0));
        assert_eq!(reconstruct_state(&path, 1.5).unwrap(), (1, 2, 12.0));
        assert_eq!(reconstruct_state(&path, 5.0).unwrap(), (0, 2, 10.0));
    }

    #[test]
    fn out_of_range_queries_are_rejected() {
        let path = toy_esep_path();
        assert!(matches!(
            reconstruct_state(&path, 5.1),
            Err(CoreError::TimeOutOfRange { .. })
        ));
        assert!(matches!(
            reconstruct_state(&path, -0.1),
            Err(CoreError::TimeOutOfRange { .. })
        ));
    }

    #[test]
    fn hawkes_intensity_sums_marked_kernels() {
        let mut path = toy_esep_path();
        path.model = ModelKind::Hawkes;
        path.params = ModelParams::hawkes(10.0, 2.0, 3.0);
        path.kernel = Some(KernelSpec::new(
            Kernel::Exponential { jump: 2.0, decay: 3.0 },
            MarkLaw::Deterministic { value: 1.0 },
        ));
        path.marks = vec![1.0, 2.0];
        path.events = vec![
            Event::new(0.5, EventKind::Arrival, 1),
            Event::new(1.0, EventKind::Arrival, 1),
        ];
        let (_, n, v) = reconstruct_state(&path, 2.0).unwrap();
        assert_eq!(n, 2);
        let expected = 10.0 + 2.0 * (-3.0f64 * 1.5).exp() + 2.0 * 2.0 * (-3.0f64 * 1.0).exp();
        assert!((v - expected).abs() < 1e-12);
    }

    #[test]
    fn hesep_expiry_returns_intensity_to_baseline_when_last_active_leaves() {
        let mut path = toy_esep_path();
        path.model = ModelKind::Hesep;
        path.params = ModelParams::hesep(10.0, 2.0, 1.0, 3.0);
        path.events = vec![
            Event::new(1.0, EventKind::Arrival, 1),
            Event::new(2.0, EventKind::Expiration, 1),
        ];
        let (q, _, v) = reconstruct_state(&path, 2.0).unwrap();
        assert_eq!(q, 0);
        assert!((v - 10.0).abs() < 1e-12);
        // Between events the excess decays continuously.
        let (_, _, v_mid) = reconstruct_state(&path, 1.5).unwrap();
        let expected = 10.0 + 2.0 * (-1.0f64 * 0.5).exp();
        assert!((v_mid - expected).abs() < 1e-12);
    }

    #[test]
    fn sis_intensity_carries_susceptible_fraction() {
        let mut path = toy_esep_path();
        path.model = ModelKind::Sis;
        path.params = ModelParams::sis(10.0, 2.0, 3.0, 100).with_q0(0);
        path.events = vec![Event::new(0.5, EventKind::Arrival, 1)];
        let (_, _, v) = reconstruct_state(&path, 1.0).unwrap();
        assert!((v - (10.0 + 2.0) * 99.0 / 100.0).abs() < 1e-12);
    }
}
