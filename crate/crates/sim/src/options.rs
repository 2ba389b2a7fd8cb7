use eseplab_core::{ModelKind, ModelParams};
use serde::{Deserialize, Serialize};

/// Runtime guards shared by all simulators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimOptions {
    /// Cap on recorded events per path; exceeding it aborts the run with an
    /// explosion guard error instead of spinning on an unstable process.
    pub max_events: u64,
}

impl Default for SimOptions {
    fn default() -> Self {
        SimOptions { max_events: 10_000_000 }
    }
}

/// Acceptance bookkeeping of a thinning simulator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinningStats {
    pub proposed: u64,
    pub accepted: u64,
}

impl ThinningStats {
    pub fn acceptance_rate(&self) -> f64 {
        if self.proposed == 0 {
            1.0
        } else {
            self.accepted as f64 / self.proposed as f64
        }
    }
}

/// Terminal state of a path: active count, arrivals on (0, horizon], and the
/// intensity right after the horizon's last event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndState {
    pub q: u64,
    pub arrivals: u64,
    pub intensity: f64,
}

/// Mean-relaxation time of the intensity, `1 / gap`, where the gap is the
/// exponential rate at which transients die out. `None` when the model has
/// no finite relaxation (unstable regime).
pub fn relaxation_time(p: &ModelParams, model: ModelKind) -> Option<f64> {
    let gap = match model {
        ModelKind::Esep | ModelKind::EsepB | ModelKind::Sis => p.expire_rate - p.jump,
        ModelKind::Hawkes => p.decay_rate - p.jump,
        ModelKind::Hesep => p.expire_rate + p.decay_rate - p.jump,
        ModelKind::Ngesep => {
            let mean = p.duration_law.as_ref()?.mean();
            (1.0 - p.jump * mean) / mean
        }
    };
    (gap > 0.0).then(|| 1.0 / gap)
}

/// Horizon after which the transient is negligible: twenty relaxation times.
pub fn default_burn_in(p: &ModelParams, model: ModelKind) -> Option<f64> {
    relaxation_time(p, model).map(|r| 20.0 * r)
}
