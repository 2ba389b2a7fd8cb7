//! Model parameter records and validation.

use crate::error::CoreError;
use crate::law::{BatchLaw, DurationLaw};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Esep,
    Hawkes,
    Ngesep,
    Hesep,
    EsepB,
    Sis,
}

impl ModelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelKind::Esep => "esep",
            ModelKind::Hawkes => "hawkes",
            ModelKind::Ngesep => "ngesep",
            ModelKind::Hesep => "hesep",
            ModelKind::EsepB => "esep_b",
            ModelKind::Sis => "sis",
        }
    }
}

/// Restriction of `ModelKind` to the two models with a cluster
/// (branching-process) representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterModel {
    Esep,
    Hawkes,
}

impl ClusterModel {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClusterModel::Esep => "esep",
            ClusterModel::Hawkes => "hawkes",
        }
    }
}

/// One parameter record shared by every model in the family.
///
/// Field roles by model:
/// - ESEP / ESEP-B: `baseline` = eta*, `jump` = alpha (intensity jump per
///   arrival), `expire_rate` = beta (per-active expiry rate); ESEP-B also
///   needs `capacity`.
/// - Hawkes (exponential): `baseline` = lambda*, `jump` = alpha,
///   `decay_rate` = beta in `g(x) = alpha exp(-beta x)`. General kernels are
///   carried separately by a `KernelSpec`.
/// - n-GESEP: `baseline`, `jump` plus `batch_law` and `duration_law`; the
///   per-active jump is `jump / n` with the scale n supplied at simulation
///   time.
/// - HESEP: `baseline` = nu*, `jump` = alpha, `decay_rate` = beta (continuous
///   reversion), `expire_rate` = mu (per-active expiry).
/// - SIS: `baseline` = eta*, `jump` = alpha, `expire_rate` = beta (recovery),
///   `population` = N; `q0` is the initial infected count.
///
/// `q0`, `n0`, `intensity0` are the initial active count, initial event
/// count, and initial intensity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub baseline: f64,
    pub jump: f64,
    #[serde(default)]
    pub expire_rate: f64,
    #[serde(default)]
    pub decay_rate: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub capacity: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub batch_law: Option<BatchLaw>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_law: Option<DurationLaw>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub population: Option<u64>,
    #[serde(default)]
    pub q0: u64,
    #[serde(default)]
    pub n0: u64,
    pub intensity0: f64,
}

impl ModelParams {
    pub fn esep(baseline: f64, jump: f64, expire_rate: f64) -> Self {
        ModelParams {
            baseline,
            jump,
            expire_rate,
            decay_rate: 0.0,
            capacity: None,
            batch_law: None,
            duration_law: None,
            population: None,
            q0: 0,
            n0: 0,
            intensity0: baseline,
        }
    }

    pub fn hawkes(baseline: f64, jump: f64, decay_rate: f64) -> Self {
        ModelParams { decay_rate, expire_rate: 0.0, ..Self::esep(baseline, jump, 0.0) }
    }

    pub fn hesep(baseline: f64, jump: f64, decay_rate: f64, expire_rate: f64) -> Self {
        ModelParams { decay_rate, ..Self::esep(baseline, jump, expire_rate) }
    }

    pub fn esep_b(baseline: f64, jump: f64, expire_rate: f64, capacity: u64) -> Self {
        ModelParams { capacity: Some(capacity), ..Self::esep(baseline, jump, expire_rate) }
    }

    pub fn ngesep(baseline: f64, jump: f64, batch_law: BatchLaw, duration_law: DurationLaw) -> Self {
        ModelParams {
            batch_law: Some(batch_law),
            duration_law: Some(duration_law),
            ..Self::esep(baseline, jump, 0.0)
        }
    }

    pub fn sis(baseline: f64, jump: f64, expire_rate: f64, population: u64) -> Self {
        ModelParams { population: Some(population), ..Self::esep(baseline, jump, expire_rate) }
    }

    /// Set the initial active count, keeping `intensity0` affine-consistent
    /// (`baseline + jump * q0`). Suitable for the ESEP family; Hawkes/HESEP
    /// starts with excess intensity use `with_intensity0`.
    pub fn with_q0(mut self, q0: u64) -> Self {
        self.q0 = q0;
        self.intensity0 = self.baseline + self.jump * q0 as f64;
        self
    }

    pub fn with_n0(mut self, n0: u64) -> Self {
        self.n0 = n0;
        self
    }

    pub fn with_intensity0(mut self, intensity0: f64) -> Self {
        self.intensity0 = intensity0;
        self
    }

    /// Intensity at an active count, `baseline + jump * q` (divide the jump by
    /// the scale for batched models).
    pub fn affine_intensity(&self, q: u64) -> f64 {
        self.baseline + self.jump * q as f64
    }
}

/// Parameters that passed validation for a given model, with the stability
/// verdict (whether the process admits a steady state).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Validated {
    pub params: ModelParams,
    pub model: ModelKind,
    pub stable: bool,
}

/// Check positivity, per-model required fields, and affine consistency of the
/// initial intensity. Returns the record tagged with its stability flag:
/// beta > alpha for ESEP-like models, mu + beta > alpha for HESEP, kernel
/// mass < 1 for exponential Hawkes; SIS has a finite state space and is
/// always stable.
pub fn validate_params(p: &ModelParams, model: ModelKind) -> Result<Validated, CoreError> {
    // A zero jump degenerates to a Poisson-driven model and is allowed; only
    // negative jumps are rejected.
    if p.jump < 0.0 || !p.jump.is_finite() {
        return Err(CoreError::NonPositiveRate { field: "jump", value: p.jump });
    }
    if !p.baseline.is_finite() || p.baseline < 0.0 {
        return Err(CoreError::NonPositiveRate { field: "baseline", value: p.baseline });
    }
    // SIS tolerates a zero exogenous rate (pure-death runs); the self-exciting
    // models need a strictly positive baseline to ever leave the empty state.
    if p.baseline == 0.0 && model != ModelKind::Sis {
        return Err(CoreError::NonPositiveRate { field: "baseline", value: p.baseline });
    }
    for (field, value) in [("expire_rate", p.expire_rate), ("decay_rate", p.decay_rate)] {
        if value < 0.0 || !value.is_finite() {
            return Err(CoreError::NonPositiveRate { field, value });
        }
    }

    let stable = match model {
        ModelKind::Esep | ModelKind::EsepB => {
            require_affine(p)?;
            if model == ModelKind::EsepB {
                let cap = p.capacity.ok_or(CoreError::MissingField {
                    model: "esep_b",
                    field: "capacity",
                })?;
                if p.q0 > cap {
                    return Err(CoreError::Constraint(format!(
                        "q0 = {} exceeds capacity {}",
                        p.q0, cap
                    )));
                }
                // Finite capacity keeps the chain positive recurrent, but the
                // steady-state closed forms assume the stable regime.
            }
            p.expire_rate > p.jump
        }
        ModelKind::Hawkes => {
            if p.intensity0 < p.baseline {
                return Err(CoreError::Constraint(format!(
                    "intensity0 = {} below baseline {}",
                    p.intensity0, p.baseline
                )));
            }
            p.decay_rate > p.jump
        }
        ModelKind::Hesep => {
            if p.intensity0 < p.baseline {
                return Err(CoreError::Constraint(format!(
                    "intensity0 = {} below baseline {}",
                    p.intensity0, p.baseline
                )));
            }
            if p.expire_rate == 0.0 && p.decay_rate == 0.0 {
                return Err(CoreError::NonPositiveRate {
                    field: "expire_rate + decay_rate",
                    value: 0.0,
                });
            }
            p.expire_rate + p.decay_rate > p.jump
        }
        ModelKind::Ngesep => {
            let batch = p
                .batch_law
                .as_ref()
                .ok_or(CoreError::MissingField { model: "ngesep", field: "batch_law" })?;
            let duration = p
                .duration_law
                .as_ref()
                .ok_or(CoreError::MissingField { model: "ngesep", field: "duration_law" })?;
            batch.validate()?;
            duration.validate()?;
            if p.q0 == 0 && (p.intensity0 - p.baseline).abs() > affine_tol(p.baseline) {
                return Err(CoreError::AffineMismatch {
                    expected: p.baseline,
                    actual: p.intensity0,
                });
            }
            // With batch mean of order n and per-active jump alpha/n, the mean
            // offspring mass is alpha * E[duration].
            p.jump * duration.mean() < 1.0
        }
        ModelKind::Sis => {
            let pop = p
                .population
                .ok_or(CoreError::MissingField { model: "sis", field: "population" })?;
            if pop == 0 {
                return Err(CoreError::Constraint("population must be positive".into()));
            }
            if p.q0 > pop {
                return Err(CoreError::Constraint(format!(
                    "initial infected {} exceeds population {}",
                    p.q0, pop
                )));
            }
            true
        }
    };

    Ok(Validated { params: p.clone(), model, stable })
}

fn require_affine(p: &ModelParams) -> Result<(), CoreError> {
    let expected = p.affine_intensity(p.q0);
    if (p.intensity0 - expected).abs() > affine_tol(expected) {
        return Err(CoreError::AffineMismatch { expected, actual: p.intensity0 });
    }
    Ok(())
}

fn affine_tol(expected: f64) -> f64 {
    1e-9 * expected.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_esep_passes() {
        let v = validate_params(&ModelParams::esep(10.0, 2.0, 3.0), ModelKind::Esep).unwrap();
        assert!(v.stable);
        assert_eq!(v.model, ModelKind::Esep);
    }

    #[test]
    fn unstable_esep_is_flagged_not_rejected() {
        let v = validate_params(&ModelParams::esep(1.0, 2.0, 1.0), ModelKind::Esep).unwrap();
        assert!(!v.stable);
    }

    #[test]
    fn inconsistent_initial_intensity_is_rejected() {
        let p = ModelParams::esep(10.0, 2.0, 3.0).with_q0(1).with_intensity0(10.0);
        match validate_params(&p, ModelKind::Esep) {
            Err(CoreError::AffineMismatch { expected, actual }) => {
                assert!((expected - 12.0).abs() < 1e-12);
                assert!((actual - 10.0).abs() < 1e-12);
            }
            other => panic!("expected AffineMismatch, got {other:?}"),
        }
    }

    #[test]
    fn missing_fields_are_named() {
        let p = ModelParams::esep(5.0, 2.0, 3.0);
        match validate_params(&p, ModelKind::EsepB) {
            Err(CoreError::MissingField { field, .. }) => assert_eq!(field, "capacity"),
            other => panic!("{other:?}"),
        }
        match validate_params(&p, ModelKind::Sis) {
            Err(CoreError::MissingField { field, .. }) => assert_eq!(field, "population"),
            other => panic!("{other:?}"),
        }
        match validate_params(&p, ModelKind::Ngesep) {
            Err(CoreError::MissingField { field, .. }) => assert_eq!(field, "batch_law"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_jump_is_allowed_for_poisson_degeneration() {
        let v = validate_params(&ModelParams::esep(10.0, 0.0, 3.0), ModelKind::Esep).unwrap();
        assert!(v.stable);
    }

    #[test]
    fn negative_rates_are_rejected() {
        assert!(matches!(
            validate_params(&ModelParams::esep(10.0, -1.0, 3.0), ModelKind::Esep),
            Err(CoreError::NonPositiveRate { field: "jump", .. })
        ));
        assert!(matches!(
            validate_params(&ModelParams::esep(0.0, 1.0, 3.0), ModelKind::Esep),
            Err(CoreError::NonPositiveRate { field: "baseline", .. })
        ));
    }

    #[test]
    fn sis_allows_pure_death_runs() {
        let p = ModelParams::sis(0.0, 0.0, 1.0, 100).with_q0(100);
        let v = validate_params(&p, ModelKind::Sis).unwrap();
        assert!(v.stable);
    }

    #[test]
    fn hesep_stability_uses_combined_relaxation() {
        let p = ModelParams::hesep(1.0, 3.0, 2.0, 2.0);
        assert!(validate_params(&p, ModelKind::Hesep).unwrap().stable);
        let p = ModelParams::hesep(1.0, 5.0, 2.0, 2.0);
        assert!(!validate_params(&p, ModelKind::Hesep).unwrap().stable);
    }

    #[test]
    fn esep_b_capacity_bounds_initial_state() {
        let p = ModelParams::esep_b(5.0, 2.0, 3.0, 4).with_q0(5);
        assert!(validate_params(&p, ModelKind::EsepB).is_err());
        let p = ModelParams::esep_b(5.0, 2.0, 3.0, 4).with_q0(4);
        assert!(validate_params(&p, ModelKind::EsepB).is_ok());
    }
}
