//! Distribution primitives: activity-duration laws, batch-size laws, Hawkes
//! excitation kernels, and mark laws for marked Hawkes processes.

use crate::error::CoreError;
use rand::Rng;
use rand_distr::{Distribution, Exp, LogNormal};
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

/// Law of a single activity duration (the time an arrival stays active).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DurationLaw {
    Exponential { rate: f64 },
    Deterministic { value: f64 },
    Lognormal { mu: f64, sigma: f64 },
    Hyperexponential { weights: Vec<f64>, rates: Vec<f64> },
}

impl DurationLaw {
    pub fn validate(&self) -> Result<(), CoreError> {
        match self {
            DurationLaw::Exponential { rate } => positive("duration rate", *rate),
            DurationLaw::Deterministic { value } => positive("duration value", *value),
            DurationLaw::Lognormal { sigma, .. } => positive("duration sigma", *sigma),
            DurationLaw::Hyperexponential { weights, rates } => {
                if weights.is_empty() || weights.len() != rates.len() {
                    return Err(CoreError::Constraint(
                        "hyperexponential weights and rates must be nonempty and equal length"
                            .into(),
                    ));
                }
                for &w in weights {
                    if !(w > 0.0) {
                        return Err(CoreError::NonPositiveRate {
                            field: "duration weight",
                            value: w,
                        });
                    }
                }
                for &r in rates {
                    positive("duration rate", r)?;
                }
                Ok(())
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            DurationLaw::Exponential { rate } => Exp::new(*rate).unwrap().sample(rng),
            DurationLaw::Deterministic { value } => *value,
            DurationLaw::Lognormal { mu, sigma } => {
                LogNormal::new(*mu, *sigma).unwrap().sample(rng)
            }
            DurationLaw::Hyperexponential { weights, rates } => {
                let total: f64 = weights.iter().sum();
                let mut u = rng.gen::<f64>() * total;
                for (w, r) in weights.iter().zip(rates) {
                    if u < *w {
                        return Exp::new(*r).unwrap().sample(rng);
                    }
                    u -= w;
                }
                Exp::new(*rates.last().unwrap()).unwrap().sample(rng)
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            DurationLaw::Exponential { rate } => 1.0 / rate,
            DurationLaw::Deterministic { value } => *value,
            DurationLaw::Lognormal { mu, sigma } => (mu + 0.5 * sigma * sigma).exp(),
            DurationLaw::Hyperexponential { weights, rates } => {
                let total: f64 = weights.iter().sum();
                weights
                    .iter()
                    .zip(rates)
                    .map(|(w, r)| w / r)
                    .sum::<f64>()
                    / total
            }
        }
    }

    /// Complementary CDF `P(S > x)`.
    pub fn tail(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 1.0;
        }
        match self {
            DurationLaw::Exponential { rate } => (-rate * x).exp(),
            DurationLaw::Deterministic { value } => {
                if x < *value {
                    1.0
                } else {
                    0.0
                }
            }
            DurationLaw::Lognormal { mu, sigma } => {
                if x == 0.0 {
                    1.0
                } else {
                    0.5 * erfc((x.ln() - mu) / (sigma * std::f64::consts::SQRT_2))
                }
            }
            DurationLaw::Hyperexponential { weights, rates } => {
                let total: f64 = weights.iter().sum();
                weights
                    .iter()
                    .zip(rates)
                    .map(|(w, r)| w * (-r * x).exp())
                    .sum::<f64>()
                    / total
            }
        }
    }
}

/// Law of the batch size drawn at each arrival epoch of a batched process.
/// Support is the positive integers.
///
/// `Geometric { p }` has pmf `p (1-p)^(k-1)` on `k = 1, 2, ...` and mean
/// `1/p`, so a batch law "geometric with mean n" is `Geometric { p: 1/n }`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BatchLaw {
    DeterministicInt { n: u64 },
    Geometric { p: f64 },
}

impl BatchLaw {
    pub fn validate(&self) -> Result<(), CoreError> {
        match self {
            BatchLaw::DeterministicInt { n } => {
                if *n == 0 {
                    Err(CoreError::Constraint("batch size must be at least 1".into()))
                } else {
                    Ok(())
                }
            }
            BatchLaw::Geometric { p } => {
                if *p > 0.0 && *p <= 1.0 {
                    Ok(())
                } else {
                    Err(CoreError::Constraint(format!(
                        "geometric batch parameter must lie in (0, 1], got {p}"
                    )))
                }
            }
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match self {
            BatchLaw::DeterministicInt { n } => *n,
            BatchLaw::Geometric { p } => {
                if *p >= 1.0 {
                    return 1;
                }
                // Inversion: k = ceil(ln(1-U) / ln(1-p)) >= 1.
                let u: f64 = rng.gen();
                let k = ((1.0 - u).ln() / (1.0 - p).ln()).ceil();
                k.max(1.0) as u64
            }
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            BatchLaw::DeterministicInt { n } => *n as f64,
            BatchLaw::Geometric { p } => 1.0 / p,
        }
    }
}

/// Excitation kernel `g` of a (marked) Hawkes process with intensity
/// `lambda_t = lambda* + sum_{A_i <= t} M_i g(t - A_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Kernel {
    /// `g(x) = jump * exp(-decay x)`.
    Exponential { jump: f64, decay: f64 },
    /// `g(x) = k / (c + x)^p`.
    PowerLaw { k: f64, c: f64, p: f64 },
    /// `g(x) = P(S > x)` for a duration law; this is the kernel a batched
    /// ESEP converges to under batch scaling.
    TailOfDuration { law: DurationLaw },
}

impl Kernel {
    pub fn validate(&self) -> Result<(), CoreError> {
        match self {
            Kernel::Exponential { jump, decay } => {
                if *jump < 0.0 {
                    return Err(CoreError::NonPositiveRate {
                        field: "kernel jump",
                        value: *jump,
                    });
                }
                positive("kernel decay", *decay)
            }
            Kernel::PowerLaw { k, c, p } => {
                if *k < 0.0 {
                    return Err(CoreError::NonPositiveRate { field: "kernel k", value: *k });
                }
                positive("kernel c", *c)?;
                positive("kernel p", *p)
            }
            Kernel::TailOfDuration { law } => law.validate(),
        }
    }

    pub fn value(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        match self {
            Kernel::Exponential { jump, decay } => jump * (-decay * x).exp(),
            Kernel::PowerLaw { k, c, p } => k / (c + x).powf(*p),
            Kernel::TailOfDuration { law } => law.tail(x),
        }
    }

    /// Total mass `integral of g over [0, inf)`; infinite for heavy power laws.
    pub fn mass(&self) -> f64 {
        match self {
            Kernel::Exponential { jump, decay } => jump / decay,
            Kernel::PowerLaw { k, c, p } => {
                if *p > 1.0 {
                    k * c.powf(1.0 - p) / (p - 1.0)
                } else {
                    f64::INFINITY
                }
            }
            Kernel::TailOfDuration { law } => law.mean(),
        }
    }

    /// When the kernel is exactly `scale * exp(-rate x)` return `(scale, rate)`
    /// so simulators can use O(1) intensity recursions.
    pub fn exp_decay_shape(&self) -> Option<(f64, f64)> {
        match self {
            Kernel::Exponential { jump, decay } => Some((*jump, *decay)),
            Kernel::TailOfDuration { law: DurationLaw::Exponential { rate } } => {
                Some((1.0, *rate))
            }
            _ => None,
        }
    }
}

/// Law of the multiplicative marks of a marked Hawkes process. Under batch
/// scaling, deterministic batches of size n produce deterministic marks and
/// geometric batches with mean n produce exponential marks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MarkLaw {
    Deterministic { value: f64 },
    Exponential { mean: f64 },
}

impl MarkLaw {
    pub fn validate(&self) -> Result<(), CoreError> {
        match self {
            MarkLaw::Deterministic { value } => {
                if *value < 0.0 {
                    Err(CoreError::NonPositiveRate { field: "mark value", value: *value })
                } else {
                    Ok(())
                }
            }
            MarkLaw::Exponential { mean } => positive("mark mean", *mean),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            MarkLaw::Deterministic { value } => *value,
            MarkLaw::Exponential { mean } => Exp::new(1.0 / mean).unwrap().sample(rng),
        }
    }

    pub fn mean(&self) -> f64 {
        match self {
            MarkLaw::Deterministic { value } => *value,
            MarkLaw::Exponential { mean } => *mean,
        }
    }
}

/// Kernel plus mark law; the full excitation description of a Hawkes model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub kernel: Kernel,
    pub mark_law: MarkLaw,
}

impl KernelSpec {
    pub fn new(kernel: Kernel, mark_law: MarkLaw) -> Self {
        KernelSpec { kernel, mark_law }
    }

    /// Plain exponential Hawkes kernel with unit marks.
    pub fn exponential(jump: f64, decay: f64) -> Self {
        KernelSpec {
            kernel: Kernel::Exponential { jump, decay },
            mark_law: MarkLaw::Deterministic { value: 1.0 },
        }
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        self.kernel.validate()?;
        self.mark_law.validate()
    }

    /// Mean total offspring intensity mass `E[M] * integral g`.
    pub fn mean_mass(&self) -> f64 {
        self.mark_law.mean() * self.kernel.mass()
    }
}

fn positive(field: &'static str, value: f64) -> Result<(), CoreError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(CoreError::NonPositiveRate { field, value })
    }
}
