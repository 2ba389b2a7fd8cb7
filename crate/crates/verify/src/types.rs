//! Claim specifications and their evaluated reports.

use serde::{Deserialize, Serialize};

/// Test statistic a claim reduces to. Distances and scores pass below their
/// threshold; `Chi2` reports a p-value and passes above it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    /// Total variation distance between an empirical and an analytic law.
    Tv,
    /// Kolmogorov-Smirnov distance between two samples.
    Ks,
    /// Goodness-of-fit p-value.
    Chi2,
    /// Largest standardized deviation, `|estimate - target| / SE`.
    MomentZ,
    /// Largest signed violation of a required ordering or containment.
    OneSidedOrder,
    /// Largest absolute error of a deterministic identity.
    MaxAbs,
}

impl Statistic {
    /// Whether `observed` is on the passing side of `threshold`.
    pub fn passes(self, observed: f64, threshold: f64) -> bool {
        match self {
            Statistic::Chi2 => observed >= threshold,
            _ => observed <= threshold,
        }
    }
}

/// One executable claim: a registered generator/oracle pair reduced to a
/// single statistic, with the tolerance it must meet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimSpec {
    pub claim_id: String,
    /// Registered simulation recipe.
    pub generator: String,
    /// Registered analytic recipe.
    pub oracle: String,
    pub statistic: Statistic,
    pub tolerance: f64,
    pub replications: u64,
    pub seed: u64,
}

/// Outcome of one claim run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub statistic: Statistic,
    pub observed: f64,
    pub threshold: f64,
    pub pass: bool,
    /// Wall-clock seconds; the only field not reproduced by a reseeded rerun.
    pub runtime: f64,
    pub seed: u64,
    /// Set when this report came from the documented second-seed rerun.
    pub retried: bool,
}

impl ClaimReport {
    /// Evaluate `observed` against the spec so that `pass` always agrees
    /// with the statistic's direction.
    pub fn evaluate(spec: &ClaimSpec, observed: f64, runtime: f64) -> Self {
        ClaimReport {
            claim_id: spec.claim_id.clone(),
            statistic: spec.statistic,
            observed,
            threshold: spec.tolerance,
            pass: spec.statistic.passes(observed, spec.tolerance),
            runtime,
            seed: spec.seed,
            retried: false,
        }
    }
}
