use serde::{Deserialize, Serialize};

/// A discrete law tabulated on `offset..offset + probs.len()`, with the
/// remaining mass reported explicitly so `sum(probs) + tail_mass = 1` up to
/// rounding. `mean` and `variance` carry the exact values where a closed
/// form exists, independent of the truncation point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiscreteLaw {
    pub offset: u64,
    pub probs: Vec<f64>,
    pub tail_mass: f64,
    pub mean: Option<f64>,
    pub variance: Option<f64>,
}

impl DiscreteLaw {
    pub fn new(offset: u64, probs: Vec<f64>, tail_mass: f64) -> Self {
        DiscreteLaw { offset, probs, tail_mass, mean: None, variance: None }
    }

    pub fn with_moments(mut self, mean: f64, variance: f64) -> Self {
        self.mean = Some(mean);
        self.variance = Some(variance);
        self
    }

    /// Probability of `k`, zero outside the tabulated window.
    pub fn prob(&self, k: u64) -> f64 {
        if k < self.offset {
            return 0.0;
        }
        self.probs.get((k - self.offset) as usize).copied().unwrap_or(0.0)
    }

    /// Tabulated mass plus the tail; should be one up to rounding.
    pub fn total(&self) -> f64 {
        self.probs.iter().sum::<f64>() + self.tail_mass
    }

    /// Mean of the tabulated part only (ignores the tail).
    pub fn tabulated_mean(&self) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(i, p)| (self.offset + i as u64) as f64 * p)
            .sum()
    }
}
