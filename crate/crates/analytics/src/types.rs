use serde::{Deserialize, Serialize};

/// Value of a transform (MGF or PGF) at one argument point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformResult {
    pub value: f64,
    /// The evaluation point: `[theta, t]`, `[z, t]` or `[z1, z2, t]`.
    pub arguments: Vec<f64>,
    pub in_domain: bool,
    /// Upper end of the valid argument range, when one exists.
    pub domain_bound: Option<f64>,
}

impl TransformResult {
    pub fn new(value: f64, arguments: Vec<f64>, domain_bound: Option<f64>) -> Self {
        TransformResult { value, arguments, in_domain: true, domain_bound }
    }
}

/// Probability mass on `0..probs.len()`, plus whatever tail was cut off.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PmfTable {
    pub probs: Vec<f64>,
    pub truncation_mass: f64,
}

impl PmfTable {
    pub fn new(probs: Vec<f64>, truncation_mass: f64) -> Self {
        PmfTable { probs, truncation_mass }
    }

    /// Mean of the tabulated part (the truncated tail contributes nothing).
    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(k, p)| k as f64 * p).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        let m2: f64 = self.probs.iter().enumerate().map(|(k, p)| (k as f64) * (k as f64) * p).sum();
        m2 - m * m
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum::<f64>() + self.truncation_mass
    }
}
