//! Tabular output of parameter sweeps (scaling studies, convergence checks).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// The swept quantity (batch scale, population size, horizon, ...).
    pub scale: f64,
    /// What `value` measures, e.g. "ks", "tv", "pasta_ratio".
    pub metric: String,
    pub value: f64,
    /// Monte Carlo sample count behind the value; 0 for analytic rows.
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    /// Whether the producing experiment predicts the primary metric to be
    /// monotone in the scale (convergence sweeps set this).
    #[serde(default)]
    pub monotone_expected: bool,
}

impl SweepReport {
    pub fn expect_monotone() -> Self {
        SweepReport { monotone_expected: true, ..Self::default() }
    }

    pub fn push(&mut self, scale: f64, metric: &str, value: f64, samples: u64, seed: u64) {
        self.rows.push(SweepRow { scale, metric: metric.to_string(), value, samples, seed });
    }

    /// Rows for one metric, sorted by scale.
    pub fn metric(&self, metric: &str) -> Vec<&SweepRow> {
        let mut rows: Vec<&SweepRow> = self.rows.iter().filter(|r| r.metric == metric).collect();
        rows.sort_by(|a, b| a.scale.total_cmp(&b.scale));
        rows
    }

    pub fn values(&self, metric: &str) -> Vec<(f64, f64)> {
        self.metric(metric).iter().map(|r| (r.scale, r.value)).collect()
    }
}
