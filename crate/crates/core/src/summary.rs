//! Ensemble summaries.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Summary of a batch of replications: sample moments plus, depending on the
/// quantity summarized, an integer histogram or the sorted raw sample. RNG
/// coordinates are carried along so a summary pins down exactly how to
/// regenerate the ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSummary {
    pub samples: u64,
    pub mean: f64,
    pub variance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub histogram: Option<BTreeMap<u64, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sorted_samples: Option<Vec<f64>>,
    pub seed: u64,
    pub first_stream: u64,
    pub last_stream: u64,
}

impl EmpiricalSummary {
    pub fn from_discrete(
        values: &[u64],
        seed: u64,
        first_stream: u64,
        last_stream: u64,
    ) -> Self {
        let mut histogram = BTreeMap::new();
        for &v in values {
            *histogram.entry(v).or_insert(0) += 1;
        }
        let (mean, variance) = moments(values.iter().map(|&v| v as f64));
        EmpiricalSummary {
            samples: values.len() as u64,
            mean,
            variance,
            histogram: Some(histogram),
            sorted_samples: None,
            seed,
            first_stream,
            last_stream,
        }
    }

    pub fn from_continuous(
        mut values: Vec<f64>,
        seed: u64,
        first_stream: u64,
        last_stream: u64,
    ) -> Self {
        let (mean, variance) = moments(values.iter().copied());
        values.sort_by(f64::total_cmp);
        EmpiricalSummary {
            samples: values.len() as u64,
            mean,
            variance,
            histogram: None,
            sorted_samples: Some(values),
            seed,
            first_stream,
            last_stream,
        }
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        if self.samples < 2 {
            f64::INFINITY
        } else {
            (self.variance / self.samples as f64).sqrt()
        }
    }
}

fn moments(values: impl Iterator<Item = f64>) -> (f64, f64) {
    // Single-pass mean and unbiased variance.
    let mut n = 0u64;
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for x in values {
        n += 1;
        let d = x - mean;
        mean += d / n as f64;
        m2 += d * (x - mean);
    }
    let variance = if n > 1 { m2 / (n - 1) as f64 } else { 0.0 };
    (mean, variance)
}
