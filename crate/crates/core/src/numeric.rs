//! Summation and sample statistics.

use serde::{Deserialize, Serialize};

/// Neumaier-compensated sum of the items in iteration order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(items: I) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in items {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeanStderr {
    pub mean: f64,
    pub stderr: f64,
    pub count: usize,
}

impl MeanStderr {
    pub fn from_slice(values: &[f64]) -> Self {
        let count = values.len();
        if count == 0 {
            return MeanStderr {
                mean: f64::NAN,
                stderr: f64::NAN,
                count,
            };
        }
        let mean = compensated_sum(values.iter().copied()) / count as f64;
        let stderr = if count > 1 {
            let ss = compensated_sum(values.iter().map(|v| (v - mean) * (v - mean)));
            (ss / (count - 1) as f64 / count as f64).sqrt()
        } else {
            0.0
        };
        MeanStderr {
            mean,
            stderr,
            count,
        }
    }

    /// Does `target` lie within `sigmas` standard errors of the mean?
    pub fn covers(&self, target: f64, sigmas: f64) -> bool {
        (self.mean - target).abs() <= sigmas * self.stderr
    }
}

/// Relative difference `|a - b| / |b|`.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
