//! Degree laws, finite degree sequences and their moments.

mod distribution;
mod sequence;

#[cfg(test)]
mod props;

use serde::{Deserialize, Serialize};

pub use distribution::{DegreeDistribution, DistSpec, DEFAULT_KMAX, TRUNCATION_TOLERANCE};
pub use sequence::DegreeSequence;

/// Absolute tolerance on `nu - mu` below which a law counts as critical.
pub const CRITICAL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalityClass {
    Subcritical,
    Critical,
    Supercritical,
}

/// Classify from the mean degree `mu` and the mean of `d(d-1)`.
pub fn classify(mu: f64, nu: f64) -> CriticalityClass {
    let gap = nu - mu;
    if gap.abs() <= CRITICAL_TOLERANCE {
        CriticalityClass::Critical
    } else if gap < 0.0 {
        CriticalityClass::Subcritical
    } else {
        CriticalityClass::Supercritical
    }
}
