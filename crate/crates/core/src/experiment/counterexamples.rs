//! Degree sequences that break the moment conditions.
//!
//! - `estar`: one vertex of degree about `a sqrt(n)`, all others degree 1.
//! - `e2star`: two such hubs.
//! - `e0`: `2 floor(a sqrt(n))` cubic vertices, the rest isolated.

use serde::Serialize;

use crate::components::{components, modified_susceptibility, susceptibility};
use crate::numeric::MeanStderr;
use crate::parallel::run_replicates;
use crate::sampler::{sample_simple, DEFAULT_MAX_ATTEMPTS};
use crate::{DegreeSequence, Error, Extended, Result, SeededRng};

const DOMAIN_ESTAR: u64 = 0x6573_7461;
const DOMAIN_E2STAR: u64 = 0x6532_7374;
const DOMAIN_E0: u64 = 0x6530_6375;

fn hub_degree(a: f64, n: usize) -> u64 {
    (a * (n as f64).sqrt()).floor() as u64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstarReport {
    pub a: f64,
    pub n: usize,
    pub hub_degree: u64,
    /// `((d1 + 1)^2 + 2 (n - 1 - d1)) / n`
    pub formula: f64,
    /// `chi` of a sampled simple graph; `None` when the degree sum is odd.
    pub measured: Option<f64>,
    pub limit: f64,
    /// `(2 - a^2) / (1 - a^2)`, the finite-n prediction the example defeats;
    /// infinite when `a >= 1`.
    pub moment_prediction: Extended,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn estar_formula(n: usize, d1: u64) -> f64 {
    let d1 = d1 as f64;
    let n = n as f64;
    ((d1 + 1.0) * (d1 + 1.0) + 2.0 * (n - 1.0 - d1)) / n
}

pub fn estar_sequence(a: f64, n: usize) -> Result<DegreeSequence> {
    let mut degrees = vec![1; n];
    degrees[0] = hub_degree(a, n);
    DegreeSequence::new(degrees)
}

pub fn estar(a: f64, n: usize, seed: u64) -> Result<EstarReport> {
    let d1 = hub_degree(a, n);
    let (measured, note) = match estar_sequence(a, n) {
        Ok(seq) => {
            let sample = sample_simple(&seq, SeededRng::new(SeededRng::derive(seed, DOMAIN_ESTAR), 0), DEFAULT_MAX_ATTEMPTS)?;
            (Some(susceptibility(&components(&sample.graph))), None)
        }
        Err(Error::Parity { total }) => (None, Some(format!("degree sum {total} is odd; no graph sampled"))),
        Err(e) => return Err(e),
    };
    let a2 = a * a;
    Ok(EstarReport {
        a,
        n,
        hub_degree: d1,
        formula: estar_formula(n, d1),
        measured,
        limit: a2 + 2.0,
        moment_prediction: if a2 < 1.0 {
            Extended::Finite((2.0 - a2) / (1.0 - a2))
        } else {
            Extended::Infinite
        },
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct E2starReport {
    pub a: f64,
    pub n: usize,
    pub hub_degree: u64,
    pub reps: usize,
    /// Frequency of an edge between the two hubs.
    pub edge12: MeanStderr,
    /// `a^2 / (a^2 + 2)`
    pub paper_limit: f64,
    /// Exact probability for uniform simple graphs, `d^2 / (d^2 + n - 2d)`.
    pub exact: f64,
    /// `chi` and `chi_hat` means split by the presence of the hub edge.
    pub chi_joined: Option<MeanStderr>,
    pub chi_apart: Option<MeanStderr>,
    pub chi_hat_joined: Option<MeanStderr>,
    pub chi_hat_apart: Option<MeanStderr>,
}

pub fn e2star_sequence(a: f64, n: usize) -> Result<DegreeSequence> {
    let mut degrees = vec![1; n];
    degrees[0] = hub_degree(a, n);
    degrees[1] = hub_degree(a, n);
    DegreeSequence::new(degrees)
}

/// Uniform simple graphs with two hubs: how often are the hubs adjacent?
pub fn e2star(a: f64, n: usize, reps: usize, seed: u64, workers: usize) -> Result<E2starReport> {
    let seq = e2star_sequence(a, n)?;
    let d = hub_degree(a, n);
    let family = SeededRng::derive(seed, DOMAIN_E2STAR);
    let runs = run_replicates(workers, reps, |r| -> Result<(bool, f64, f64)> {
        let sample = sample_simple(&seq, SeededRng::new(family, r as u64), DEFAULT_MAX_ATTEMPTS)?;
        let joined = sample.graph.edges().iter().any(|&(u, v)| u.min(v) == 0 && u.max(v) == 1);
        let s = components(&sample.graph);
        Ok((joined, susceptibility(&s), modified_susceptibility(&s)))
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let split = |joined: bool, pick: fn(&(bool, f64, f64)) -> f64| {
        let xs: Vec<f64> = runs.iter().filter(|r| r.0 == joined).map(pick).collect();
        (!xs.is_empty()).then(|| MeanStderr::from_slice(&xs))
    };
    let (df, nf) = (d as f64, n as f64);
    Ok(E2starReport {
        a,
        n,
        hub_degree: d,
        reps,
        edge12: MeanStderr::from_slice(&runs.iter().map(|r| if r.0 { 1.0 } else { 0.0 }).collect::<Vec<_>>()),
        paper_limit: a * a / (a * a + 2.0),
        exact: df * df / (df * df + nf - 2.0 * df),
        chi_joined: split(true, |r| r.1),
        chi_apart: split(false, |r| r.1),
        chi_hat_joined: split(true, |r| r.2),
        chi_hat_apart: split(false, |r| r.2),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct E0Report {
    pub a: f64,
    pub n: usize,
    pub cubic_vertices: usize,
    pub reps: usize,
    pub connected: usize,
    /// `chi` over replicates whose cubic part is connected.
    pub chi_connected: Option<MeanStderr>,
    /// `(n - n3 + n3^2) / n`
    pub formula: f64,
    /// `1 + 4 a^2`
    pub limit: f64,
}

pub fn e0_sequence(a: f64, n: usize) -> Result<DegreeSequence> {
    let n3 = 2 * hub_degree(a, n) as usize;
    if n3 > n {
        return Err(Error::InvalidArgument(format!("{n3} cubic vertices do not fit in n = {n}")));
    }
    let mut degrees = vec![0; n];
    degrees[..n3].fill(3);
    DegreeSequence::new(degrees)
}

pub fn e0(a: f64, n: usize, reps: usize, seed: u64, workers: usize) -> Result<E0Report> {
    let seq = e0_sequence(a, n)?;
    let n3 = 2 * hub_degree(a, n) as usize;
    let family = SeededRng::derive(seed, DOMAIN_E0);
    let runs = run_replicates(workers, reps, |r| -> Result<(bool, f64)> {
        let sample = sample_simple(&seq, SeededRng::new(family, r as u64), DEFAULT_MAX_ATTEMPTS)?;
        let s = components(&sample.graph);
        Ok((s.largest_size() == n3, susceptibility(&s)))
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let chis: Vec<f64> = runs.iter().filter(|r| r.0).map(|r| r.1).collect();
    let (nf, n3f) = (n as f64, n3 as f64);
    Ok(E0Report {
        a,
        n,
        cubic_vertices: n3,
        reps,
        connected: chis.len(),
        chi_connected: (!chis.is_empty()).then(|| MeanStderr::from_slice(&chis)),
        formula: (nf - n3f + n3f * n3f) / nf,
        limit: 1.0 + 4.0 * a * a,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub estar: EstarReport,
    pub e2star: E2starReport,
    pub e0: E0Report,
}

pub fn counterexample_suite(a: f64, n: usize, reps: usize, seed: u64, workers: usize) -> Result<CounterexampleReport> {
    Ok(CounterexampleReport {
        estar: estar(a, n, seed)?,
        e2star: e2star(a, n, reps, seed, workers)?,
        e0: e0(a, n, reps, seed, workers)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estar_formula_values() {
        assert!((estar_formula(10_000, 100) - 2.9999).abs() < 1e-12);
        let r = estar(1.0, 10_000, 1).unwrap();
        assert!(r.measured.is_none());
        assert!(r.moment_prediction.is_infinite());
        let r = estar(1.0, 10_001, 1).unwrap();
        assert_eq!(r.measured, Some(r.formula));
    }

    #[test]
    fn e0_small() {
        let r = e0(1.0, 400, 20, 3, 1).unwrap();
        assert_eq!(r.cubic_vertices, 40);
        assert!(r.connected > 10);
        assert!((r.chi_connected.unwrap().mean - r.formula).abs() < 1e-12);
    }

    #[test]
    fn e2star_exact_probability_small() {
        // n = 8, d = 2: the hubs are adjacent in half of the simple graphs
        let r = e2star(2.5 / 8f64.sqrt(), 8, 4000, 7, 2).unwrap();
        assert_eq!(r.hub_degree, 2);
        assert_eq!(r.exact, 0.5);
        assert!(r.edge12.covers(0.5, 4.0));
    }
}
