use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::DegreeDistribution;
use crate::{Error, Result};

/// A concrete degree sequence `d_1, ..., d_n` with even total degree.
///
/// Vertex `i` (0-based here, 1-based in files) has degree `degrees[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSequence {
    degrees: Vec<u64>,
    counts: BTreeMap<u64, usize>,
    m: u64,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<u64>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidSequence("no vertices".into()));
        }
        let total: u64 = degrees.iter().sum();
        if total % 2 == 1 {
            return Err(Error::Parity { total });
        }
        let mut counts = BTreeMap::new();
        for &d in &degrees {
            *counts.entry(d).or_insert(0) += 1;
        }
        Ok(DegreeSequence {
            degrees,
            counts,
            m: total / 2,
        })
    }

    /// Sequence with the given multiplicities, degrees in nondecreasing order.
    pub fn from_counts(counts: &BTreeMap<u64, usize>) -> Result<Self> {
        let degrees: Vec<u64> = counts
            .iter()
            .flat_map(|(&d, &c)| std::iter::repeat(d).take(c))
            .collect();
        Self::new(degrees)
    }

    /// Deterministic sequence of length `n` whose empirical law tracks `dist`.
    ///
    /// Counts are `n p_k` rounded by largest remainder so they sum to `n`. An odd
    /// total is repaired by raising the degree of the highest-labelled vertex of
    /// the lowest degree class by one.
    pub fn realize(dist: &DegreeDistribution, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSequence("n must be >= 1".into()));
        }
        let mut counts: Vec<(u64, usize, f64)> = dist
            .iter_desc()
            .map(|(k, p)| {
                let target = n as f64 * p;
                let floor = target.floor();
                (k as u64, floor as usize, target - floor)
            })
            .collect();
        let assigned: usize = counts.iter().map(|c| c.1).sum();
        let missing = n.saturating_sub(assigned);
        let mut order: Vec<usize> = (0..counts.len()).collect();
        // largest remainder first, lower degree first among ties
        order.sort_by(|&a, &b| {
            counts[b]
                .2
                .total_cmp(&counts[a].2)
                .then(counts[a].0.cmp(&counts[b].0))
        });
        for &i in order.iter().take(missing) {
            counts[i].1 += 1;
        }
        let mut degrees: Vec<u64> = Vec::with_capacity(n);
        counts.sort_by_key(|c| c.0);
        for &(k, c, _) in &counts {
            degrees.extend(std::iter::repeat(k).take(c));
        }
        debug_assert_eq!(degrees.len(), n);
        let total: u64 = degrees.iter().sum();
        if total % 2 == 1 {
            let lowest = degrees[0];
            let last_of_class = degrees.iter().rposition(|&d| d == lowest).unwrap();
            degrees[last_of_class] += 1;
        }
        Self::new(degrees)
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn counts(&self) -> &BTreeMap<u64, usize> {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Number of edges, half the total degree.
    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn max_degree(&self) -> u64 {
        self.counts.keys().next_back().copied().unwrap_or(0)
    }

    /// `(mu_n, nu_n)`: mean of `d_i` and of `d_i (d_i - 1)`. Sums are exact integers.
    pub fn moments(&self) -> (f64, f64) {
        let n = self.n() as f64;
        let first: u128 = self.degrees.iter().map(|&d| d as u128).sum();
        let second: u128 = self
            .degrees
            .iter()
            .map(|&d| d as u128 * (d as u128).saturating_sub(1))
            .sum();
        (first as f64 / n, second as f64 / n)
    }

    /// Parses `degree count` pairs, one per line. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let mut fields = line.split_whitespace();
            let (Some(d), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(parse_err(format!("expected `degree count`, got `{line}`")));
            };
            let d: u64 = d.parse().map_err(|e| parse_err(format!("degree: {e}")))?;
            let c: usize = c.parse().map_err(|e| parse_err(format!("count: {e}")))?;
            *counts.entry(d).or_insert(0) += c;
        }
        Self::from_counts(&counts)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (d, c) in &self.counts {
            let _ = writeln!(out, "{d} {c}");
        }
        out
    }
}
