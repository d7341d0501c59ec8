//! Monte Carlo simulation of the two-stage branching process.
//!
//! This is an independent check on the closed forms in [`crate::analytics`]:
//! it only draws offspring counts and tallies total progeny.

use std::collections::BTreeMap;

use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use serde::Serialize;

use crate::analytics::BranchingSpec;
use crate::degree::DegreeDistribution;
use crate::numeric::MeanStderr;
use crate::parallel::run_replicates;
use crate::{classify, CriticalityClass, Error, Result, SeededRng};

/// Default population cap above which a process counts as surviving.
pub const DEFAULT_CAP: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProgenyOutcome {
    /// Extinct with this many individuals in total.
    Finite(u64),
    /// Population exceeded the cap.
    Escaped(u64),
}

/// Cumulative-table sampler for a law on the nonnegative integers.
#[derive(Debug, Clone)]
pub struct OffspringSampler {
    values: Vec<u64>,
    index: WeightedIndex<f64>,
}

impl OffspringSampler {
    pub fn new(law: &DegreeDistribution) -> Result<Self> {
        let (values, weights): (Vec<u64>, Vec<f64>) = law
            .probs()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(k, &p)| (k as u64, p))
            .unzip();
        let index = WeightedIndex::new(weights)
            .map_err(|e| Error::InvalidDistribution(format!("offspring table: {e}")))?;
        Ok(OffspringSampler { values, index })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.values[self.index.sample(rng)]
    }

    pub fn max_value(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// Samplers for the root law and the general law.
#[derive(Debug, Clone)]
pub struct ProcessSampler {
    root: OffspringSampler,
    general: OffspringSampler,
}

impl ProcessSampler {
    pub fn new(spec: &BranchingSpec) -> Result<Self> {
        Ok(ProcessSampler {
            root: OffspringSampler::new(&spec.root_law)?,
            general: OffspringSampler::new(&spec.general_law)?,
        })
    }

    /// Process attached to a configuration graph with degree law `dist`.
    pub fn for_graph(dist: &DegreeDistribution) -> Result<Self> {
        Self::new(&BranchingSpec::for_graph(dist)?)
    }

    pub fn sample_root_offspring<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.root.sample(rng)
    }

    pub fn sample_general_offspring<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        self.general.sample(rng)
    }

    /// Total progeny, tracked as a count of individuals whose children are not yet drawn.
    pub fn total_progeny<R: Rng + ?Sized>(&self, rng: &mut R, cap: u64) -> ProgenyOutcome {
        let mut pending = self.root.sample(rng);
        let mut total = 1 + pending;
        while pending > 0 {
            if total > cap {
                return ProgenyOutcome::Escaped(cap);
            }
            let children = self.general.sample(rng);
            total += children;
            pending = pending - 1 + children;
        }
        if total > cap {
            ProgenyOutcome::Escaped(cap)
        } else {
            ProgenyOutcome::Finite(total)
        }
    }
}

/// Tallies of many independent runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProgenySummary {
    pub reps: usize,
    pub cap: u64,
    pub escaped: usize,
    /// `k -> number of runs with total progeny k`.
    pub finite_counts: BTreeMap<u64, usize>,
}

impl ProgenySummary {
    pub fn escaped_fraction(&self) -> f64 {
        self.escaped as f64 / self.reps as f64
    }

    /// Estimate of `rho_k = P(|X| = k)` with its binomial standard error.
    pub fn rho(&self, k: u64) -> (f64, f64) {
        let hits = self.finite_counts.get(&k).copied().unwrap_or(0) as f64;
        let r = self.reps as f64;
        let p = hits / r;
        (p, (p * (1.0 - p) / r).sqrt())
    }

    /// `E(|X|; |X| < inf)`: finite totals averaged with escaped runs counted as 0.
    pub fn chi_hat(&self) -> MeanStderr {
        let r = self.reps as f64;
        let sum: f64 = self.finite_counts.iter().map(|(&k, &c)| k as f64 * c as f64).sum();
        let sum_sq: f64 = self
            .finite_counts
            .iter()
            .map(|(&k, &c)| (k as f64) * (k as f64) * c as f64)
            .sum();
        let mean = sum / r;
        let var = if self.reps > 1 {
            (sum_sq - r * mean * mean).max(0.0) / (r - 1.0)
        } else {
            0.0
        };
        MeanStderr {
            mean,
            stderr: (var / r).sqrt(),
            count: self.reps,
        }
    }
}

/// Runs `reps` independent processes; replicate `i` uses stream `i` of `seed`.
pub fn simulate(
    sampler: &ProcessSampler,
    reps: usize,
    cap: u64,
    seed: u64,
    workers: usize,
) -> ProgenySummary {
    let outcomes = run_replicates(workers, reps, |i| {
        let mut rng = SeededRng::for_replicate(seed, 0x6270, i as u64).rng();
        sampler.total_progeny(&mut rng, cap)
    });
    let mut finite_counts = BTreeMap::new();
    let mut escaped = 0;
    for outcome in outcomes {
        match outcome {
            ProgenyOutcome::Finite(k) => *finite_counts.entry(k).or_insert(0) += 1,
            ProgenyOutcome::Escaped(_) => escaped += 1,
        }
    }
    ProgenySummary {
        reps,
        cap,
        escaped,
        finite_counts,
    }
}

/// Monte Carlo estimate of the modified susceptibility of the process.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChiHatEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub reps: usize,
    pub cap: u64,
    pub escaped_fraction: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Estimates `E(|X|; |X| < inf)` for the process attached to `dist`.
pub fn estimate_chi_hat(
    dist: &DegreeDistribution,
    reps: usize,
    cap: u64,
    seed: u64,
    workers: usize,
) -> Result<ChiHatEstimate> {
    let (mu, nu) = dist.moments()?;
    // at criticality extinction cannot be told from a long run at any cap
    if classify(mu, nu) == CriticalityClass::Critical {
        return Err(Error::Critical("chi_hat"));
    }
    let sampler = ProcessSampler::for_graph(dist)?;
    let summary = simulate(&sampler, reps, cap, seed, workers);
    let stat = summary.chi_hat();
    let warning = (nu < mu && summary.escaped > 0).then(|| {
        format!(
            "{} of {} subcritical runs exceeded the cap {}; raise the cap",
            summary.escaped, reps, cap
        )
    });
    Ok(ChiHatEstimate {
        estimate: stat.mean,
        stderr: stat.stderr,
        reps,
        cap,
        escaped_fraction: summary.escaped_fraction(),
        warning,
    })
}
