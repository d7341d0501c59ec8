use std::collections::BTreeMap;

use serde::Serialize;

use super::sample_graph;
use crate::analytics::{dual_distribution, dual_moments, kappa_fixed_point, pgf};
use crate::components::{components, giant_degree_profile, modified_susceptibility, remove_largest, susceptibility};
use crate::numeric::MeanStderr;
use crate::parallel::run_replicates;
use crate::{classify, CriticalityClass, DegreeDistribution, DegreeSequence, Error, Extended, Result, SeededRng};

const DOMAIN: u64 = 0x6475_616c;

/// Measurements on one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReplicate {
    pub giant_fraction: f64,
    pub second_fraction: f64,
    /// `k -> v_k(C1) / n`
    pub giant_profile: BTreeMap<u64, f64>,
    pub residual_n: usize,
    /// Total variation between the residual degree law and the dual law.
    pub residual_tv: f64,
    pub residual_chi: f64,
    pub residual_class: Option<CriticalityClass>,
    pub chi_hat: f64,
}

/// Measured mean next to its limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Compared {
    pub measured: MeanStderr,
    pub target: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub n: usize,
    pub reps: usize,
    pub kappa: f64,
    /// `g(kappa)`, the limiting fraction of vertices outside `C1`.
    pub g_kappa: f64,
    pub dual: BTreeMap<u64, f64>,
    pub mu_hat: f64,
    pub nu_hat: f64,
    pub giant_fraction: Compared,
    /// `v_k(C1) / n` against `p_k (1 - kappa^k)`.
    pub giant_profile: BTreeMap<u64, Compared>,
    pub residual_tv: MeanStderr,
    pub residual_chi: Compared,
    pub chi_hat: Compared,
    /// `g(kappa)` times the mean residual `chi`.
    pub scaled_residual_chi: f64,
    pub residuals_subcritical: bool,
    pub warnings: Vec<String>,
    pub replicates: Vec<DualityReplicate>,
}

fn total_variation(counts: &BTreeMap<u64, usize>, total: usize, law: &DegreeDistribution) -> f64 {
    let mut tv = 0.0;
    for k in 0..=law.kmax().max(counts.keys().last().copied().unwrap_or(0) as usize) {
        let empirical = counts.get(&(k as u64)).copied().unwrap_or(0) as f64 / total as f64;
        tv += (empirical - law.p(k)).abs();
    }
    tv / 2.0
}

fn stat(values: impl Iterator<Item = f64>) -> MeanStderr {
    MeanStderr::from_slice(&values.collect::<Vec<_>>())
}

/// Removes the giant component from each replicate and compares what remains
/// with the configuration model on the dual law.
pub fn duality_experiment(
    dist: &DegreeDistribution,
    n: usize,
    reps: usize,
    seed: u64,
    workers: usize,
) -> Result<DualityReport> {
    let (mu, nu) = dist.moments()?;
    if classify(mu, nu) != CriticalityClass::Supercritical {
        return Err(Error::NotSupercritical(format!("duality needs nu > mu, got mu={mu}, nu={nu}")));
    }
    let fp = kappa_fixed_point(dist)?;
    let dual = dual_distribution(dist)?;
    let (mu_hat, nu_hat) = dual_moments(dist)?;
    let g_kappa = pgf(dist, fp.kappa, 0);
    let seq = DegreeSequence::realize(dist, n)?;
    let family = SeededRng::derive(seed, DOMAIN);

    let runs = run_replicates(workers, reps, |r| -> Result<DualityReplicate> {
        let g = sample_graph(&seq, SeededRng::for_replicate(family, n as u64, r as u64), false)?;
        let s = components(&g);
        let giant_profile = giant_degree_profile(&g, &s)
            .into_iter()
            .map(|(k, c)| (k, c as f64 / n as f64))
            .collect();
        let residual = remove_largest(&g, &s);
        let residual_n = residual.labels.len();
        let (residual_tv, residual_chi, residual_class) = match &residual.sequence {
            Some(rs) => {
                let (rmu, rnu) = rs.moments();
                let rsum = components(&residual.graph);
                (
                    total_variation(rs.counts(), residual_n, &dual),
                    susceptibility(&rsum),
                    Some(classify(rmu, rnu)),
                )
            }
            None => (1.0, 0.0, None),
        };
        Ok(DualityReplicate {
            giant_fraction: s.largest_size() as f64 / n as f64,
            second_fraction: s.second_size() as f64 / n as f64,
            giant_profile,
            residual_n,
            residual_tv,
            residual_chi,
            residual_class,
            chi_hat: modified_susceptibility(&s),
        })
    });
    let replicates = runs.into_iter().collect::<Result<Vec<_>>>()?;

    let mut warnings = Vec::new();
    for (r, rep) in replicates.iter().enumerate() {
        if rep.second_fraction >= rep.giant_fraction / 2.0 {
            warnings.push(format!(
                "replicate {r}: |C2| = {} n is comparable to |C1| = {} n",
                rep.second_fraction, rep.giant_fraction
            ));
        }
    }
    let degrees: Vec<u64> = seq.counts().keys().copied().collect();
    let giant_profile = degrees
        .iter()
        .map(|&k| {
            let measured = stat(replicates.iter().map(|rep| rep.giant_profile.get(&k).copied().unwrap_or(0.0)));
            let target = dist.p(k as usize) * (1.0 - fp.kappa.powi(k as i32));
            (k, Compared { measured, target })
        })
        .collect();
    let residual_chi = stat(replicates.iter().map(|r| r.residual_chi));
    let residual_target = match crate::analytics::finite_n_prediction(mu_hat, nu_hat) {
        Extended::Finite(v) => v,
        Extended::Infinite => f64::INFINITY,
    };
    let chi_hat_target = crate::analytics::chi_hat_graph_limit(dist)?.to_f64();
    Ok(DualityReport {
        n,
        reps,
        kappa: fp.kappa,
        g_kappa,
        dual: dual.to_map(),
        mu_hat,
        nu_hat,
        giant_fraction: Compared {
            measured: stat(replicates.iter().map(|r| r.giant_fraction)),
            target: 1.0 - g_kappa,
        },
        giant_profile,
        residual_tv: stat(replicates.iter().map(|r| r.residual_tv)),
        scaled_residual_chi: g_kappa * residual_chi.mean,
        residual_chi: Compared {
            measured: residual_chi,
            target: residual_target,
        },
        chi_hat: Compared {
            measured: stat(replicates.iter().map(|r| r.chi_hat)),
            target: chi_hat_target,
        },
        residuals_subcritical: replicates
            .iter()
            .all(|r| r.residual_class == Some(CriticalityClass::Subcritical)),
        warnings,
        replicates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_and_half_small() {
        let dist = DegreeDistribution::explicit(&[(1, 0.5), (3, 0.5)]).unwrap();
        let report = duality_experiment(&dist, 20_000, 4, 5, 2).unwrap();
        assert!((report.g_kappa - 5.0 / 27.0).abs() < 1e-12);
        assert!((report.residual_chi.target - 3.4).abs() < 1e-9);
        assert!((report.giant_fraction.target - 22.0 / 27.0).abs() < 1e-12);
        assert!((report.giant_fraction.measured.mean - 22.0 / 27.0).abs() < 0.02);
        assert!(report.residuals_subcritical);
        assert!(report.warnings.is_empty());
        assert!((report.giant_profile[&1].target - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_subcritical() {
        let dist = DegreeDistribution::explicit(&[(1, 0.8), (3, 0.2)]).unwrap();
        assert!(matches!(duality_experiment(&dist, 100, 1, 1, 1), Err(Error::NotSupercritical(_))));
    }

    #[test]
    fn tv_of_exact_law_is_zero() {
        let law = DegreeDistribution::explicit(&[(1, 0.9), (3, 0.1)]).unwrap();
        let counts = BTreeMap::from([(1, 9), (3, 1)]);
        assert!(total_variation(&counts, 10, &law) < 1e-15);
        let counts = BTreeMap::from([(1, 10)]);
        assert!((total_variation(&counts, 10, &law) - 0.1).abs() < 1e-15);
    }
}
