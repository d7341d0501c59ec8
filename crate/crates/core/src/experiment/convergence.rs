use serde::Serialize;

use super::sample_graph;
use crate::analytics::{chi_graph_limit, chi_hat_graph_limit, delta_metric, finite_n_prediction};
use crate::components::{components, modified_susceptibility, susceptibility};
use crate::numeric::MeanStderr;
use crate::parallel::run_replicates;
use crate::{DegreeDistribution, DegreeSequence, Extended, Result, SeededRng};

const DOMAIN: u64 = 0x636f_6e76;

/// One row of the convergence table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub reps: usize,
    pub mu_n: f64,
    pub nu_n: f64,
    pub chi: MeanStderr,
    pub chi_hat: MeanStderr,
    pub giant_fraction: MeanStderr,
    pub chi_inf: Extended,
    pub chi_hat_inf: Extended,
    pub finite_n: Extended,
    /// `delta(mean chi, chi_inf)`
    pub delta_chi_inf: f64,
    /// `delta(mean chi, 1 + mu_n^2 / (mu_n - nu_n)+)`
    pub delta_chi_finite_n: f64,
}

/// Means of `chi`, `chi_hat` and `|C1| / n` over `reps` graphs at each `n`.
///
/// Replicate `r` at size `n` uses stream `r` of a family derived from `(seed, n)`,
/// so rows do not depend on the rest of the grid.
pub fn convergence_experiment(
    dist: &DegreeDistribution,
    n_grid: &[usize],
    reps: usize,
    seed: u64,
    simple: bool,
    workers: usize,
) -> Result<Vec<ConvergenceRow>> {
    let chi_inf = chi_graph_limit(dist)?;
    let chi_hat_inf = chi_hat_graph_limit(dist)?;
    n_grid
        .iter()
        .map(|&n| {
            let seq = DegreeSequence::realize(dist, n)?;
            let (mu_n, nu_n) = seq.moments();
            let family = SeededRng::derive(seed, DOMAIN);
            let runs = run_replicates(workers, reps, |r| -> Result<(f64, f64, f64)> {
                let rng = SeededRng::for_replicate(family, n as u64, r as u64);
                let g = sample_graph(&seq, rng, simple)?;
                let s = components(&g);
                Ok((
                    susceptibility(&s),
                    modified_susceptibility(&s),
                    s.largest_size() as f64 / n as f64,
                ))
            });
            let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
            let chi = MeanStderr::from_slice(&runs.iter().map(|r| r.0).collect::<Vec<_>>());
            let chi_hat = MeanStderr::from_slice(&runs.iter().map(|r| r.1).collect::<Vec<_>>());
            let giant_fraction = MeanStderr::from_slice(&runs.iter().map(|r| r.2).collect::<Vec<_>>());
            let finite_n = finite_n_prediction(mu_n, nu_n);
            let measured = Extended::Finite(chi.mean);
            Ok(ConvergenceRow {
                n,
                reps,
                mu_n,
                nu_n,
                chi,
                chi_hat,
                giant_fraction,
                chi_inf,
                chi_hat_inf,
                finite_n,
                delta_chi_inf: delta_metric(measured, chi_inf),
                delta_chi_finite_n: delta_metric(measured, finite_n),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_degree_one_gives_chi_two() {
        let dist = DegreeDistribution::explicit(&[(1, 1.0)]).unwrap();
        let rows = convergence_experiment(&dist, &[10, 100, 1000], 5, 1, false, 1).unwrap();
        for row in &rows {
            assert_eq!(row.chi.mean, 2.0);
            assert_eq!(row.chi.stderr, 0.0);
            assert_eq!(row.chi_inf, Extended::Finite(2.0));
            assert_eq!(row.delta_chi_inf, 0.0);
        }
    }

    #[test]
    fn critical_chi_grows() {
        let dist = DegreeDistribution::explicit(&[(1, 0.75), (3, 0.25)]).unwrap();
        let rows = convergence_experiment(&dist, &[1000, 10_000, 100_000], 20, 3, false, 2).unwrap();
        assert!(rows[0].chi.mean < rows[2].chi.mean);
        assert!(rows[0].delta_chi_inf > rows[2].delta_chi_inf);
        assert!(rows[0].chi_inf.is_infinite());
    }

    #[test]
    fn rows_do_not_depend_on_grid_or_workers() {
        let dist = DegreeDistribution::explicit(&[(1, 0.8), (3, 0.2)]).unwrap();
        let a = convergence_experiment(&dist, &[500], 8, 9, false, 1).unwrap();
        let b = convergence_experiment(&dist, &[200, 500], 8, 9, false, 4).unwrap();
        assert_eq!(a[0], b[1]);
    }
}
