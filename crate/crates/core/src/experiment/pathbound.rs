use serde::Serialize;

use super::sample_graph;
use crate::analytics::finite_n_prediction;
use crate::components::paths::{count_paths, MAX_PATH_LENGTH, MAX_PATH_VERTICES};
use crate::components::{components, susceptibility};
use crate::numeric::MeanStderr;
use crate::parallel::run_replicates;
use crate::{DegreeSequence, Error, Extended, Result, SeededRng};

const DOMAIN: u64 = 0x7061_7468;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathBoundRow {
    pub ell: usize,
    pub mean: f64,
    pub stderr: f64,
    /// `n nu_n^(ell-1) / mu_n^(ell-2)`
    pub bound: f64,
    /// `bound - mean`
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathBoundReport {
    pub n: usize,
    pub reps: usize,
    pub mu_n: f64,
    pub nu_n: f64,
    pub rows: Vec<PathBoundRow>,
    pub chi: MeanStderr,
    /// `1 + mu_n^2 / (mu_n - nu_n)+`
    pub chi_bound: Extended,
}

/// Expected path count bound for paths with `ell` edges.
pub fn path_bound(n: usize, mu_n: f64, nu_n: f64, ell: usize) -> f64 {
    n as f64 * nu_n.powi(ell as i32 - 1) / mu_n.powi(ell as i32 - 2)
}

/// Exact path counts in `reps` multigraphs, compared with the expectation bound.
pub fn path_bound_audit(
    seq: &DegreeSequence,
    reps: usize,
    ell_max: usize,
    seed: u64,
    workers: usize,
) -> Result<PathBoundReport> {
    let n = seq.n();
    if n > MAX_PATH_VERTICES || ell_max > MAX_PATH_LENGTH || ell_max == 0 {
        return Err(Error::PathLimits {
            n,
            ell: ell_max,
            max_n: MAX_PATH_VERTICES,
            max_ell: MAX_PATH_LENGTH,
        });
    }
    let (mu_n, nu_n) = seq.moments();
    let family = SeededRng::derive(seed, DOMAIN);
    let runs = run_replicates(workers, reps, |r| -> Result<(Vec<f64>, f64)> {
        let g = sample_graph(seq, SeededRng::new(family, r as u64), false)?;
        let counts = (1..=ell_max)
            .map(|ell| count_paths(&g, ell).map(|c| c as f64))
            .collect::<Result<Vec<_>>>()?;
        Ok((counts, susceptibility(&components(&g))))
    });
    let runs = runs.into_iter().collect::<Result<Vec<_>>>()?;
    let rows = (1..=ell_max)
        .map(|ell| {
            let stat = MeanStderr::from_slice(&runs.iter().map(|r| r.0[ell - 1]).collect::<Vec<_>>());
            let bound = path_bound(n, mu_n, nu_n, ell);
            PathBoundRow {
                ell,
                mean: stat.mean,
                stderr: stat.stderr,
                bound,
                slack: bound - stat.mean,
            }
        })
        .collect();
    Ok(PathBoundReport {
        n,
        reps,
        mu_n,
        nu_n,
        rows,
        chi: MeanStderr::from_slice(&runs.iter().map(|r| r.1).collect::<Vec<_>>()),
        chi_bound: finite_n_prediction(mu_n, nu_n),
    })
}
