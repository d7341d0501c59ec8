//! Experiments that compare sampled graphs with the limiting formulas.
//!
//! Every experiment is a pure function of its inputs and seed. Replicates run
//! on their own random streams and are reduced in replicate order, so reports
//! do not depend on the worker count.

pub mod convergence;
pub mod counterexamples;
pub mod duality;
pub mod fit;
pub mod pathbound;
pub mod spec;
pub mod sweep;

pub use convergence::{convergence_experiment, ConvergenceRow};
pub use counterexamples::{counterexample_suite, CounterexampleReport};
pub use duality::{duality_experiment, DualityReport};
pub use fit::{fit_exponent, ExponentFit};
pub use pathbound::{path_bound_audit, PathBoundReport};
pub use spec::{run_spec, ExperimentFile, ExperimentOutput, ExperimentSpec};
pub use sweep::{critical_sweep, lambda_critical, lambda_family, Side, SweepPoint};

use crate::sampler::{sample_multigraph, sample_simple, MultiGraph, DEFAULT_MAX_ATTEMPTS};
use crate::{DegreeSequence, Result, SeededRng};

fn sample_graph(seq: &DegreeSequence, rng: SeededRng, simple: bool) -> Result<MultiGraph> {
    if simple {
        sample_simple(seq, rng, DEFAULT_MAX_ATTEMPTS).map(|s| s.graph)
    } else {
        Ok(sample_multigraph(seq, rng))
    }
}
