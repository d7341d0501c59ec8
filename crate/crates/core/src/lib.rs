//! Susceptibility of configuration-model random graphs.
//!
//! The crate samples multigraphs with a prescribed degree sequence, measures
//! the susceptibility (mean size of the component containing a random vertex)
//! and its modified version that ignores the largest component, and compares
//! the measurements with the exact limits obtained from the associated
//! two-stage Galton–Watson branching process.
//!
//! Module map:
//!
//! - [`degree`]: degree distributions, finite degree sequences, moments, criticality.
//! - [`analytics`]: generating-function formulas (κ, survival, χ∞, χ̂∞, dual law).
//! - [`sampler`]: half-edge pairing sampler and simple-graph rejection.
//! - [`components`]: components, susceptibilities, spectra, path counts.
//! - [`branching`]: Monte Carlo simulation of the branching process.
//! - [`experiment`]: convergence, duality, path-bound, sweep and counterexample runs.

pub mod analytics;
pub mod branching;
pub mod components;
pub mod degree;
mod error;
pub mod experiment;
mod ext;
pub mod io;
pub mod numeric;
pub mod parallel;
pub mod rng;
pub mod sampler;

pub use analytics::{AnalyticsReport, BranchingSpec};
pub use branching::ProgenyOutcome;
pub use components::ComponentSummary;
pub use degree::{classify, CriticalityClass, DegreeDistribution, DegreeSequence, DistSpec};
pub use error::{Error, Result};
pub use ext::Extended;
pub use rng::SeededRng;
pub use sampler::MultiGraph;
