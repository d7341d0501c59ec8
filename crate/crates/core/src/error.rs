use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("total degree {total} is odd")]
    Parity { total: u64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid degree sequence: {0}")]
    InvalidSequence(String),

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("no simple graph after {attempts} attempts (rejection rate {rejection_rate:.4}, mean loops {mean_loops:.2}, mean multi-edges {mean_multi:.2})")]
    Exhausted {
        attempts: usize,
        rejection_rate: f64,
        mean_loops: f64,
        mean_multi: f64,
    },

    #[error("law is critical; {0} is infinite")]
    Critical(&'static str),

    #[error("law is not supercritical: {0}")]
    NotSupercritical(String),

    #[error("no finite clusters: g(kappa) = 0")]
    NoFiniteClusters,

    #[error("closed forms disagree: {first} vs {second}")]
    FormMismatch { first: f64, second: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("path enumeration refused for n = {n}, length = {ell} (limits n <= {max_n}, length <= {max_ell})")]
    PathLimits {
        n: usize,
        ell: usize,
        max_n: usize,
        max_ell: usize,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error envelope.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parity { .. } => "parity",
            Error::InvalidDistribution(_) => "invalid_distribution",
            Error::InvalidSequence(_) => "invalid_sequence",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Exhausted { .. } => "exhausted",
            Error::Critical(_) => "critical",
            Error::NotSupercritical(_) => "not_supercritical",
            Error::NoFiniteClusters => "no_finite_clusters",
            Error::FormMismatch { .. } => "form_mismatch",
            Error::DegenerateFit(_) => "degenerate_fit",
            Error::PathLimits { .. } => "path_limits",
            Error::Parse { .. } => "parse",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}
