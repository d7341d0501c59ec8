//! `suslab`: sample configuration-model graphs, measure them, and compare with the limits.

mod assertions;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "suslab", version, about = "Susceptibility of configuration-model random graphs")]
struct Cli {
    /// Worker threads for replicate loops. Results do not depend on this.
    #[arg(long, global = true, env = "SUSLAB_WORKERS", default_value_t = 1)]
    workers: usize,

    /// Check a value in the JSON output: `/json/pointer=value` or `/json/pointer=value:tolerance`.
    /// Repeatable. The exit code is 1 if any check fails.
    #[arg(long = "assert", global = true, value_name = "CHECK")]
    assertions: Vec<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a graph and write it as an edge list.
    Sample(SampleArgs),
    /// Components, susceptibility and size spectrum of an edge list.
    Measure(MeasureArgs),
    /// Limiting quantities of a degree law.
    Predict(PredictArgs),
    /// Monte Carlo estimate of the branching-process modified susceptibility.
    Bp(BpArgs),
    /// Run an experiment.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Debug, Args)]
struct SampleArgs {
    /// Degree law (JSON).
    #[arg(long, conflicts_with = "seq", requires = "n")]
    dist: Option<PathBuf>,
    /// Number of vertices realized from `--dist`.
    #[arg(long)]
    n: Option<usize>,
    /// Degree sequence file with `degree count` lines.
    #[arg(long, required_unless_present = "dist")]
    seq: Option<PathBuf>,
    /// Reject multigraphs until a simple graph appears.
    #[arg(long)]
    simple: bool,
    #[arg(long, default_value_t = suslab_core::sampler::DEFAULT_MAX_ATTEMPTS)]
    max_attempts: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Output file; stdout if absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MeasureArgs {
    /// Edge list as written by `sample`.
    #[arg(long)]
    edges: PathBuf,
    /// Write `k,N_k` rows here.
    #[arg(long)]
    spectrum: Option<PathBuf>,
    /// Write `component_id,size` rows here.
    #[arg(long)]
    sizes: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long)]
    dist: PathBuf,
}

#[derive(Debug, Args)]
struct BpArgs {
    #[arg(long)]
    dist: PathBuf,
    #[arg(long, default_value_t = 100_000)]
    reps: usize,
    /// Runs reaching this many individuals count as surviving.
    #[arg(long, default_value_t = suslab_core::branching::DEFAULT_CAP)]
    cap: u64,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum ExperimentCommand {
    Convergence(SpecArgs),
    Duality(SpecArgs),
    Sweep(SweepArgs),
    Pathbound(SpecArgs),
    Counterexamples(SpecArgs),
}

#[derive(Debug, Args)]
struct SpecArgs {
    /// Experiment file (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Write `<prefix>.json` and `<prefix>.csv`; overrides the file's `output`.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Sub,
    Super,
    Both,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Experiment file; alternatively give `--h`.
    #[arg(long, required_unless_present = "h", conflicts_with = "h")]
    spec: Option<PathBuf>,
    /// Base law `h` (JSON), supercritical on its own.
    #[arg(long)]
    h: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "both")]
    side: SideArg,
    /// Smallest and largest `|lambda - lambda_c|`.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], default_values_t = [1e-4, 1e-2])]
    window: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    points: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(summary) => {
            if !summary.is_null() {
                commands::write_stdout(&(serde_json::to_string_pretty(&summary).expect("json") + "\n"));
            }
            match assertions::check_all(&summary, &cli.assertions) {
                Ok(()) => ExitCode::SUCCESS,
                Err(failures) => {
                    commands::emit_error("assertion", &failures.join("; "));
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            let (kind, code) = commands::classify_error(&e);
            commands::emit_error(kind, &format!("{e:#}"));
            ExitCode::from(code)
        }
    }
}
