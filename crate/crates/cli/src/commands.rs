use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use suslab_core::branching::estimate_chi_hat;
use suslab_core::components::{components, modified_susceptibility, susceptibility};
use suslab_core::experiment::spec::{run_spec, ExperimentFile, ExperimentSpec, SideChoice};
use suslab_core::io::{read_edge_list, write_edge_list};
use suslab_core::sampler::{sample_multigraph, sample_simple};
use suslab_core::{AnalyticsReport, DegreeDistribution, DegreeSequence, DistSpec, SeededRng};

use crate::{BpArgs, Cli, Command, ExperimentCommand, MeasureArgs, PredictArgs, SampleArgs, SideArg, SpecArgs, SweepArgs};

pub fn run(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Sample(args) => sample(args),
        Command::Measure(args) => measure(args),
        Command::Predict(args) => predict(args),
        Command::Bp(args) => bp(args, cli.workers),
        Command::Experiment(cmd) => experiment(cmd, cli.workers),
    }
}

/// Writes to stdout, treating a closed pipe as a normal end of output.
pub fn write_stdout(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("{}", json!({"error": {"kind": "io", "message": e.to_string()}}));
        }
    }
}

pub fn emit_error(kind: &str, message: &str) {
    eprintln!("{}", json!({"error": {"kind": kind, "message": message}}));
}

pub fn classify_error(e: &anyhow::Error) -> (&'static str, u8) {
    if let Some(e) = e.downcast_ref::<suslab_core::Error>() {
        (e.kind(), 2)
    } else if e.downcast_ref::<std::io::Error>().is_some() {
        ("io", 2)
    } else if e.downcast_ref::<serde_json::Error>().is_some() {
        ("json", 2)
    } else {
        ("invalid_argument", 2)
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A tagged law, or a bare `{"degree": probability}` table.
fn load_dist(path: &Path) -> Result<DegreeDistribution> {
    let text = read(path)?;
    let spec = match serde_json::from_str::<DistSpec>(&text) {
        Ok(spec) => spec,
        Err(tagged) => {
            let raw: BTreeMap<String, f64> = serde_json::from_str(&text)
                .map_err(|_| tagged)
                .with_context(|| format!("parsing {}", path.display()))?;
            let mut p = BTreeMap::new();
            for (k, v) in raw {
                let k: u64 = k
                    .trim()
                    .parse()
                    .with_context(|| format!("degree key `{k}` in {} is not an integer", path.display()))?;
                p.insert(k, v);
            }
            DistSpec::Explicit { p }
        }
    };
    Ok(DegreeDistribution::from_spec(&spec)?)
}

fn sample(args: &SampleArgs) -> Result<Value> {
    let seq = match (&args.dist, &args.seq) {
        (Some(dist), None) => {
            let n = args.n.context("--dist needs --n")?;
            DegreeSequence::realize(&load_dist(dist)?, n)?
        }
        (None, Some(path)) => DegreeSequence::parse(&read(path)?)?,
        _ => bail!("give exactly one of --dist or --seq"),
    };
    let rng = SeededRng::new(args.seed, args.stream);
    let (graph, attempts) = if args.simple {
        let s = sample_simple(&seq, rng, args.max_attempts)?;
        (s.graph, s.attempts)
    } else {
        (sample_multigraph(&seq, rng), 1)
    };
    let text = write_edge_list(&graph, Some(rng), Some(&seq));
    match &args.output {
        None => {
            write_stdout(&text);
            Ok(Value::Null)
        }
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            Ok(json!({
                "output": path.display().to_string(),
                "n": graph.n(),
                "m": graph.m(),
                "loops": graph.loops(),
                "multi_pairs": graph.multi_pairs(),
                "attempts": attempts,
                "seed": args.seed,
                "stream": args.stream,
            }))
        }
    }
}

fn measure(args: &MeasureArgs) -> Result<Value> {
    let g = read_edge_list(&read(&args.edges)?)?;
    let s = components(&g);
    if let Some(path) = &args.spectrum {
        s.write_spectrum_csv(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?)?;
    }
    if let Some(path) = &args.sizes {
        s.write_sizes_csv(fs::File::create(path).with_context(|| format!("creating {}", path.display()))?)?;
    }
    let spectrum: BTreeMap<String, usize> = s.spectrum().iter().map(|(k, v)| (k.to_string(), *v)).collect();
    Ok(json!({
        "n": g.n(),
        "m": g.m(),
        "loops": g.loops(),
        "multi_pairs": g.multi_pairs(),
        "components": s.component_count(),
        "largest": s.largest_size(),
        "second": s.second_size(),
        "chi": susceptibility(&s),
        "chi_hat": modified_susceptibility(&s),
        "spectrum": spectrum,
    }))
}

fn predict(args: &PredictArgs) -> Result<Value> {
    let report = AnalyticsReport::compute(&load_dist(&args.dist)?)?;
    Ok(serde_json::to_value(report)?)
}

fn bp(args: &BpArgs, workers: usize) -> Result<Value> {
    let estimate = estimate_chi_hat(&load_dist(&args.dist)?, args.reps, args.cap, args.seed, workers)?;
    Ok(serde_json::to_value(estimate)?)
}

fn experiment(cmd: &ExperimentCommand, workers: usize) -> Result<Value> {
    let (spec, output) = match cmd {
        ExperimentCommand::Convergence(a) => load_spec(a, "convergence")?,
        ExperimentCommand::Duality(a) => load_spec(a, "duality")?,
        ExperimentCommand::Pathbound(a) => load_spec(a, "pathbound")?,
        ExperimentCommand::Counterexamples(a) => load_spec(a, "counterexamples")?,
        ExperimentCommand::Sweep(a) => sweep_spec(a)?,
    };
    let out = run_spec(&spec, workers)?;
    if let Some(prefix) = output {
        let json_path = format!("{prefix}.json");
        let csv_path = format!("{prefix}.csv");
        fs::write(&json_path, serde_json::to_string_pretty(&out.summary)? + "\n")
            .with_context(|| format!("writing {json_path}"))?;
        fs::write(&csv_path, &out.csv).with_context(|| format!("writing {csv_path}"))?;
    }
    Ok(out.summary)
}

fn load_spec(args: &SpecArgs, expected: &str) -> Result<(ExperimentSpec, Option<String>)> {
    let file = ExperimentFile::parse(&read(&args.spec)?).with_context(|| format!("parsing {}", args.spec.display()))?;
    if file.spec.name() != expected {
        return Err(suslab_core::Error::InvalidArgument(format!(
            "{} describes a `{}` experiment, not `{expected}`",
            args.spec.display(),
            file.spec.name()
        ))
        .into());
    }
    let output = args.output.as_ref().map(|p| p.display().to_string()).or(file.output);
    Ok((file.spec, output))
}

fn sweep_spec(args: &SweepArgs) -> Result<(ExperimentSpec, Option<String>)> {
    if let Some(spec) = &args.spec {
        return load_spec(
            &SpecArgs {
                spec: spec.clone(),
                output: args.output.clone(),
            },
            "sweep",
        );
    }
    let path = args.h.as_ref().context("--h or --spec is required")?;
    let h = load_dist(path)?;
    let side = match args.side {
        SideArg::Sub => SideChoice::Sub,
        SideArg::Super => SideChoice::Super,
        SideArg::Both => SideChoice::Both,
    };
    let spec = ExperimentSpec::Sweep {
        h: h.spec().clone(),
        side,
        window: (args.window[0], args.window[1]),
        points: args.points,
    };
    Ok((spec, args.output.as_ref().map(|p| p.display().to_string())))
}
