//! JSON experiment files and their CSV/JSON reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::sweep::{sweep_and_fit, Side};
use super::{convergence_experiment, counterexample_suite, duality_experiment, path_bound_audit};
use crate::{DegreeDistribution, DegreeSequence, DistSpec, Error, Extended, Result};

/// Which side(s) of `lambda_c` a sweep covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SideChoice {
    Sub,
    Super,
    #[default]
    Both,
}

impl SideChoice {
    pub fn sides(self) -> Vec<Side> {
        match self {
            SideChoice::Sub => vec![Side::Subcritical],
            SideChoice::Super => vec![Side::Supercritical],
            SideChoice::Both => vec![Side::Subcritical, Side::Supercritical],
        }
    }
}

fn default_window() -> (f64, f64) {
    (1e-4, 1e-2)
}
fn default_points() -> usize {
    20
}
fn default_ell_max() -> usize {
    4
}
fn default_a() -> f64 {
    1.0
}
fn default_counter_n() -> usize {
    10_000
}
fn default_counter_reps() -> usize {
    1000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "experiment", rename_all = "snake_case")]
pub enum ExperimentSpec {
    Convergence {
        dist: DistSpec,
        n_grid: Vec<usize>,
        reps: usize,
        seed: u64,
        #[serde(default)]
        simple: bool,
    },
    Duality {
        dist: DistSpec,
        n: usize,
        reps: usize,
        seed: u64,
    },
    Sweep {
        h: DistSpec,
        #[serde(default)]
        side: SideChoice,
        #[serde(default = "default_window")]
        window: (f64, f64),
        #[serde(default = "default_points")]
        points: usize,
    },
    Pathbound {
        /// `degree -> number of vertices`
        sequence: BTreeMap<String, usize>,
        reps: usize,
        #[serde(default = "default_ell_max")]
        ell_max: usize,
        seed: u64,
    },
    Counterexamples {
        #[serde(default = "default_a")]
        a: f64,
        #[serde(default = "default_counter_n")]
        n: usize,
        #[serde(default = "default_counter_reps")]
        reps: usize,
        seed: u64,
    },
}

impl ExperimentSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentSpec::Convergence { .. } => "convergence",
            ExperimentSpec::Duality { .. } => "duality",
            ExperimentSpec::Sweep { .. } => "sweep",
            ExperimentSpec::Pathbound { .. } => "pathbound",
            ExperimentSpec::Counterexamples { .. } => "counterexamples",
        }
    }
}

/// Contents of an experiment file: the spec plus an optional output prefix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentFile {
    #[serde(flatten)]
    pub spec: ExperimentSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl ExperimentFile {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// JSON summary and CSV table of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    pub summary: Value,
    pub csv: String,
}

fn cell(x: Extended) -> String {
    match x {
        Extended::Finite(v) => v.to_string(),
        Extended::Infinite => String::new(),
    }
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn to_csv(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn parse_counts(raw: &BTreeMap<String, usize>) -> Result<BTreeMap<u64, usize>> {
    raw.iter()
        .map(|(k, &c)| {
            k.trim()
                .parse::<u64>()
                .map(|k| (k, c))
                .map_err(|_| Error::InvalidSequence(format!("degree key `{k}` is not an integer")))
        })
        .collect()
}

/// Runs one experiment with `workers` threads.
pub fn run_spec(spec: &ExperimentSpec, workers: usize) -> Result<ExperimentOutput> {
    let (report, csv) = match spec {
        ExperimentSpec::Convergence {
            dist,
            n_grid,
            reps,
            seed,
            simple,
        } => {
            let dist = DegreeDistribution::from_spec(dist)?;
            let rows = convergence_experiment(&dist, n_grid, *reps, *seed, *simple, workers)?;
            let csv = to_csv(
                &[
                    "n", "reps", "mu_n", "nu_n", "chi_mean", "chi_stderr", "chi_hat_mean", "chi_hat_stderr",
                    "giant_mean", "giant_stderr", "chi_inf", "chi_hat_inf", "finite_n", "delta_chi_inf",
                    "delta_chi_finite_n",
                ],
                rows.iter()
                    .map(|r| {
                        vec![
                            r.n.to_string(),
                            r.reps.to_string(),
                            r.mu_n.to_string(),
                            r.nu_n.to_string(),
                            r.chi.mean.to_string(),
                            r.chi.stderr.to_string(),
                            r.chi_hat.mean.to_string(),
                            r.chi_hat.stderr.to_string(),
                            r.giant_fraction.mean.to_string(),
                            r.giant_fraction.stderr.to_string(),
                            cell(r.chi_inf),
                            cell(r.chi_hat_inf),
                            cell(r.finite_n),
                            r.delta_chi_inf.to_string(),
                            r.delta_chi_finite_n.to_string(),
                        ]
                    })
                    .collect(),
            )?;
            (serde_json::to_value(&rows)?, csv)
        }
        ExperimentSpec::Duality { dist, n, reps, seed } => {
            let dist = DegreeDistribution::from_spec(dist)?;
            let report = duality_experiment(&dist, *n, *reps, *seed, workers)?;
            let csv = to_csv(
                &[
                    "replicate", "giant_fraction", "second_fraction", "residual_n", "residual_tv", "residual_chi",
                    "residual_class", "chi_hat",
                ],
                report
                    .replicates
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        vec![
                            i.to_string(),
                            r.giant_fraction.to_string(),
                            r.second_fraction.to_string(),
                            r.residual_n.to_string(),
                            r.residual_tv.to_string(),
                            r.residual_chi.to_string(),
                            opt(r.residual_class.map(|c| serde_json::to_value(c).expect("enum").as_str().unwrap_or("").to_string())),
                            r.chi_hat.to_string(),
                        ]
                    })
                    .collect(),
            )?;
            (serde_json::to_value(&report)?, csv)
        }
        ExperimentSpec::Sweep {
            h,
            side,
            window,
            points,
        } => {
            let h = DegreeDistribution::from_spec(h)?;
            let fits = side
                .sides()
                .into_iter()
                .map(|s| sweep_and_fit(&h, s, *window, *points))
                .collect::<Result<Vec<_>>>()?;
            let mut rows = Vec::new();
            for fit in &fits {
                let side = serde_json::to_value(fit.side)?;
                for p in &fit.points {
                    rows.push(vec![
                        side.as_str().unwrap_or_default().to_string(),
                        p.lambda.to_string(),
                        p.distance.to_string(),
                        p.mu_lambda.to_string(),
                        p.nu_lambda.to_string(),
                        p.kappa_lambda.to_string(),
                        cell(p.chi_inf),
                        cell(p.chi_hat_inf),
                    ]);
                }
            }
            let csv = to_csv(
                &["side", "lambda", "distance", "mu_lambda", "nu_lambda", "kappa_lambda", "chi_inf", "chi_hat_inf"],
                rows,
            )?;
            let summary: Vec<Value> = fits
                .iter()
                .map(|f| json!({"side": f.side, "lambda_c": f.lambda_c, "fit": f.fit, "leading_constant": f.leading_constant}))
                .collect();
            (Value::Array(summary), csv)
        }
        ExperimentSpec::Pathbound {
            sequence,
            reps,
            ell_max,
            seed,
        } => {
            let seq = DegreeSequence::from_counts(&parse_counts(sequence)?)?;
            let report = path_bound_audit(&seq, *reps, *ell_max, *seed, workers)?;
            let csv = to_csv(
                &["ell", "mean", "stderr", "bound", "slack"],
                report
                    .rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.ell.to_string(),
                            r.mean.to_string(),
                            r.stderr.to_string(),
                            r.bound.to_string(),
                            r.slack.to_string(),
                        ]
                    })
                    .collect(),
            )?;
            (serde_json::to_value(&report)?, csv)
        }
        ExperimentSpec::Counterexamples { a, n, reps, seed } => {
            let report = counterexample_suite(*a, *n, *reps, *seed, workers)?;
            let e = &report;
            let rows = vec![
                vec!["estar".into(), "chi_formula".into(), e.estar.formula.to_string(), e.estar.limit.to_string()],
                vec!["estar".into(), "chi_measured".into(), opt(e.estar.measured), e.estar.limit.to_string()],
                vec!["e2star".into(), "edge12".into(), e.e2star.edge12.mean.to_string(), e.e2star.paper_limit.to_string()],
                vec!["e2star".into(), "edge12_exact".into(), e.e2star.exact.to_string(), e.e2star.paper_limit.to_string()],
                vec![
                    "e0".into(),
                    "chi_connected".into(),
                    opt(e.e0.chi_connected.map(|m| m.mean)),
                    e.e0.limit.to_string(),
                ],
                vec!["e0".into(), "chi_formula".into(), e.e0.formula.to_string(), e.e0.limit.to_string()],
            ];
            (serde_json::to_value(&report)?, to_csv(&["example", "statistic", "value", "limit"], rows)?)
        }
    };
    Ok(ExperimentOutput {
        summary: json!({
            "experiment": spec.name(),
            "spec": spec,
            "report": report,
        }),
        csv,
    })
}
