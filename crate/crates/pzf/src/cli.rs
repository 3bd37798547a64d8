//! Command-line interface: argument parsing and subcommand execution.
//!
//! Every subcommand emits machine-readable output (JSON by default, CSV
//! where rows make sense) that embeds the seed and crate version, so any
//! report can be reproduced byte-for-byte from its own fields. Exit codes:
//! 0 success, 1 runtime failure (solver cap, disconnected graph, invalid
//! start, stall), 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bounds::{self, Mode};
use crate::engine::coupled_run;
use crate::estimate::{estimate_ept, estimate_ept_graph, estimate_ept_with, estimate_tail};
use crate::exact::{
    exact_ept_capped, exact_ept_graph_capped, exact_throttling_capped, DEFAULT_CAP, HARD_CAP,
};
use crate::graph::{self, center_vertex, radius, FamilySpec, Graph};
use crate::modified::run_modified_many;
use crate::rng::{derive_seed, DOMAIN_CELL, DOMAIN_TRIAL};
use crate::state::ColorState;
use crate::structure::best_cornerstone;
use crate::{Error, Result};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5EED;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A fully parsed invocation.
#[derive(Parser, Debug)]
#[command(
    name = "pzf",
    version,
    about = "Probabilistic zero forcing: simulate, solve exactly, estimate, and verify bounds"
)]
pub struct Command {
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand, Debug)]
enum Action {
    /// Generate a graph and print it (edge-list text, or JSON with --format json)
    Generate {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact expected propagation time from a start set
    Exact {
        #[command(flatten)]
        source: SourceArgs,
        /// Start vertices ("3", "0,2,5", or "best" for the argmin)
        #[arg(long)]
        start: Option<String>,
        /// Raise the exact-solver order cap (clamped to the hard cap)
        #[arg(long)]
        cap_override: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo estimate of expected propagation time
    Estimate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        start: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Per-trial step cap (default 64·n)
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Empirical tail probability P(propagation time > t)
    Tail {
        #[command(flatten)]
        source: SourceArgs,
        /// Start vertices ("3" or "0,2,5")
        #[arg(long)]
        start: String,
        /// The step count t
        #[arg(long)]
        steps: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact throttling: min over sets of |B| + ept(G,B)
    Throttle {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        cap_override: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cornerstones, g-values, and the best split
    Cornerstones {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the seven-phase modified process
    Modified {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check ept bounds for a graph, or emit the star increase tail grid
    Bounds {
        /// Family spec like "path:5" (exactly one of --graph/--file unless --grid)
        #[arg(long)]
        graph: Option<String>,
        /// Edge-list file
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        start: Option<String>,
        /// Star-tail grid range "lo:hi" (no graph needed)
        #[arg(long)]
        grid: Option<String>,
        /// Trials for Monte Carlo mode (used when n exceeds the exact cap)
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        cap_override: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pathwise coupling check for nested starts on shared randomness
    CoupleCheck {
        #[command(flatten)]
        source: SourceArgs,
        /// Smaller start set, e.g. "0"
        #[arg(long)]
        start: String,
        /// Larger start set, e.g. "0,1"
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Star-chain parameter sweep: one CSV row per (r, s) cell
    Sweep {
        /// Grid like "r=2,4,8;s=8,16,32,64"
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Family spec like "path:5", "star_chain:r=2,s=10", "gnp:n=50,p=0.1,seed=7"
    #[arg(long)]
    graph: Option<String>,
    /// Edge-list file ("n m" header, then one "u v" line per edge)
    #[arg(long)]
    file: Option<PathBuf>,
}

impl SourceArgs {
    fn load(&self) -> Result<(Graph, String)> {
        load_source(&self.graph, &self.file)
    }
}

fn load_source(spec: &Option<String>, file: &Option<PathBuf>) -> Result<(Graph, String)> {
    match (spec, file) {
        (Some(text), None) => {
            let fam: FamilySpec = text.parse()?;
            Ok((fam.generate()?, text.clone()))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)?;
            Ok((graph::parse_graph(&text)?, format!("file:{}", path.display())))
        }
        _ => Err(Error::Usage(
            "exactly one of --graph or --file is required".into(),
        )),
    }
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    /// Output format (subcommand-dependent default)
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

/// Result of argument parsing: a runnable command, or help/version text
/// that should be printed with exit code 0.
#[derive(Debug)]
pub enum Parsed {
    Run(Command),
    Help(String),
}

/// Parse an argv (including the program name). Usage problems come back as
/// [`Error::Usage`] with clap's rendered message naming the offending flag.
pub fn parse_args<I>(argv: I) -> Result<Parsed>
where
    I: IntoIterator,
    I::Item: Into<OsString> + Clone,
{
    match Command::try_parse_from(argv) {
        Ok(cmd) => Ok(Parsed::Run(cmd)),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            Ok(Parsed::Help(e.render().to_string()))
        }
        Err(e) => Err(Error::Usage(e.render().to_string())),
    }
}

/// Parse and run, mapping the outcome to a process exit code.
pub fn main_with<I>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator,
    I::Item: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(Parsed::Help(text)) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Ok(Parsed::Run(cmd)) => match run_command(&cmd, out) {
            Ok(()) => 0,
            Err(Error::Usage(msg)) => {
                eprintln!("{msg}");
                2
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Err(Error::Usage(msg)) => {
            eprintln!("{msg}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn parse_vertex_set(text: &str, n: usize) -> Result<ColorState> {
    let mut vertices = Vec::new();
    for part in text.split(',') {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("invalid start vertex '{part}'")))?;
        vertices.push(v);
    }
    ColorState::from_indices(n, &vertices)
}

fn effective_cap(cap_override: Option<usize>) -> usize {
    cap_override.unwrap_or(DEFAULT_CAP).min(HARD_CAP)
}

fn emit(out_path: &Option<PathBuf>, out: &mut dyn Write, text: &str) -> Result<()> {
    match out_path {
        Some(path) => fs::write(path, text.as_bytes())?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json_line(value: &Value) -> String {
    let mut s = serde_json::to_string(value).expect("json output cannot fail");
    s.push('\n');
    s
}

fn with_meta(mut value: Value, seed: u64) -> Value {
    let obj = value.as_object_mut().expect("output is an object");
    obj.insert("seed".into(), json!(seed));
    obj.insert("version".into(), json!(VERSION));
    value
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn source_columns(label: &str) -> (String, String) {
    match label.split_once(':') {
        Some((family, params)) => (family.to_string(), params.to_string()),
        None => (label.to_string(), String::new()),
    }
}

fn reject_csv(output: &OutputArgs, subcommand: &str) -> Result<()> {
    if output.format == Some(Format::Csv) {
        return Err(Error::Usage(format!(
            "--format csv is not supported for {subcommand}"
        )));
    }
    Ok(())
}

/// Execute a parsed command, writing its report to `--out` or `out`.
pub fn run_command(cmd: &Command, out: &mut dyn Write) -> Result<()> {
    match &cmd.action {
        Action::Generate { source, output } => {
            let (g, label) = source.load()?;
            let text = match output.format {
                None => format!("{}\n", graph::serialize_graph(&g)),
                Some(Format::Json) => json_line(&json!({
                    "source": label,
                    "n": g.n(),
                    "m": g.edge_count(),
                    "edges": g.edges(),
                    "version": VERSION,
                })),
                Some(Format::Csv) => {
                    return Err(Error::Usage("--format csv is not supported for generate".into()))
                }
            };
            emit(&output.out, out, &text)
        }

        Action::Exact {
            source,
            start,
            cap_override,
            seed,
            output,
        } => {
            reject_csv(output, "exact")?;
            let (g, _) = source.load()?;
            let (ept, start_state, argmin) = match start.as_deref() {
                None | Some("best") => {
                    let (e, v) = exact_ept_graph_capped(&g, *cap_override)?;
                    (e, ColorState::singleton(g.n(), v)?, Some(v))
                }
                Some(text) => {
                    let s = parse_vertex_set(text, g.n())?;
                    (exact_ept_capped(&g, &s, *cap_override)?, s, None)
                }
            };
            let mut value = json!({
                "ept": ept,
                "start": start_state.to_hex(),
                "n": g.n(),
            });
            if let Some(v) = argmin {
                value["argmin_vertex"] = json!(v);
            }
            emit(&output.out, out, &json_line(&with_meta(value, *seed)))
        }

        Action::Estimate {
            source,
            start,
            trials,
            seed,
            steps,
            output,
        } => {
            let (g, label) = source.load()?;
            let (est, start_state, extra) = match start.as_deref() {
                None | Some("best") => {
                    let ge = estimate_ept_graph(&g, *trials, *seed)?;
                    let s = ColorState::singleton(g.n(), ge.vertex)?;
                    (ge.best, s, Some((ge.vertex, ge.restricted)))
                }
                Some(text) => {
                    let s = parse_vertex_set(text, g.n())?;
                    let est = match steps {
                        Some(cap) => estimate_ept_with(&g, &s, *trials, *seed, *cap)?,
                        None => estimate_ept(&g, &s, *trials, *seed)?,
                    };
                    (est, s, None)
                }
            };
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let mut value = serde_json::to_value(est).expect("estimate serializes");
                    value["start"] = json!(start_state.to_hex());
                    if let Some((vertex, restricted)) = extra {
                        value["argmin_vertex"] = json!(vertex);
                        value["restricted"] = json!(restricted);
                    }
                    value["version"] = json!(VERSION);
                    value["seed"] = json!(*seed);
                    json_line(&value)
                }
                Format::Csv => {
                    let (family, params) = source_columns(&label);
                    format!(
                        "family,params,start,trials,seed,mean,std,ci_low,ci_high\n{},{},{},{},{},{},{},{},{}\n",
                        csv_quote(&family),
                        csv_quote(&params),
                        start_state.to_hex(),
                        est.trials,
                        seed,
                        est.mean,
                        est.std_dev,
                        est.ci_low,
                        est.ci_high,
                    )
                }
            };
            emit(&output.out, out, &text)
        }

        Action::Tail {
            source,
            start,
            steps,
            trials,
            seed,
            output,
        } => {
            reject_csv(output, "tail")?;
            let (g, _) = source.load()?;
            let s = parse_vertex_set(start, g.n())?;
            let tail = estimate_tail(&g, &s, *steps, *trials, *seed)?;
            let mut value = serde_json::to_value(tail).expect("tail serializes");
            value["start"] = json!(s.to_hex());
            value["version"] = json!(VERSION);
            emit(&output.out, out, &json_line(&value))
        }

        Action::Throttle {
            source,
            cap_override,
            seed,
            output,
        } => {
            reject_csv(output, "throttle")?;
            let (g, _) = source.load()?;
            let (value, argmin) = exact_throttling_capped(&g, *cap_override)?;
            let report = json!({
                "thpzf": value,
                "argmin": argmin.to_string(),
                "argmin_hex": argmin.to_hex(),
                "n": g.n(),
            });
            emit(&output.out, out, &json_line(&with_meta(report, *seed)))
        }

        Action::Cornerstones { source, seed, output } => {
            reject_csv(output, "cornerstones")?;
            let (g, _) = source.load()?;
            let report = best_cornerstone(&g)?;
            let value = serde_json::to_value(&report).expect("report serializes");
            emit(&output.out, out, &json_line(&with_meta(value, *seed)))
        }

        Action::Modified {
            source,
            trials,
            seed,
            output,
        } => {
            let (g, _) = source.load()?;
            let records = run_modified_many(&g, (*trials).max(1), *seed)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json if records.len() == 1 => {
                    let value = serde_json::to_value(&records[0]).expect("record serializes");
                    json_line(&with_meta(value, *seed))
                }
                Format::Json => {
                    let value = json!({
                        "runs": records,
                        "trials": records.len(),
                    });
                    json_line(&with_meta(value, *seed))
                }
                Format::Csv => {
                    let mut text =
                        String::from("trial,seed,chosen,s_size,t_size,phase4,phase6,phase7,total,stalled\n");
                    for (i, r) in records.iter().enumerate() {
                        text.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{},{}\n",
                            i,
                            r.seed,
                            csv_quote(&r.chosen.to_string()),
                            r.s_set.count_ones(),
                            r.t_set.count_ones(),
                            r.phase4_steps,
                            r.phase6_steps,
                            r.phase7_steps,
                            r.total_steps,
                            r.stalled,
                        ));
                    }
                    text
                }
            };
            emit(&output.out, out, &text)?;
            if let Some(stalled) = records.iter().find(|r| r.stalled) {
                let why = stalled.diagnostic.clone().unwrap_or_default();
                return Err(Error::Stalled(format!("seed {}: {why}", stalled.seed)));
            }
            Ok(())
        }

        Action::Bounds {
            graph: spec,
            file,
            start,
            grid,
            trials,
            cap_override,
            seed,
            output,
        } => {
            if let Some(range) = grid {
                if spec.is_some() || file.is_some() {
                    return Err(Error::Usage(
                        "--grid does not take --graph or --file".into(),
                    ));
                }
                let (lo, hi) = parse_range(range)?;
                let csv = bounds::star_tail_csv(lo, hi)?;
                return emit(&output.out, out, &csv);
            }
            let (g, _) = load_source(spec, file)?;
            let cap = effective_cap(*cap_override);
            let mode = if g.n() <= cap {
                Mode::Exact
            } else {
                Mode::MonteCarlo {
                    trials: *trials,
                    seed: *seed,
                }
            };
            let s = match start.as_deref() {
                None | Some("best") => match mode {
                    Mode::Exact => {
                        let (_, v) = exact_ept_graph_capped(&g, *cap_override)?;
                        ColorState::singleton(g.n(), v)?
                    }
                    Mode::MonteCarlo { .. } => ColorState::singleton(g.n(), center_vertex(&g)?)?,
                },
                Some(text) => parse_vertex_set(text, g.n())?,
            };
            let report = bounds::verify_bounds(&g, &s, mode)?;
            let text = match output.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let value = serde_json::to_value(&report).expect("report serializes");
                    json_line(&with_meta(value, *seed))
                }
                Format::Csv => {
                    let mut text = String::from("name,bound_value,observed_value,satisfied\n");
                    for e in &report.entries {
                        text.push_str(&format!(
                            "{},{},{},{}\n",
                            e.name, e.bound_value, e.observed_value, e.satisfied
                        ));
                    }
                    text
                }
            };
            emit(&output.out, out, &text)
        }

        Action::CoupleCheck {
            source,
            start,
            target,
            steps,
            trials,
            seed,
            output,
        } => {
            reject_csv(output, "couple-check")?;
            let (g, _) = source.load()?;
            let s = parse_vertex_set(start, g.n())?;
            let t = parse_vertex_set(target, g.n())?;
            let violations: u64 = (0..*trials)
                .into_par_iter()
                .map(|i| {
                    let trial_seed = derive_seed(*seed, DOMAIN_TRIAL, i);
                    match coupled_run(&g, &s, &t, trial_seed, *steps) {
                        Ok((_, _, ok)) => (!ok) as u64,
                        Err(_) => 1,
                    }
                })
                .sum();
            // surface precondition problems (non-nested starts etc.) directly
            coupled_run(&g, &s, &t, *seed, 1)?;
            let value = json!({
                "subset_ok": violations == 0,
                "violations": violations,
                "trials": trials,
                "steps": steps,
                "start": s.to_hex(),
                "target": t.to_hex(),
            });
            emit(&output.out, out, &json_line(&with_meta(value, *seed)))
        }

        Action::Sweep {
            grid,
            trials,
            seed,
            output,
        } => {
            let (rs, ss) = parse_sweep_grid(grid)?;
            let cells: Vec<(usize, usize)> = rs
                .iter()
                .flat_map(|&r| ss.iter().map(move |&s| (r, s)))
                .collect();
            let rows: Vec<Result<Value>> = cells
                .par_iter()
                .enumerate()
                .map(|(idx, &(r, s))| sweep_cell(r, s, *trials, *seed, idx as u64))
                .collect();
            let rows = rows.into_iter().collect::<Result<Vec<Value>>>()?;
            let text = match output.format.unwrap_or(Format::Csv) {
                Format::Csv => {
                    let mut text = format!("# pzf {VERSION} seed={seed}\n");
                    text.push_str(
                        "family,params,start,trials,seed,mean,std,ci_low,ci_high,radius,ratio\n",
                    );
                    for row in &rows {
                        text.push_str(&format!(
                            "{},{},{},{},{},{},{},{},{},{},{}\n",
                            row["family"].as_str().unwrap(),
                            csv_quote(row["params"].as_str().unwrap()),
                            row["start"].as_str().unwrap(),
                            row["trials"],
                            row["seed"],
                            row["mean"],
                            row["std"],
                            row["ci_low"],
                            row["ci_high"],
                            row["radius"],
                            row["ratio"],
                        ));
                    }
                    text
                }
                Format::Json => json_line(&with_meta(json!({ "cells": rows }), *seed)),
            };
            emit(&output.out, out, &text)
        }
    }
}

fn sweep_cell(r: usize, s: usize, trials: u64, master_seed: u64, idx: u64) -> Result<Value> {
    let spec = FamilySpec::StarChain { r, s };
    let g = spec.generate()?;
    let start_vertex = center_vertex(&g)?;
    let start = ColorState::singleton(g.n(), start_vertex)?;
    let cell_seed = derive_seed(master_seed, DOMAIN_CELL, idx);
    let est = estimate_ept(&g, &start, trials, cell_seed)?;
    let rad = radius(&g)?;
    let ratio = est.mean / (rad as f64 * (g.n() as f64 / rad as f64).ln());
    Ok(json!({
        "family": "star_chain",
        "params": format!("r={r},s={s}"),
        "start": start.to_hex(),
        "trials": est.trials,
        "seed": cell_seed,
        "mean": est.mean,
        "std": est.std_dev,
        "ci_low": est.ci_low,
        "ci_high": est.ci_high,
        "radius": rad,
        "ratio": ratio,
    }))
}

fn parse_range(text: &str) -> Result<(usize, usize)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::Usage(format!("--grid expects \"lo:hi\", got '{text}'")))?;
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Usage(format!("--grid bound '{s}' is not an integer")))
    };
    Ok((parse(lo)?, parse(hi)?))
}

fn parse_sweep_grid(text: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut rs = None;
    let mut ss = None;
    for part in text.split(';') {
        let (key, values) = part.split_once('=').ok_or_else(|| {
            Error::Usage(format!("--grid expects \"r=...;s=...\", got '{part}'"))
        })?;
        let list = values
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Usage(format!("--grid value '{v}' is not an integer")))
            })
            .collect::<Result<Vec<usize>>>()?;
        if list.is_empty() {
            return Err(Error::Usage(format!("--grid key '{key}' has no values")));
        }
        match key.trim() {
            "r" => rs = Some(list),
            "s" => ss = Some(list),
            other => return Err(Error::Usage(format!("--grid has unknown key '{other}'"))),
        }
    }
    match (rs, ss) {
        (Some(r), Some(s)) => Ok((r, s)),
        _ => Err(Error::Usage("--grid needs both r= and s= lists".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        match parse_args(std::iter::once("pzf").chain(args.iter().copied())).unwrap() {
            Parsed::Run(cmd) => cmd,
            Parsed::Help(_) => panic!("expected a runnable command"),
        }
    }

    fn run_to_string(args: &[&str]) -> String {
        let cmd = parse(args);
        let mut buf = Vec::new();
        run_command(&cmd, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    fn run_json(args: &[&str]) -> Value {
        serde_json::from_str(&run_to_string(args)).unwrap()
    }

    #[test]
    fn parses_typical_invocations() {
        let cmd = parse(&["exact", "--graph", "path:5", "--start", "2"]);
        match cmd.action {
            Action::Exact { source, start, .. } => {
                assert_eq!(source.graph.as_deref(), Some("path:5"));
                assert_eq!(start.as_deref(), Some("2"));
            }
            other => panic!("wrong action: {other:?}"),
        }
        let cmd = parse(&[
            "estimate",
            "--graph",
            "star_chain:r=2,s=10",
            "--trials",
            "100000",
            "--seed",
            "7",
        ]);
        match cmd.action {
            Action::Estimate { trials, seed, .. } => {
                assert_eq!(trials, 100_000);
                assert_eq!(seed, 7);
            }
            other => panic!("wrong action: {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_flags_and_missing_source() {
        let err = parse_args(["pzf", "exact", "--graph", "path:3", "--bogus"]).unwrap_err();
        match err {
            Error::Usage(msg) => assert!(msg.contains("--bogus"), "{msg}"),
            other => panic!("expected usage error, got {other:?}"),
        }
        assert!(matches!(
            parse_args(["pzf", "exact"]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            parse_args(["pzf", "exact", "--graph", "path:3", "--file", "x"]),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn help_is_reported_for_exit_zero() {
        assert!(matches!(
            parse_args(["pzf", "--help"]).unwrap(),
            Parsed::Help(_)
        ));
    }

    #[test]
    fn exact_path3_reports_two() {
        let v = run_json(&["exact", "--graph", "path:3", "--start", "0"]);
        assert_eq!(v["ept"], 2.0);
        assert_eq!(v["start"], "0x1");
        assert_eq!(v["version"], VERSION);
        assert_eq!(v["seed"], DEFAULT_SEED);
    }

    #[test]
    fn exact_defaults_to_the_argmin() {
        let v = run_json(&["exact", "--graph", "path:3"]);
        assert_eq!(v["ept"], 2.0);
        assert_eq!(v["argmin_vertex"], 0);
    }

    #[test]
    fn throttle_reports_the_path3_minimum() {
        let v = run_json(&["throttle", "--graph", "path:3"]);
        assert_eq!(v["thpzf"], 3.0);
        assert_eq!(v["argmin"], "{0}");
    }

    #[test]
    fn generate_emits_canonical_text() {
        let text = run_to_string(&["generate", "--graph", "path:3"]);
        assert_eq!(text, "3 2\n0 1\n1 2\n");
        let v = run_json(&["generate", "--graph", "path:3", "--format", "json"]);
        assert_eq!(v["n"], 3);
        assert_eq!(v["m"], 2);
    }

    #[test]
    fn estimate_is_deterministic_and_embeds_meta() {
        let args = [
            "estimate",
            "--graph",
            "path:4",
            "--start",
            "1",
            "--trials",
            "2000",
            "--seed",
            "9",
        ];
        let a = run_to_string(&args);
        let b = run_to_string(&args);
        assert_eq!(a, b, "byte-identical reruns");
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["seed"], 9);
        assert_eq!(v["trials"], 2000);
        assert!(v["mean"].as_f64().unwrap() > 1.0);
    }

    #[test]
    fn estimate_csv_row_shape() {
        let text = run_to_string(&[
            "estimate",
            "--graph",
            "path:3",
            "--start",
            "1",
            "--trials",
            "500",
            "--format",
            "csv",
        ]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "family,params,start,trials,seed,mean,std,ci_low,ci_high");
        assert!(lines[1].starts_with("path,5".replace('5', "3").as_str()));
        assert_eq!(lines.len(), 2);
    }

    #[test]
    fn tail_reports_probability() {
        let v = run_json(&[
            "tail", "--graph", "path:3", "--start", "1", "--steps", "1", "--trials", "4000",
        ]);
        let p = v["probability"].as_f64().unwrap();
        assert!((p - 0.75).abs() < 0.05, "{p}");
    }

    #[test]
    fn cornerstones_report_path4() {
        let v = run_json(&["cornerstones", "--graph", "path:4"]);
        assert_eq!(v["best"], json!({"pair": [1, 2]}));
        assert_eq!(v["best_g"], 1);
        assert_eq!(v["s_set"], "0x1");
        assert_eq!(v["t_set"], "0x8");
    }

    #[test]
    fn modified_single_run_record() {
        let v = run_json(&["modified", "--graph", "path:4", "--seed", "3"]);
        assert_eq!(v["stalled"], false);
        assert_eq!(v["phase6_steps"], 0);
        assert!(v["total_steps"].as_u64().unwrap() >= 1);
    }

    #[test]
    fn modified_corpus_csv() {
        let text = run_to_string(&[
            "modified", "--graph", "path:4", "--trials", "3", "--format", "csv",
        ]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(
            lines[0],
            "trial,seed,chosen,s_size,t_size,phase4,phase6,phase7,total,stalled"
        );
        assert_eq!(lines.len(), 4);
        assert!(lines[1].contains("\"(1,2)\""));
    }

    #[test]
    fn bounds_report_on_path5() {
        let v = run_json(&["bounds", "--graph", "path:5", "--start", "2"]);
        let entries = v["entries"].as_array().unwrap();
        assert!(entries.iter().all(|e| e["satisfied"] == true));
        assert!(entries.iter().any(|e| e["name"] == "path_closed_form"));
        assert_eq!(v["mode"], "exact");
    }

    #[test]
    fn bounds_star_grid_csv() {
        let text = run_to_string(&["bounds", "--grid", "3:5"]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,k,threshold,tail");
        assert_eq!(lines.len(), 1 + 3 + 4 + 5);
    }

    #[test]
    fn couple_check_path6_is_clean() {
        let v = run_json(&[
            "couple-check",
            "--graph",
            "path:6",
            "--start",
            "0",
            "--target",
            "0,1",
            "--steps",
            "20",
            "--trials",
            "2000",
        ]);
        assert_eq!(v["subset_ok"], true);
        assert_eq!(v["violations"], 0);
    }

    #[test]
    fn couple_check_rejects_non_nested_starts() {
        let cmd = parse(&[
            "couple-check",
            "--graph",
            "path:6",
            "--start",
            "2",
            "--target",
            "0,1",
        ]);
        let mut buf = Vec::new();
        assert!(run_command(&cmd, &mut buf).is_err());
    }

    #[test]
    fn sweep_rows_follow_grid_order() {
        let text = run_to_string(&[
            "sweep",
            "--grid",
            "r=1;s=2,3",
            "--trials",
            "200",
            "--seed",
            "5",
        ]);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# pzf "));
        assert_eq!(
            lines[1],
            "family,params,start,trials,seed,mean,std,ci_low,ci_high,radius,ratio"
        );
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("star_chain,\"r=1,s=2\","));
        assert!(lines[3].starts_with("star_chain,\"r=1,s=3\","));
    }

    #[test]
    fn sweep_grid_parsing_errors_are_usage_errors() {
        for bad in ["r=2", "s=3", "r=2;s=", "r=2;s=a", "q=1;s=2"] {
            let cmd = parse(&["sweep", "--grid", bad]);
            let mut buf = Vec::new();
            assert!(
                matches!(run_command(&cmd, &mut buf), Err(Error::Usage(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn cap_violations_surface_as_runtime_errors() {
        let cmd = parse(&["exact", "--graph", "path:30"]);
        let mut buf = Vec::new();
        match run_command(&cmd, &mut buf) {
            Err(Error::CapExceeded { n: 30, cap: 16 }) => {}
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn out_flag_writes_a_file() {
        let dir = std::env::temp_dir().join("pzf-cli-test");
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("exact.json");
        let _ = fs::remove_file(&path);
        let cmd = parse(&[
            "exact",
            "--graph",
            "path:3",
            "--start",
            "0",
            "--out",
            path.to_str().unwrap(),
        ]);
        let mut buf = Vec::new();
        run_command(&cmd, &mut buf).unwrap();
        assert!(buf.is_empty(), "nothing on stdout when --out is used");
        let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(v["ept"], 2.0);
    }

    #[test]
    fn invalid_start_is_a_runtime_error() {
        let cmd = parse(&["exact", "--graph", "path:3", "--start", "7"]);
        let mut buf = Vec::new();
        match run_command(&cmd, &mut buf) {
            Err(Error::BadVertex { id: 7, n: 3 }) => {}
            other => panic!("expected bad vertex, got {other:?}"),
        }
    }
}
