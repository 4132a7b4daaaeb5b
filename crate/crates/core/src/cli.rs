//! Command-line front end. The binary only calls [`main_with`].

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::generate::{generate, Family};
use crate::graph::MultiGraph;
use crate::io::{parse_graph, to_dot, write_graph};
use crate::pipeline::{
    run_pipeline, run_pipeline_with_snapshots, OracleMode, Phase, PhaseError, PipelineConfig, RunReport,
};
use crate::reduce::ReductionConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twoecss", version, about = "Small 2-edge-connected spanning subgraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a graph file (or stdin, or a generated instance) and print a JSON report.
    Solve(SolveArgs),
    /// Print a generated instance in the text format.
    Generate(GenerateArgs),
    /// Solve one generated instance per seed and print a JSON array.
    Batch(BatchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    #[value(name = "random-2ec")]
    Random2ec,
    GluedCliques,
    CycleRing,
    StructuredRandom,
}

#[derive(Args, Debug, Clone)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    #[arg(long, default_value_t = 12)]
    pub n: usize,
    #[arg(long, default_value_t = 0.3)]
    pub p: f64,
    #[arg(long, default_value_t = 10)]
    pub a: usize,
    #[arg(long, default_value_t = 10)]
    pub b: usize,
    #[arg(long, default_value_t = 3)]
    pub shared: usize,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value_t = 4)]
    pub cyclen: usize,
    #[arg(long, default_value_t = 3)]
    pub cycles: usize,
}

impl FamilyArgs {
    pub fn family(&self) -> Option<Family> {
        Some(match self.family? {
            FamilyName::Random2ec => Family::RandomTwoEc { n: self.n, p: self.p },
            FamilyName::GluedCliques => Family::GluedCliques { a: self.a, b: self.b, shared: self.shared },
            FamilyName::CycleRing => Family::CycleRing { k: self.k, cyclen: self.cyclen },
            FamilyName::StructuredRandom => Family::StructuredRandom { n: self.n, cycles: self.cycles },
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Off,
    Auto,
    Force,
}

#[derive(Args, Debug, Clone)]
pub struct SolverArgs {
    #[arg(long, default_value = "5/4")]
    pub alpha: Rational64,
    #[arg(long, default_value = "1/24")]
    pub epsilon: Rational64,
    /// Largest vertex count solved exactly inside the reduction.
    #[arg(long = "enum-budget", default_value_t = 12)]
    pub enum_budget: usize,
    #[arg(long, value_enum, default_value_t = OracleArg::Auto)]
    pub oracle: OracleArg,
    /// Stop at the first phase error instead of repairing the leaf.
    #[arg(long)]
    pub strict: bool,
    /// Include the reduction trace in the report.
    #[arg(long)]
    pub trace: bool,
    /// Record wall times per phase (makes reports non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

impl SolverArgs {
    pub fn config(&self) -> PipelineConfig {
        PipelineConfig {
            reduction: ReductionConfig {
                alpha: self.alpha,
                epsilon: self.epsilon,
                enumeration_budget: self.enum_budget,
                ..ReductionConfig::default()
            },
            oracle: match self.oracle {
                OracleArg::Off => OracleMode::Off,
                OracleArg::Auto => OracleMode::Auto,
                OracleArg::Force => OracleMode::Force,
            },
            strict: self.strict,
            timings: self.timings,
            include_trace: self.trace,
            ..PipelineConfig::default()
        }
    }
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Graph file; `-` or nothing reads stdin unless `--family` is given.
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write one numbered DOT file per phase snapshot into this directory.
    #[arg(long = "dot-dir")]
    pub dot_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BatchArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Seeds `first-seed .. first-seed + count`.
    #[arg(long, default_value_t = 10)]
    pub count: u64,
    #[arg(long = "first-seed", default_value_t = 0)]
    pub first_seed: u64,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One batch entry: the report, or the error that stopped the run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchEntry {
    pub seed: u64,
    pub report: Option<RunReport>,
    pub error: Option<String>,
    pub exit_code: i32,
}

/// Exit code for a failed run.
pub fn exit_code(e: &PhaseError) -> i32 {
    match e.error {
        Error::Parse { .. } | Error::InvalidParameter(_) | Error::Io(_) | Error::VertexOutOfRange { .. } => EXIT_USAGE,
        Error::NotTwoEdgeConnected => EXIT_INFEASIBLE,
        Error::Infeasible(_) if e.phase == Phase::Input => EXIT_INFEASIBLE,
        _ => EXIT_INTERNAL,
    }
}

pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("twoecss: {e}");
            exit_code(&e)
        }
    }
}

fn input_error(error: Error) -> PhaseError {
    PhaseError { phase: Phase::Input, error }
}

pub fn run(cli: Cli) -> Result<i32, PhaseError> {
    match cli.command {
        Command::Generate(a) => {
            let f =
                a.family.family().ok_or_else(|| input_error(Error::InvalidParameter("--family is required".into())))?;
            let g = generate(&f, a.seed).map_err(input_error)?;
            emit(a.out.as_deref(), &write_graph(&g))?;
            Ok(EXIT_OK)
        }
        Command::Solve(a) => solve(a),
        Command::Batch(a) => batch(a),
    }
}

fn load(a: &SolveArgs) -> Result<MultiGraph, PhaseError> {
    if let Some(f) = a.family.family() {
        return generate(&f, a.seed).map_err(input_error);
    }
    let mut text = String::new();
    match a.input.as_deref() {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|e| input_error(e.into()))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| input_error(e.into()))?;
        }
    }
    parse_graph(&text).map_err(input_error)
}

fn solve(a: SolveArgs) -> Result<i32, PhaseError> {
    let g = load(&a)?;
    let cfg = a.solver.config();
    let report = match &a.dot_dir {
        Some(dir) => {
            let (report, snaps) = run_pipeline_with_snapshots(&g, &cfg)?;
            std::fs::create_dir_all(dir).map_err(|e| input_error(e.into()))?;
            for (i, s) in snaps.iter().enumerate() {
                let path = dir.join(format!("{i:03}-{}.dot", s.label));
                std::fs::write(path, to_dot(&s.graph, &s.label, Some(&s.edges))).map_err(|e| input_error(e.into()))?;
            }
            report
        }
        None => run_pipeline(&g, &cfg)?,
    };
    emit(a.out.as_deref(), &to_json(&report))?;
    Ok(if report.verified { EXIT_OK } else { EXIT_INTERNAL })
}

fn batch(a: BatchArgs) -> Result<i32, PhaseError> {
    let f = a.family.family().ok_or_else(|| input_error(Error::InvalidParameter("--family is required".into())))?;
    let cfg = a.solver.config();
    let seeds: Vec<u64> = (a.first_seed..a.first_seed + a.count).collect();
    let slots: Mutex<Vec<Option<BatchEntry>>> = Mutex::new(vec![None; seeds.len()]);
    let next = Mutex::new(0usize);
    std::thread::scope(|s| {
        for _ in 0..a.jobs.max(1) {
            s.spawn(|| loop {
                let i = {
                    let mut n = next.lock().expect("lock");
                    let i = *n;
                    *n += 1;
                    i
                };
                let Some(&seed) = seeds.get(i) else { break };
                let entry = match generate(&f, seed).map_err(input_error).and_then(|g| run_pipeline(&g, &cfg)) {
                    Ok(r) => BatchEntry { seed, exit_code: EXIT_OK, report: Some(r), error: None },
                    Err(e) => BatchEntry { seed, exit_code: exit_code(&e), report: None, error: Some(e.to_string()) },
                };
                slots.lock().expect("lock")[i] = Some(entry);
            });
        }
    });
    let entries: Vec<BatchEntry> = slots.into_inner().expect("lock").into_iter().flatten().collect();
    emit(a.out.as_deref(), &to_json(&entries))?;
    Ok(entries.iter().map(|e| e.exit_code).max().unwrap_or(EXIT_OK))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), PhaseError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| input_error(e.into())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| input_error(e.into())),
    }
}
