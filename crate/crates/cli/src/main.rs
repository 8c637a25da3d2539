//! `happy`: solve, kernelize, reduce and cross-check happy-coloring instances.
//!
//! Exit codes: 0 yes / success, 1 no, 2 usage or parse error, 3 oracle
//! budget exceeded.

mod bench;
mod generate;
mod solve;
mod verify;

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use happy_core::oracles::{OracleConfig, DEFAULT_BUDGET};
use happy_core::{Execution, Vertex};

#[derive(Parser, Debug)]
#[command(name = "happy", version, about = "Happy vertex and happy edge coloring toolkit")]
struct Cli {
    /// Candidate limit for the exhaustive oracles.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximum happy vertices: is there a coloring with at least k happy vertices?
    SolveMhv {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value_t = MhvAlgo::Brute)]
        algo: MhvAlgo,
        /// Cluster vertex deletion set, e.g. `1,4,7`; computed when absent.
        #[arg(long, value_parser = parse_ids)]
        modulator: Option<BTreeSet<Vertex>>,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Maximum happy edges: is there a coloring with at least k happy edges?
    SolveMhe {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Group multiway cut: can at most k vertices separate the groups?
    SolveGmc {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Node multiway cut on the graph of a clique-width expression.
    SolveNmc {
        #[arg(long)]
        expr: PathBuf,
        /// Terminal vertex ids, e.g. `1,5,9`.
        #[arg(long, value_parser = parse_ids)]
        terminals: BTreeSet<Vertex>,
        #[arg(short)]
        k: usize,
    },
    /// Rewrite an MHV instance as a group multiway cut instance.
    ToGmc {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Shrink an MHV instance with a kernelization.
    Kernelize {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum)]
        mode: KernelMode,
        /// Clique modulator, e.g. `1,2`; a 2-approximation is used when absent.
        #[arg(long, value_parser = parse_ids)]
        modulator: Option<BTreeSet<Vertex>>,
        /// Write the per-rule log of the cubic kernel here.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build hardness reductions or random source instances.
    Gen {
        #[command(subcommand)]
        kind: generate::GenKind,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Cross-check a solver against its oracle over a seed range.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        /// Half-open seed range `start..end`.
        #[arg(long, default_value = "0..100", value_parser = verify::parse_seeds)]
        seeds: std::ops::Range<u64>,
    },
    /// Timing table for the solvers over generated instances.
    Bench {
        /// Instances per size.
        #[arg(long, default_value_t = 3)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MhvAlgo {
    Brute,
    ClusterFpt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KernelMode {
    Linear,
    Cubic,
    GmcCompress,
}

/// Anything that ends a run without a verdict.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Budget(String),
}

impl From<happy_core::Error> for Failure {
    fn from(e: happy_core::Error) -> Self {
        match e {
            happy_core::Error::TooLarge { .. } => Failure::Budget(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

impl From<happy_core::io::ParseError> for Failure {
    fn from(e: happy_core::io::ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn parse_ids(s: &str) -> Result<BTreeSet<Vertex>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Vertex>().map_err(|e| format!("bad vertex id {t:?}: {e}")))
        .collect()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Write to `path`, or to standard output when absent.
fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    let cfg = OracleConfig { budget: cli.budget, execution: exec };
    match cli.command {
        Command::SolveMhv { file, k, algo, modulator, witness } => {
            solve::mhv(&read(&file)?, k, algo, modulator.as_ref(), witness.as_deref(), &cfg)
        }
        Command::SolveMhe { file, k, witness } => solve::mhe(&read(&file)?, k, witness.as_deref(), &cfg),
        Command::SolveGmc { file, k, witness } => solve::gmc(&read(&file)?, k, witness.as_deref(), &cfg),
        Command::SolveNmc { expr, terminals, k } => solve::nmc(&read(&expr)?, &terminals, k, cfg.execution),
        Command::ToGmc { file, k, output } => solve::to_gmc(&read(&file)?, k, output.as_deref()),
        Command::Kernelize { file, k, mode, modulator, trace, output } => solve::kernelize(
            &read(&file)?,
            k,
            mode,
            modulator.as_ref(),
            trace.as_deref(),
            output.as_deref(),
        ),
        Command::Gen { kind, output } => generate::run(kind, output.as_deref()),
        Command::Verify { suite, seeds } => verify::run(suite, seeds, &cfg),
        Command::Bench { count, seed } => bench::run(count, seed, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
