//! `monopath`: generate instances, run the simplex engine and the skeleton
//! analyses, build long monotone paths and check pivot-count bounds.

mod commands;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use monopath::skeleton::DEFAULT_SEED;
use monopath::zoo::DEFAULT_VERTEX_LIMIT;

#[derive(Parser, Debug)]
#[command(name = "monopath", version, about = "Exact simplex pivots, polytope skeletons and monotone paths")]
pub struct Cli {
    /// Seed for every random objective and instance draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Enumerations beyond this many vertices are refused.
    #[arg(long, global = true, default_value_t = DEFAULT_VERTEX_LIMIT)]
    pub vertex_limit: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write an instance file for a polytope family.
    Gen(GenArgs),
    /// Run the simplex method on an instance and write the trace.
    Solve(SolveArgs),
    /// Monotone diameters and heights over an objective battery.
    Analyze(AnalyzeArgs),
    /// Build the long TSP or shortest-path monotone path.
    Longpath(LongpathArgs),
    /// Compare distinct-BFS counts from every start with the bounds.
    Bounds(BoundsArgs),
    /// Bound checks over the instances of a JSON config, in parallel.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    /// birkhoff, transportation, fm, fpm, matching, perfect_matching, p2m,
    /// tsp, sp, cube, klee_minty, zonotope, spanning_tree, permutahedron.
    pub family: String,
    /// Size parameter; for graph families the node count of `K_n` unless
    /// `--edges` is given.
    #[arg(long)]
    pub n: Option<usize>,
    /// Graph edges as `0-1,1-2,...` on `--n` nodes.
    #[arg(long)]
    pub edges: Option<String>,
    /// Transportation supplies, e.g. `3,2` or `5/2,1`.
    #[arg(long)]
    pub supplies: Option<String>,
    #[arg(long)]
    pub demands: Option<String>,
    /// Random integer margins `KxN`.
    #[arg(long)]
    pub random_margins: Option<String>,
    #[arg(long, default_value_t = 9)]
    pub max_margin: i64,
    /// Perturb the margins into a nondegenerate instance.
    #[arg(long)]
    pub perturb: bool,
    /// Zonotope generators as `1,0;0,1;1,1`.
    #[arg(long)]
    pub generators: Option<String>,
    /// Random zonotope generators `MxD`.
    #[arg(long)]
    pub random_generators: Option<String>,
    /// Include the explicit skeleton in the file.
    #[arg(long)]
    pub skeleton: bool,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// bland, dantzig, greatest or steepest.
    #[arg(long, default_value = "dantzig")]
    pub rule: String,
    /// `default` (the family's start), a vertex index in enumeration order,
    /// or `basis:i,j,...`.
    #[arg(long, default_value = "default")]
    pub start: String,
    /// `auto` (stored objective, random if it is zero), `stored`, `lex` or
    /// `random`.
    #[arg(long, default_value = "auto")]
    pub objective: String,
    #[arg(short = 'o', long = "trace-out")]
    pub trace_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    pub instance: PathBuf,
    /// Number of random objectives.
    #[arg(long, default_value_t = 64)]
    pub random: usize,
    #[arg(long)]
    pub no_lex: bool,
    #[arg(long)]
    pub no_coordinate: bool,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathFamily {
    Tsp,
    Sp,
}

#[derive(Args, Debug)]
pub struct LongpathArgs {
    pub family: PathFamily,
    #[arg(long)]
    pub n: usize,
    /// Replay every step through the adjacency oracle and the objective.
    #[arg(long)]
    pub verify: bool,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    pub instance: PathBuf,
    #[arg(long, default_value = "dantzig,greatest,steepest")]
    pub rules: String,
    /// Random objectives to draw when the stored objective is zero.
    #[arg(long, default_value_t = 2)]
    pub objectives: usize,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    pub config: PathBuf,
    #[arg(short, long)]
    pub out: Option<PathBuf>,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Verification(String),
}

impl From<monopath::Error> for Failure {
    fn from(e: monopath::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
