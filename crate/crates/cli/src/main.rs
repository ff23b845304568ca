use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod report;

/// Exact subsequence-sum computations in F_p^d.
///
/// Exit codes: 0 success, 2 parse or input error, 3 failed precondition,
/// 4 search stopped by its budget or an interrupt (the report is still
/// printed), 5 internal error.
#[derive(Debug, Parser)]
#[command(name = "zslab", version)]
pub struct Cli {
    /// Print the JSON report envelope instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for the exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Leave wall-clock time out of the report.
    #[arg(long, global = true)]
    pub no_timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All subsequence sums, or the sums of exactly m terms.
    Sumset(SumsetArgs),
    /// Zero-sum-freeness and completeness predicates.
    Check(CheckArgs),
    /// Decompose an incomplete sequence into an exceptional part and blocks.
    Decompose(DecomposeArgs),
    /// Exact Olson constant.
    Olson(SearchArgs),
    /// Exact Davenport constant.
    Davenport(SearchArgs),
    /// Extremal zero-sum-free configurations.
    #[command(subcommand)]
    Extremal(ExtremalCommand),
}

#[derive(Debug, Args)]
pub struct SumsetArgs {
    pub file: PathBuf,
    /// Only sums of exactly M terms.
    #[arg(long = "exact-m", value_name = "M")]
    pub exact_m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Dump::Index)]
    pub out: Dump,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Dump {
    /// Sorted canonical indices.
    Index,
    /// Coordinate vectors in index order.
    Coords,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub file: PathBuf,
    /// Also test m-zero-sum-freeness and m-incompleteness.
    #[arg(long)]
    pub m: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 0.25)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.5)]
    pub beta: f64,
    /// Fix ε instead of scanning the schedule.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
    /// Growth constant W.
    #[arg(long = "W", alias = "w", default_value_t = 64.0)]
    pub w: f64,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: u32,
    /// Stop after this many search nodes.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Write resumable checkpoints to this file.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Continue from a checkpoint file.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Override the first-element symmetry reduction.
    #[arg(long)]
    pub symmetry: Option<bool>,
}

#[derive(Debug, Subcommand)]
pub enum ExtremalCommand {
    /// Build and verify an optimal configuration in F_p^2, or a stacked one in F_p^d.
    Construct(ConstructArgs),
    /// Classify maximum zero-sum-free sets of F_p^2 up to invertible linear maps.
    Classify(ClassifyArgs),
    /// Compare OL(F_p^3) with (2+γ)p and p + OL(F_p^2) - 1.
    Olson3(Olson3Args),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub variant: u8,
    /// Known OL(F_p); computed when omitted.
    #[arg(long = "ol-p")]
    pub ol_p: Option<usize>,
    /// Build the stacked construction in F_p^D instead.
    #[arg(long, value_name = "D")]
    pub stacked: Option<u32>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub budget: Option<u64>,
}

#[derive(Debug, Args)]
pub struct Olson3Args {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long)]
    pub budget: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match commands::run(&cli) {
        Ok(mut report) => {
            if !cli.no_timing {
                report.envelope.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
            }
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.envelope).expect("report serializes"));
            } else {
                print!("{}", report.render_text());
            }
            if report.cut_short {
                ExitCode::from(zslab::ErrorCategory::Budget.exit_code() as u8)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let category = e.category();
            eprintln!("error ({category}): {e}");
            ExitCode::from(category.exit_code() as u8)
        }
    }
}
