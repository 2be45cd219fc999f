//! `skewrel` command-line tool.
//!
//! Exit codes: 0 success, 1 a relation was violated (or a computation
//! failed), 2 bad arguments or invalid input files, 3 I/O failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "skewrel",
    version,
    about = "Skew-information uncertainty relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate every Werner-state curve on a grid of p and write a CSV (and optional SVG).
    WernerSweep(SweepArgs),
    /// Check both uncertainty relations for a state file.
    Check(CheckArgs),
    /// Compute the basis-minimized correlation quantity Q of a state file.
    Qcorr(QcorrArgs),
    /// Verify both relations on seeded random states.
    RandomVerify(RandomArgs),
}

#[derive(clap::Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub p_min: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub p_max: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 201)]
    pub steps: usize,
    /// CSV output path.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional SVG plot output path.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Optimizer restarts per Q evaluation.
    #[arg(long, default_value_t = 8)]
    pub q_restarts: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum BasesPreset {
    /// Computational and Fourier bases (σ_z and σ_x eigenbases for a qubit).
    Zx,
}

#[derive(clap::Args, Debug)]
pub struct CheckArgs {
    /// Bipartite state file.
    #[arg(long)]
    pub state: PathBuf,
    /// First observable on subsystem A (a `hermitian_only` file).
    #[arg(long, requires = "obs_b", conflicts_with = "bases")]
    pub obs_a: Option<PathBuf>,
    /// Second observable on subsystem A.
    #[arg(long, requires = "obs_a", conflicts_with = "bases")]
    pub obs_b: Option<PathBuf>,
    /// Use a built-in pair of measurement bases instead of observable files.
    #[arg(long, value_enum, required_unless_present = "obs_a")]
    pub bases: Option<BasesPreset>,
    #[arg(long, default_value_t = 16)]
    pub q_restarts: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(clap::Args, Debug)]
pub struct QcorrArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long, default_value_t = 16)]
    pub restarts: usize,
    /// Simplex-diameter stopping tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(clap::Args, Debug)]
pub struct RandomArgs {
    /// Dimension of subsystem A (2 or 3).
    #[arg(long, default_value_t = 2)]
    pub dim_a: usize,
    /// Dimension of subsystem B (1 to 4).
    #[arg(long, default_value_t = 2)]
    pub dim_b: usize,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 8)]
    pub q_restarts: usize,
    #[arg(long)]
    pub jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::WernerSweep(a) => commands::werner_sweep(&a),
        Command::Check(a) => commands::check(&a),
        Command::Qcorr(a) => commands::qcorr(&a),
        Command::RandomVerify(a) => commands::random_verify(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code().into()
        }
    }
}
