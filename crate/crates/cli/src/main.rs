//! `calpha`: compute, tabulate and verify the constants `c_alpha`.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_METHOD: u8 = 3;
pub const EXIT_CONSISTENCY: u8 = 4;
pub const EXIT_IO: u8 = 5;

#[derive(Parser, Debug)]
#[command(name = "calpha", version, about = "Minimal eigenvalues c_alpha of (-1)^alpha u^(2 alpha) = lambda u with clamped ends")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute c_alpha by one or all methods.
    Compute(ComputeArgs),
    /// Tabulate c_alpha against the closed-form bounds and asymptotics.
    Table(TableArgs),
    /// Run invariant suites.
    Verify(VerifyArgs),
    /// Dump the Green kernel on a grid as CSV.
    Kernel(KernelArgs),
    /// Export convergence data of the discretizations.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Toeplitz,
    Nystrom,
    Ode,
    Lsq,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Bounds,
    Circulant,
    Gram,
    Lsq,
    Green,
    Wirtinger,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct Discretization {
    /// Gauss nodes of the finest Nystrom level.
    #[arg(long, default_value_t = 200)]
    pub nystrom_nodes: usize,
    /// Matrix sizes for the Toeplitz and least-squares extrapolations.
    #[arg(long, value_delimiter = ',')]
    pub n_grid: Option<Vec<usize>>,
    /// Log-spaced points of the determinant scan.
    #[arg(long, default_value_t = 2000)]
    pub scan_points: usize,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ComputeArgs {
    #[arg(long)]
    pub alpha: u32,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    pub method: MethodArg,
    #[command(flatten)]
    pub disc: Discretization,
    /// Largest tolerated relative difference between methods.
    #[arg(long, default_value_t = 1e-4)]
    pub consistency_tol: f64,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    /// First alpha of the range.
    #[arg(long, default_value_t = 1)]
    pub alpha: u32,
    /// Last alpha of the range.
    #[arg(long, default_value_t = 8)]
    pub alpha_max: u32,
    #[command(flatten)]
    pub disc: Discretization,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = 8)]
    pub alpha_max: u32,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone)]
pub struct KernelArgs {
    #[arg(long)]
    pub alpha: u32,
    /// Interior nodes per axis; the grid is {(i + 1) / (grid + 1)}.
    #[arg(long, default_value_t = 16)]
    pub grid: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ExportArgs {
    #[arg(long)]
    pub alpha: u32,
    /// Nystrom node counts to tabulate.
    #[arg(long, value_delimiter = ',', default_values_t = [25, 50, 100, 200])]
    pub m_list: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    pub n_grid: Option<Vec<usize>>,
    #[command(flatten)]
    pub output: Output,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match commands::run(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code)
}
