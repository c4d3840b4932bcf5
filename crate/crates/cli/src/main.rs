mod commands;
mod inputs;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use inputs::{GridArgs, ModelArgs, VariantArgs};
use output::Format;

/// Hyperexponential approximation of Levy processes with completely monotone jumps.
#[derive(Debug, Parser)]
#[command(name = "levy-pade", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Working precision in decimal digits.
    #[arg(
        long,
        global = true,
        env = "LEVY_PADE_PRECISION",
        default_value_t = 200
    )]
    precision: u32,
    /// Significant digits of printed numbers (round half to even).
    #[arg(long, global = true, default_value_t = 12)]
    digits: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a hyperexponential approximation and print its triple.
    Approximate {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        variant: VariantArgs,
        /// Martingale condition psi(1) = r imposed on the drift.
        #[arg(long)]
        r: Option<String>,
    },
    /// Tabulate x pi(x) for the model and its approximation.
    Density {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        variant: VariantArgs,
        #[command(flatten)]
        target: TargetArgs,
        /// Comma-separated evaluation points.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
    },
    /// P(X_t <= x) by Fourier inversion.
    Cdf {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        variant: VariantArgs,
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        t: f64,
        /// Comma-separated evaluation points, all positive.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        x: Vec<f64>,
    },
    /// European option price on S_T = S0 exp(X_T).
    Price {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        variant: VariantArgs,
        #[command(flatten)]
        target: TargetArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long = "S0")]
        s0: f64,
        /// Comma-separated strikes.
        #[arg(long = "K", value_delimiter = ',', required = true)]
        strike: Vec<f64>,
        #[arg(long = "T")]
        maturity: f64,
        /// Risk-free rate, given as a decimal so that it is exact.
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, value_enum, default_value_t = OptionKind::Call)]
        option: OptionKind,
    },
    /// Check cumulants and quadrature rules of an approximation.
    Verify {
        #[arg(value_enum, default_value_t = Check::All)]
        check: Check,
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        variant: VariantArgs,
        /// Highest cumulant order reported (default: two past the matched orders).
        #[arg(long)]
        j_max: Option<usize>,
    },
    /// Error |psi_n(z) - psi(z)| against the order n.
    Convergence {
        #[command(flatten)]
        model: ModelArgs,
        /// Approximate the two-sided model with [n+1/n] (default: one-sided [n+k/n]).
        #[arg(long)]
        two_sided: bool,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        n_from: usize,
        #[arg(long, default_value_t = 12)]
        n_to: usize,
        /// Comma-separated real sample points.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        z: Vec<f64>,
    },
    /// Recompute a benchmark table and compare cell by cell.
    ReproduceTable {
        #[arg(value_parser = clap::value_parser!(levy_pade::harness::TableId))]
        table: levy_pade::harness::TableId,
        /// Include the cells that do not count towards the verdict.
        #[arg(long)]
        full: bool,
    },
}

/// Where the process comes from when it is not the model's own exponent.
#[derive(Debug, Clone, Args)]
pub struct TargetArgs {
    /// Use the exact exponent of the model.
    #[arg(long, conflicts_with = "from_hep")]
    exact: bool,
    /// Read a hyperexponential process written by `approximate --format json`.
    #[arg(long, value_name = "FILE")]
    from_hep: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptionKind {
    Call,
    Put,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Moments,
    Quadrature,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command, &cli.common) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
