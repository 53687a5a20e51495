use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;

#[derive(Debug, Parser)]
#[command(name = "newton-galois", version, about = "Newton polygons, Newton indices and Galois certificates over Q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// p-adic Newton polygon of a polynomial.
    Np {
        #[command(flatten)]
        poly: PolyArg,
        /// Prime for the valuation.
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        json: bool,
    },
    /// Newton index: lcm of slope denominators over all relevant primes.
    Index {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long)]
        json: bool,
    },
    /// Certificate that the Galois group contains A_n.
    Certify {
        #[command(flatten)]
        poly: PolyArg,
        /// Comma-separated rational shifts to try, in order.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "shift_bound")]
        shifts: Option<String>,
        /// Try every integer shift in [-B, B], ordered 0, 1, -1, 2, -2, ...
        #[arg(long, value_name = "B")]
        shift_bound: Option<u64>,
        #[arg(long)]
        assume_irreducible: bool,
        #[arg(long)]
        json: bool,
    },
    /// Frobenius cycle types at the first good primes.
    Frobenius {
        #[command(flatten)]
        poly: PolyArg,
        #[arg(long, default_value_t = 20)]
        frobenius_samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// A_n / S_n classification of a generalized Laguerre polynomial.
    GlpClassify {
        #[command(flatten)]
        glp: GlpArgs,
        #[command(flatten)]
        classify: ClassifyArgs,
        #[arg(long)]
        json: bool,
    },
    /// Closed-form discriminant of a generalized Laguerre polynomial.
    GlpDisc {
        #[command(flatten)]
        glp: GlpArgs,
        /// Recompute through the resultant and compare.
        #[arg(long)]
        verify_resultant: bool,
        #[arg(long)]
        json: bool,
    },
    /// Classification for every degree in a range, one line per degree.
    GlpScan {
        #[arg(long)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[command(flatten)]
        classify: ClassifyArgs,
        /// Worker threads; 0 uses one per processor.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct PolyArg {
    /// Ascending coefficients, e.g. "2,-4,1" for x^2 - 4x + 2.
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Debug, Args)]
struct GlpArgs {
    #[arg(long)]
    n: usize,
    /// Integer or "lambda/mu".
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    assume_irreducible: bool,
    #[arg(long, default_value_t = 0)]
    frobenius_samples: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match commands::run(cli.command, &mut out).and_then(|()| Ok(out.flush()?)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
