//! `hausdorff` — Hausdorff measures on finite metric spaces, from the
//! command line.
//!
//! Subcommands: `validate` checks a space file, `measure` computes `H^m_δ` or
//! `H^m` of a subset under a covering convention, `compare` tabulates all
//! named conventions side by side, `fractal` sweeps Cantor-construction
//! scales and estimates dimension, and `oracle-check` cross-validates the
//! exact solvers against brute force on seeded random spaces.
//!
//! Reports are JSON on stdout; sweeps can additionally be exported as CSV.
//! Exit codes: 0 success, 1 usage / I-O / parse, 2 metric violation,
//! 3 solver timeout, 4 oracle mismatch.

mod commands;
mod report;
mod spacefile;

use clap::{Args, Parser, Subcommand};
use commands::{CommandError, ConventionFlags, EXIT_USAGE};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hausdorff",
    version,
    about = "Hausdorff measures on finite metric spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConventionArgs {
    /// Convention preset: federer, halmos, paper-modified, contra-nonempty,
    /// contra-empty
    #[arg(long, default_value = "federer")]
    convention: String,
    /// Override: at-most-countable | strictly-infinite
    #[arg(long)]
    cardinality: Option<String>,
    /// Override: nonempty-only | empty-allowed
    #[arg(long)]
    elements: Option<String>,
    /// Override: standard | modified | raw-diameter-power
    #[arg(long)]
    gauge: Option<String>,
    /// Value of 0^0 for the standard gauge: 0 | 1
    #[arg(long)]
    zero_pow_zero: Option<u8>,
    /// Override: strict | weak
    #[arg(long)]
    bound: Option<String>,
    /// Override: none | counting-by-definition
    #[arg(long)]
    h0_override: Option<String>,
}

impl ConventionArgs {
    fn flags(&self) -> ConventionFlags {
        ConventionFlags {
            preset: self.convention.clone(),
            cardinality: self.cardinality.clone(),
            elements: self.elements.clone(),
            gauge: self.gauge.clone(),
            zero_pow_zero: self.zero_pow_zero,
            bound: self.bound.clone(),
            h0_override: self.h0_override.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a space file and report violations
    Validate {
        /// Space JSON file
        input: PathBuf,
    },
    /// Compute H^m_delta (or H^m with --delta auto) of a subset
    Measure {
        /// Space JSON file
        input: PathBuf,
        /// Dimension parameter m >= 0
        #[arg(long)]
        m: f64,
        /// Scale: "auto" for the delta -> 0 limit, "inf", or a positive number
        #[arg(long, default_value = "auto")]
        delta: String,
        #[command(flatten)]
        convention: ConventionArgs,
        /// "all", "empty", or comma-separated point labels
        #[arg(long, default_value = "all")]
        subset: String,
        /// auto | dp | bnb | greedy | oracle
        #[arg(long, default_value = "auto")]
        solver: String,
    },
    /// Evaluate every named convention side by side
    Compare {
        /// Space JSON file
        input: PathBuf,
        /// Dimension parameter m >= 0
        #[arg(long)]
        m: f64,
        /// Scale: "auto", "inf", or a positive number
        #[arg(long, default_value = "auto")]
        delta: String,
        /// "all", "empty", or comma-separated point labels
        #[arg(long, default_value = "all")]
        subset: String,
    },
    /// Sweep Cantor-construction scales and estimate dimension
    Fractal {
        /// Deepest construction level (at most 40; exact columns to 6)
        #[arg(long)]
        levels: u32,
        /// Dimension parameter: a nonnegative number or "critical" (ln2/ln3)
        #[arg(long)]
        m: String,
        #[command(flatten)]
        convention: ConventionArgs,
        /// Row scale: "level" (just above 3^-k) or "below-gap" (below every gap)
        #[arg(long, default_value = "level")]
        delta_policy: String,
        /// Also write the sweep as CSV to this path
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Cross-validate DP, branch and bound, and brute force on random spaces
    OracleCheck {
        /// Points per space (at most 6)
        #[arg(long)]
        n: usize,
        /// Number of random spaces
        #[arg(long)]
        trials: u32,
        /// PRNG seed
        #[arg(long, default_value = "0")]
        seed: u64,
    },
}

fn run() -> Result<i32, CommandError> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            return Err(CommandError {
                exit: EXIT_USAGE,
                message: e.to_string(),
            });
        }
        Err(e) => {
            // --help / --version
            print!("{e}");
            return Ok(0);
        }
    };
    let command: Vec<String> = std::env::args().skip(1).collect();
    match &cli.command {
        Command::Validate { input } => commands::cmd_validate(command, input),
        Command::Measure {
            input,
            m,
            delta,
            convention,
            subset,
            solver,
        } => commands::cmd_measure(
            command,
            input,
            *m,
            delta,
            &convention.flags(),
            subset,
            solver,
        ),
        Command::Compare {
            input,
            m,
            delta,
            subset,
        } => commands::cmd_compare(command, input, *m, delta, subset),
        Command::Fractal {
            levels,
            m,
            convention,
            delta_policy,
            csv,
        } => commands::cmd_fractal(
            command,
            *levels,
            m,
            &convention.flags(),
            delta_policy,
            csv.as_ref(),
        ),
        Command::OracleCheck { n, trials, seed } => {
            commands::cmd_oracle_check(command, *n, *trials, *seed)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit as u8)
        }
    }
}
