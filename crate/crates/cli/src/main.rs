//! `powertower`: tables, polynomials, derivatives and Taylor series of x^x
//! from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on a
//! usage error.

mod commands;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Family;
use output::Format;
use powertower::verify::Suite;

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "powertower",
    version,
    about = "Derivatives and Taylor series of x^x"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Triangle of Omega(a, b) for a = 1..max-a.
    Omega {
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(1..))]
        max_a: u32,
    },
    /// Column sums S_i(n) for n = 1..n-max, recursive and closed form.
    Sums {
        #[arg(long)]
        i: u32,
        #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
    },
    /// Rencontres numbers D(n, k) for 0 <= k <= n <= max-n.
    Rencontres {
        #[arg(long, default_value_t = 9)]
        max_n: u32,
    },
    /// A member of the P or Q polynomial family.
    Poly {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: u32,
    },
    /// The n-th derivative of x^x, symbolically or at a point.
    Derivative {
        #[arg(long)]
        n: u32,
        /// Evaluation point, x > 0.
        #[arg(
            long,
            allow_negative_numbers = true,
            required_unless_present = "symbolic"
        )]
        x: Option<f64>,
        /// Print the closed form instead of values.
        #[arg(long, conflicts_with = "x")]
        symbolic: bool,
    },
    /// Taylor coefficients, optionally evaluated as partial sums.
    Series {
        /// Expansion point: `1` for exact rational coefficients, or any positive real.
        #[arg(long, default_value = "1")]
        anchor: String,
        #[arg(long)]
        order: u32,
        /// Points at which to evaluate partial sums.
        #[arg(long, num_args = 1.., allow_negative_numbers = true)]
        eval: Vec<f64>,
        /// Truncation degrees to report, ascending (default: the order).
        #[arg(long, num_args = 1.., requires = "eval")]
        checkpoints: Vec<u32>,
    },
    /// Run the identity suites; exits 1 if any check fails.
    Verify {
        /// all, omega, sums, rencontres, poly, delta, derivative or series.
        #[arg(default_value = "all")]
        suite: String,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

fn run(cli: Cli) -> Result<String, (Option<String>, Failure)> {
    let usage = |msg: String| (None, Failure::Usage(msg));
    let report = match cli.command {
        Command::Omega { max_a } => commands::omega(max_a as usize),
        Command::Sums { i, n_max } => commands::sums(i as usize, n_max as usize),
        Command::Rencontres { max_n } => commands::rencontres(max_n as usize),
        Command::Poly { family, n } => commands::poly(family, n as usize).map_err(usage)?,
        Command::Derivative {
            n, symbolic: true, ..
        } => commands::derivative_symbolic(n as usize),
        Command::Derivative { n, x, .. } => {
            let x = x.expect("clap requires --x without --symbolic");
            let (report, warning) = commands::derivative_numeric(n as usize, x).map_err(usage)?;
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            report
        }
        Command::Series {
            anchor,
            order,
            eval,
            checkpoints,
        } => {
            let anchor = commands::parse_anchor(&anchor).map_err(usage)?;
            let checkpoints: Vec<usize> = checkpoints.iter().map(|&n| n as usize).collect();
            let checkpoints = (!checkpoints.is_empty()).then_some(checkpoints.as_slice());
            commands::series(anchor, order as usize, &eval, checkpoints).map_err(usage)?
        }
        Command::Verify { suite } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse::<Suite>().map_err(usage)?]
            };
            let (report, failed) = commands::verify(&suites);
            let rendered = report.render(cli.format);
            if failed {
                return Err((Some(rendered), Failure::Verification));
            }
            return Ok(rendered);
        }
    };
    Ok(report.render(cli.format))
}

fn emit(text: &str, path: Option<&PathBuf>) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let path = cli.output.clone();
    let (text, code) = match run(cli) {
        Ok(text) => (Some(text), ExitCode::SUCCESS),
        Err((text, Failure::Verification)) => (text, ExitCode::from(EXIT_VERIFY_FAILED)),
        Err((_, Failure::Usage(msg))) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    if let Some(text) = text {
        if let Err(e) = emit(&text, path.as_ref()) {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    code
}
