//! `knotrep`: SU(2) representation spaces of pretzel knots from the command line.
//!
//! Negative parameters need either `--` before the knot (`knotrep invariants
//! -- -3,5,7`) or the `p=` form (`knotrep invariants p=-3,5,7`).

mod render;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use knotrep_core::rep::{enumerate_all_with_exploration, RepError};
use knotrep_core::table::{audit, central_table};
use knotrep_core::tangent::{tangent_rows, TangentError};
use knotrep_core::{CentralCase, PretzelKnot};

use render::{FullReport, Invariants};

#[derive(Debug, Parser)]
#[command(
    name = "knotrep",
    version,
    about = "SU(2) representation spaces of pretzel knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Markdown, global = true)]
    format: Format,

    /// Seed for the numeric closure solver.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,

    /// Random restarts per closure problem.
    #[arg(long, default_value_t = 1000, global = true)]
    attempts: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Determinant, components, signature, Lin invariant and Klassen count.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        knot: PretzelKnot,
    },
    /// All conjugacy classes of traceless representations.
    Enumerate {
        #[arg(allow_hyphen_values = true)]
        knot: PretzelKnot,
    },
    /// Central-case angle table with triangle inequality and Gram verdicts.
    Table {
        #[arg(allow_hyphen_values = true)]
        knot: PretzelKnot,
        /// `+1` or `-1`.
        #[arg(long, value_parser = parse_case, allow_hyphen_values = true)]
        case: CentralCase,
    },
    /// Zariski tangent space dimensions at every class.
    Tangent {
        #[arg(allow_hyphen_values = true)]
        knot: PretzelKnot,
    },
    /// Invariants, enumeration, tangent spaces and audit in one document.
    Report {
        #[arg(allow_hyphen_values = true)]
        knot: PretzelKnot,
    },
    /// Compare the embedded published P(3,5,7) tables with the computation.
    Audit {
        #[arg(allow_hyphen_values = true)]
        knot: PretzelKnot,
    },
}

fn parse_case(s: &str) -> Result<CentralCase, String> {
    match s {
        "+1" | "1" | "plus" => Ok(CentralCase::PlusOne),
        "-1" | "minus" => Ok(CentralCase::MinusOne),
        _ => Err(format!("expected +1 or -1, got {s:?}")),
    }
}

enum Failure {
    Argument(String),
    Internal(String),
}

impl From<RepError> for Failure {
    fn from(e: RepError) -> Self {
        match e {
            RepError::Inconsistency(_) => Failure::Internal(e.to_string()),
            _ => Failure::Argument(e.to_string()),
        }
    }
}

impl From<TangentError> for Failure {
    fn from(e: TangentError) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let fmt = cli.format;
    Ok(match &cli.command {
        Command::Invariants { knot } => render::invariants(&Invariants::of(knot), fmt),
        Command::Enumerate { knot } => {
            let report = enumerate_all_with_exploration(knot, cli.attempts, cli.seed)?;
            render::enumeration(&report, fmt)
        }
        Command::Table { knot, case } => {
            render::table(knot, *case, &central_table(knot, *case)?, fmt)
        }
        Command::Tangent { knot } => {
            let report = enumerate_all_with_exploration(knot, cli.attempts, cli.seed)?;
            render::tangent(&report, &tangent_rows(&report)?, fmt)
        }
        Command::Report { knot } => {
            let enumeration = enumerate_all_with_exploration(knot, cli.attempts, cli.seed)?;
            let tangent = tangent_rows(&enumeration)?;
            let audit = audit(knot, cli.attempts, cli.seed)?;
            let full = FullReport {
                invariants: Invariants::of(knot),
                enumeration,
                tangent,
                audit: audit.golden_available.then_some(audit),
            };
            render::full_report(&full, fmt)
        }
        Command::Audit { knot } => render::audit(&audit(knot, cli.attempts, cli.seed)?, fmt),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Argument(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
