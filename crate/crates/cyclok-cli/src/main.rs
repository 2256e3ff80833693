mod commands;
mod output;
mod suite;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::output::Outcome;
use crate::suite::{Family, Fault};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write report to {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn usage(e: impl ToString) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cyclok",
    version,
    about = "Exact verification of orthonormal exceptional collections at finite-order torus elements",
    after_help = "Exit codes: 0 all checks pass, 1 a verification failed, 2 usage or input error."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the full JSON report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report on stdout instead of the summary.
    #[arg(long, global = true)]
    json_only: bool,
    /// Also print details of passing checks.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Debug, clap::Args)]
struct SpaceArg {
    /// Space descriptor, e.g. `projective:4`, `grassmannian:2:5`, `D:5:1`.
    #[arg(value_name = "SPACE")]
    positional: Option<String>,
    #[arg(long = "space", value_name = "SPACE")]
    flag: Option<String>,
}

impl SpaceArg {
    fn get(&self) -> Result<String, CliError> {
        match (&self.positional, &self.flag) {
            (Some(a), Some(b)) if a != b => Err(CliError::Usage(format!(
                "conflicting spaces `{a}` and `{b}`"
            ))),
            (Some(a), _) | (None, Some(a)) => Ok(a.clone()),
            (None, None) => Err(CliError::usage("a space descriptor is required")),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Construct the special torus element and check (*) for it.
    #[command(name = "find-t0")]
    FindT0 {
        #[command(flatten)]
        space: SpaceArg,
        /// Search elements of order up to this bound when no explicit construction exists.
        #[arg(long)]
        order_bound: Option<u64>,
    },
    /// Check (*) in root-theoretic and fixed-point form, or report the parity obstruction.
    Star {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        order_bound: Option<u64>,
    },
    /// Gram matrix of the standard collection, or of the bundles given with --collection.
    Gram {
        #[command(flatten)]
        space: SpaceArg,
        /// Bundle descriptor such as `O(1)`, `schur[2,1]`, `spinor+`; repeatable.
        #[arg(long)]
        collection: Vec<String>,
    },
    /// Reduce coefficients against the standard collection modulo p.
    Congruence {
        #[command(flatten)]
        space: SpaceArg,
        #[arg(long)]
        p: u64,
        /// Classes to decompose instead of the collection members; repeatable.
        #[arg(long)]
        collection: Vec<String>,
    },
    /// Run the acceptance matrix.
    Suite {
        /// Only run checks on spaces of this family.
        #[arg(long, value_enum)]
        family: Option<Family>,
        /// Inject a fault before verifying.
        #[arg(long, value_enum)]
        inject_fault: Option<Fault>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::FindT0 { space, order_bound } => {
            commands::find_t0(&space.get()?, *order_bound, true)
        }
        Command::Star { space, order_bound } => {
            commands::find_t0(&space.get()?, *order_bound, false)
        }
        Command::Gram { space, collection } => commands::gram(&space.get()?, collection),
        Command::Congruence {
            space,
            p,
            collection,
        } => commands::congruence(&space.get()?, *p, collection),
        Command::Suite {
            family,
            inject_fault,
        } => Ok(suite::run(*family, *inject_fault)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| {
        output::emit(&outcome, cli.out.as_deref(), cli.json_only, cli.verbose)?;
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
