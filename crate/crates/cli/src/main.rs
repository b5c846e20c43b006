//! `bidouble`: classification tables, fixture verification, curve
//! enumeration and deformation bookkeeping from the command line.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 on input
//! errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bidouble", version, about = "Exact checks for Z2^2-covers of rational surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
    Md,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Target {
    /// Built-in fixture: `inoue` or `dp1`.
    #[arg(long)]
    fixture: Option<String>,
    /// Surface file in the JSON schema documented under docs/.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the numerical cases for a given K^2.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..=bidouble::classify::MAX_K2))]
        k2: i64,
        /// Also list every rejected candidate with its first failing filter.
        #[arg(long)]
        verbose: bool,
        #[arg(long, value_enum, default_value = "md")]
        emit: Emit,
    },
    /// Verify a fixture or surface file and print its certificate.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "md")]
        emit: Emit,
    },
    /// Enumerate (-1)- or (-2)-classes on a surface.
    Enumerate {
        #[command(flatten)]
        target: Target,
        /// Self-intersection: -1 or -2.
        #[arg(long, allow_hyphen_values = true)]
        selfint: i64,
        /// Keep only classes meeting every nodal curve nonnegatively.
        #[arg(long)]
        filtered: bool,
        #[arg(long, value_enum, default_value = "md")]
        emit: Emit,
    },
    /// Euler-characteristic bookkeeping for the deformation count.
    Report {
        fixture: String,
        #[arg(long, value_enum, default_value = "md")]
        emit: Emit,
    },
    /// Write a fixture as a surface file.
    Export { fixture: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { k2, verbose, emit } => Ok(commands::classify(k2, verbose, emit)),
        Command::Verify { target, emit } => commands::verify(&target, emit),
        Command::Enumerate {
            target,
            selfint,
            filtered,
            emit,
        } => commands::enumerate(&target, selfint, filtered, emit),
        Command::Report { fixture, emit } => commands::report(&fixture, emit),
        Command::Export { fixture } => commands::export(&fixture),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
