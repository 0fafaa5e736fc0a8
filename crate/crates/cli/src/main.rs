//! `mckay`: command-line access to the mckay-core computations.

mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{Output, QuiverKind};
use crate::config::GlobalArgs;

#[derive(Parser, Debug)]
#[command(name = "mckay", version, about = "Skew group algebras, Beilinson algebras and quivers for 2-dimensional AS-regular algebras")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weights, family, Gorenstein parameter and Hilbert function
    Info,
    /// Homological determinant of a graded automorphism
    Hdet(commands::HdetArgs),
    /// Dimensions and bases of the invariant ring S^G
    Fixed(commands::ActionArgs),
    /// Truncated test for finite dimensionality of S*G/(e)
    Ample(commands::ActionArgs),
    /// Build a quiver
    Quiver {
        #[command(subcommand)]
        kind: QuiverKind,
    },
    /// BGP reflections
    Reflect {
        #[command(subcommand)]
        action: commands::ReflectCommand,
    },
    /// Run the invariant suite; exits nonzero if any check fails
    Check,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let job = cli.global.resolve()?;
    let Output { body, ok } = match cli.command {
        Command::Info => commands::info(&job)?,
        Command::Hdet(args) => commands::hdet(&job, &args)?,
        Command::Fixed(args) => commands::fixed(&job, &args)?,
        Command::Ample(args) => commands::ample(&job, &args)?,
        Command::Quiver { kind } => commands::quiver(&job, &kind)?,
        Command::Reflect { action } => commands::reflect(&job, &action)?,
        Command::Check => commands::check(&job)?,
    };
    match &job.out {
        Some(path) => std::fs::write(path, &body)?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(ok)
}
