//! `kneser-lab`: verification suites and Monte Carlo experiments on Kneser
//! graphs.
//!
//! Exit codes: 0 on success, 1 when an assertion or precondition fails
//! (with a counterexample), 2 on usage or parse errors.

mod commands;
mod rational;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "kneser-lab", version, about)]
struct Cli {
    /// Worker threads for trial-level parallelism; falls back to the
    /// KNESER_LAB_THREADS environment variable, then to all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named verification suite.
    Verify(commands::VerifyArgs),
    /// Monte Carlo threshold scan over a probability grid.
    Scan(commands::ScanArgs),
    /// Build (and optionally replay) a container for a sparse vertex set.
    Container(commands::ContainerArgs),
    /// Exact shadows, shadow bounds, and the edge-count pipeline.
    Shadow(commands::ShadowArgs),
    /// Evaluate the closed-form bound tables.
    Bounds(commands::BoundsArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let threads = cli.threads.or_else(|| {
        std::env::var("KNESER_LAB_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(t) = threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: failed to configure {t} threads: {err}");
            return ExitCode::from(2);
        }
    }

    let outcome = match cli.command {
        Command::Verify(args) => commands::run_verify(args),
        Command::Scan(args) => commands::run_scan(args),
        Command::Container(args) => commands::run_container(args),
        Command::Shadow(args) => commands::run_shadow(args),
        Command::Bounds(args) => commands::run_bounds(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            // parse problems are usage errors; everything else is a failed
            // assertion or precondition
            match err {
                kneser_core::Error::Parse { .. } | kneser_core::Error::Domain(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
