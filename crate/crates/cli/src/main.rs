//! `dwf`: discrete Wigner functions, spin flip and concurrence from the command line.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on bad input or usage.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Outcome, SpinflipArgs, VerifyArgs};
use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "dwf", version, about = "Discrete Wigner functions over GF(2^n) phase space")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,

    /// Log level (error, warn, info, debug)
    #[arg(long, global = true, default_value = "warn")]
    log: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the N+1 mutually unbiased bases
    Mubs,
    /// DWF of a state file
    Dwf { state: PathBuf },
    /// Spin-flipped DWF W~ = H W of a DWF or state file
    Spinflip(SpinflipArgs),
    /// Concurrence of a two-qubit state or DWF
    Concurrence { input: PathBuf },
    /// Simulated tomography of a state file
    Tomo { state: PathBuf },
    /// Run the invariant suite for the configured phase space
    Verify(VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new().parse_filters(&cli.log).init();
    let cfg = &cli.config;
    let result = match &cli.command {
        Command::Mubs => commands::cmd_mubs(cfg),
        Command::Dwf { state } => commands::cmd_dwf(cfg, state),
        Command::Spinflip(args) => commands::cmd_spinflip(cfg, args),
        Command::Concurrence { input } => commands::cmd_concurrence(cfg, input),
        Command::Tomo { state } => commands::cmd_tomo(cfg, state),
        Command::Verify(args) => commands::cmd_verify(cfg, args),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            log::debug!("{e:?}");
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
