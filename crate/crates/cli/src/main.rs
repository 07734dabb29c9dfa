use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qmol_cli::{commands, Command, Overrides, RunConfig};

/// Entanglement of two Coulomb-coupled double quantum dots.
#[derive(Parser)]
#[command(name = "qmol", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eigenenergies, concurrences and dominant Bell components
    Spectrum(Overrides),
    /// Populations and concurrence over time, as CSV
    Dynamics(Overrides),
    /// Concurrence over a parameter plane, as CSV and optional PGM
    Sweep(Overrides),
    /// Tunneling ratios and times at which a product state becomes a Bell state
    BellTimes(Overrides),
    /// Run the invariant suite
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, flags) = match cli.command {
        Cmd::Spectrum(o) => (Command::Spectrum, o),
        Cmd::Dynamics(o) => (Command::Dynamics, o),
        Cmd::Sweep(o) => (Command::Sweep, o),
        Cmd::BellTimes(o) => (Command::BellTimes, o),
        Cmd::Verify => (Command::Verify, Overrides::default()),
    };
    match RunConfig::resolve(command, &flags).and_then(|cfg| commands::run(&cfg)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("qmol: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
