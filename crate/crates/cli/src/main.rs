use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cli::{run, Command, Options, RunConfig};

/// Hybrid qubit-oscillator filter compiler: run one scenario, write its data.
#[derive(Parser)]
#[command(name = "cvdv", version, about)]
struct Args {
    /// Scenario config (JSON); defaults apply when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Fock cutoff override.
    #[arg(long, global = true)]
    cutoff: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Compare blocks entrywise, not up to a global phase.
    #[arg(long, global = true)]
    strict_phase: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Labeled spectrum of H.
    Spectrum,
    /// Exact and compiled filter eigenvalues over an alpha grid.
    FilterSweep,
    /// Trotter error against its bound over an alpha grid.
    TrotterError,
    /// Search for the alpha that decouples the ground state.
    OptimizeAlpha,
    /// Emit the compiled circuit and its gate counts.
    Compile,
    /// Compare filters across oscillator counts.
    ParallelCheck,
    /// Fock and coherent outcome filters, completeness.
    Povm,
    /// Photon-loss trajectories.
    LossDemo,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Spectrum => Command::Spectrum,
            Cmd::FilterSweep => Command::FilterSweep,
            Cmd::TrotterError => Command::TrotterError,
            Cmd::OptimizeAlpha => Command::OptimizeAlpha,
            Cmd::Compile => Command::Compile,
            Cmd::ParallelCheck => Command::ParallelCheck,
            Cmd::Povm => Command::Povm,
            Cmd::LossDemo => Command::LossDemo,
        }
    }
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = RunConfig::load(args.config.as_deref()).and_then(|config| {
        let opts =
            Options { config, out: args.out.clone(), cutoff: args.cutoff, seed: args.seed, strict_phase: args.strict_phase };
        run(args.cmd.into(), &opts)
    });
    match result {
        Ok(paths) => {
            for p in paths {
                println!("{}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("cvdv: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
