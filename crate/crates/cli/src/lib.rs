//! Scenario runner behind the `cvdv` binary. Each subcommand reads a
//! [`RunConfig`], runs one experiment and writes CSV or JSON under `--out`.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

pub use commands::{run, Command};
pub use config::{AlphaSpec, HamiltonianSpec, LossSpec, PovmSpec, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("tolerance: {0}")]
    Tolerance(String),
    #[error("cutoff: {0}")]
    Cutoff(String),
    #[error("{0}")]
    Failed(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Tolerance(_) => 3,
            CliError::Cutoff(_) => 4,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

macro_rules! lift {
    ($($t:ty => $breach:expr),* $(,)?) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                let breach: fn(&$t) -> bool = $breach;
                if breach(&e) {
                    CliError::Cutoff(e.to_string())
                } else {
                    CliError::Failed(e.to_string())
                }
            }
        }
    )*};
}

fn core_breach(e: &fock_core::Error) -> bool {
    matches!(e, fock_core::Error::TailBreach { .. })
}

fn gate_breach(e: &gates::GateError) -> bool {
    matches!(e, gates::GateError::Core(c) if core_breach(c))
}

lift!(
    fock_core::Error => core_breach,
    gates::GateError => gate_breach,
    compiler::CompileError => |e| matches!(e, compiler::CompileError::Gate(g) if gate_breach(g)),
    filter::FilterError => filter::FilterError::is_cutoff,
    heisenberg_analytic::AnalyticError => |e| matches!(e, heisenberg_analytic::AnalyticError::Core(c) if core_breach(c)),
    error_model::ErrorModelError => error_model::ErrorModelError::is_cutoff,
);

/// Everything a subcommand needs beyond its name.
#[derive(Debug, Clone)]
pub struct Options {
    pub config: RunConfig,
    pub out: PathBuf,
    /// Overrides the config's cutoff.
    pub cutoff: Option<usize>,
    /// Overrides the config's seed.
    pub seed: Option<u64>,
    /// Compare filter blocks entrywise instead of up to a global phase.
    pub strict_phase: bool,
}

impl Options {
    pub fn new(config: RunConfig, out: impl Into<PathBuf>) -> Self {
        Self { config, out: out.into(), cutoff: None, seed: None, strict_phase: false }
    }

    pub fn cutoff(&self) -> Option<usize> {
        self.cutoff.or(self.config.cutoff)
    }

    pub fn seed(&self) -> u64 {
        self.seed.or(self.config.seed).unwrap_or(0)
    }
}
