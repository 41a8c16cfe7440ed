//! The phase-space instruction set: gates, circuits, simulation and the
//! composite constructions built from them.

mod circuit;
mod composites;
mod gate;
mod json;
mod optimize;
mod sim;

pub use circuit::{Circuit, CircuitStats};
pub use composites::{bosonic_swap, lower_native, native_conditional_displacement, zz_displacement, Connectivity};
pub use gate::{Gate, Wire};
pub use json::GateRecord;
pub use optimize::optimize;
pub use sim::{circuit_unitary, Program, SimOptions};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GateError {
    #[error(transparent)]
    Core(#[from] fock_core::Error),
    #[error("invalid operand: {0}")]
    Operand(String),
    #[error("rotation axis has norm {0}, expected 1")]
    Axis(f64),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unknown gate kind {0:?}")]
    UnknownKind(String),
    #[error("mode {mode} cannot reach a cavity native to qubit {qubit}")]
    Unroutable { mode: usize, qubit: usize },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, GateError>;
