//! Truncated Fock-space linear algebra for hybrid qubit/qumode registers.
//!
//! Basis layout used everywhere: qubit 0 is the least significant bit, qubits
//! `0..N` come first, then the Fock digits of modes `0..M` in base `d` with the
//! last mode most significant. Subsystem `s < N` is qubit `s`; subsystem `N + j`
//! is mode `j`.

mod block;
mod error;
mod exec;
pub mod linalg;
mod local;
mod mode;
mod qubit;
mod register;
mod state;

pub use block::{transition_block, vacuum_block};
pub use error::{Error, Result};
pub use exec::Exec;
pub use linalg::{CMat, C64};
pub use local::LocalOp;
pub use mode::{coherent_state, mode_ops, FockSpace, ModeOps};
pub use qubit::{Pauli, QubitOperator};
pub use register::HybridRegister;
pub use state::{apply_local, apply_local_with, project_mode, vacuum_state, StateVector};

/// Default population allowed on the top Fock level before a simulation is
/// declared truncated.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-6;
