//! Lowers spectrum-controlled displacements of 2-local spin Hamiltonians to
//! circuits over the phase-space gate set.

pub mod bond;
pub mod coloring;
pub mod hamiltonian;
pub mod lattice;
pub mod schedule;
pub mod swap_network;

pub use bond::{apply_shift, compile_bond_displacement};
pub use coloring::{color_edges, EdgeColoring};
pub use hamiltonian::{Edge, SpinHamiltonian};
pub use lattice::{Boundary, Lattice};
pub use schedule::{circuit_stats, compile_filter_circuit, plan_schedule, Ordering, Plan, Schedule, Step};
pub use swap_network::{composite_network, swap_network_1d, swap_network_ring, tau, PermutationTracker, SnLayer};

#[derive(Debug, thiserror::Error)]
pub enum CompileError {
    #[error(transparent)]
    Gate(#[from] gates::GateError),
    #[error("interaction graph: {0}")]
    Graph(String),
    #[error("schedule: {0}")]
    Schedule(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = CompileError> = std::result::Result<T, E>;
