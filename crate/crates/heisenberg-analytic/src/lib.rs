//! Closed forms for Heisenberg filters: bond-projector expansions of the
//! color-ordered filter, the labeled 4-site eigenbasis, and the α scan that
//! decouples the two spin-0 states.

pub mod eigenbasis;
pub mod expansion;
pub mod optimize;

pub use eigenbasis::{r4_closed_form, symmetry_block_basis, EigenRow, EigenTable4, R4Weights};
pub use expansion::{apply_bond_projector, plan_expansion_r, projector_expansion_r, r_1d_closed_form, BondProjectors};
pub use optimize::{ground_offdiagonal_norm, optimize_alpha, r01, AlphaOutcome, AlphaSearch};

#[derive(Debug, thiserror::Error)]
pub enum AnalyticError {
    #[error(transparent)]
    Core(#[from] fock_core::Error),
    #[error(transparent)]
    Compile(#[from] compiler::CompileError),
    #[error("edge {0} is not an isotropic unit Heisenberg bond")]
    NotHeisenberg(usize),
    #[error("{0} is too large for a dense expansion")]
    TooLarge(String),
    #[error("chain length {0} must be even and at least 4")]
    OddChain(usize),
    #[error("degeneracy resolution failed: {0}")]
    Degeneracy(String),
    #[error("{0}")]
    Input(String),
}

pub type Result<T, E = AnalyticError> = std::result::Result<T, E>;
