//! Gaussian spectral filters: exact, block-encoded by exact displacements,
//! and compiled through Trotterized circuits, plus the Fock and coherent
//! outcome families.

pub mod exact;
pub mod povm;
pub mod probability;
pub mod report;
pub mod trotter;

pub use exact::{displaced_block, displacement_unitary, exact_filter, vta_exact_displacement};
pub use povm::{
    coherent_filter, coherent_filter_shifted, coherent_filter_vta, completeness_check, completeness_check_vta, hermite_filter,
    hermite_filter_vta,
};
pub use probability::{filtered_ensemble, spectral_weights, success_probability, EnsembleWeight};
pub use report::{fmt_f64, right_eigenvalues, FilterReport};
pub use trotter::{additive_error, circuit_filter, trotter_error_bound, trotter_filter, TrotterOptions};

#[derive(Debug, thiserror::Error)]
pub enum FilterError {
    #[error(transparent)]
    Core(#[from] fock_core::Error),
    #[error(transparent)]
    Gate(#[from] gates::GateError),
    #[error(transparent)]
    Compile(#[from] compiler::CompileError),
    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("Fock level {level} is outside cutoff {cutoff}")]
    Level { level: usize, cutoff: usize },
    #[error("{0}")]
    Input(String),
}

impl FilterError {
    /// True when the failure is a Fock-tail breach, i.e. the cutoff is too small.
    pub fn is_cutoff(&self) -> bool {
        matches!(
            self,
            FilterError::Core(fock_core::Error::TailBreach { .. })
                | FilterError::Gate(gates::GateError::Core(fock_core::Error::TailBreach { .. }))
        )
    }
}

pub type Result<T, E = FilterError> = std::result::Result<T, E>;
