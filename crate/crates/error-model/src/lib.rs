//! Photon loss on the filter's oscillator: Kraus pair, single-jump
//! trajectories, the no-jump amplitude shrink, and a sampled check that the
//! Fock-outcome filters resolve the identity.

pub mod loss;
pub mod noise;
pub mod orb;
pub mod trajectory;

pub use loss::{kraus_pair, no_jump_alpha_exact, no_jump_filter, no_jump_rescaling, LossChannel};
pub use noise::DepolarizingHook;
pub use orb::{orb_deterministic, orb_identity, OrbReport};
pub use trajectory::{jump_cutoff, predicted_jump_state, single_jump_trajectory, JumpPrediction, JumpReport};

#[derive(Debug, thiserror::Error)]
pub enum ErrorModelError {
    #[error(transparent)]
    Core(#[from] fock_core::Error),
    #[error(transparent)]
    Filter(#[from] filter::FilterError),
    #[error("short-time validity violated: {0}")]
    Validity(String),
    #[error("{0}")]
    Input(String),
}

impl ErrorModelError {
    pub fn is_cutoff(&self) -> bool {
        match self {
            ErrorModelError::Core(fock_core::Error::TailBreach { .. }) => true,
            ErrorModelError::Filter(f) => f.is_cutoff(),
            _ => false,
        }
    }
}

pub type Result<T, E = ErrorModelError> = std::result::Result<T, E>;
