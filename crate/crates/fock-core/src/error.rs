use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Fock cutoff must be at least 2, got {0}")]
    InvalidCutoff(usize),
    #[error("generator is not anti-Hermitian (max deviation {0:e})")]
    NotAntiHermitian(f64),
    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("eigensolver failed to converge")]
    Eigensolver,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("target subsystem {0} listed more than once")]
    RepeatedTarget(usize),
    #[error("{what} index {index} out of range (limit {limit})")]
    IndexOutOfRange { what: &'static str, index: usize, limit: usize },
    #[error("mode {mode} has population {population:e} on its top Fock level (tolerance {tolerance:e}); raise the cutoff")]
    TailBreach { mode: usize, population: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
