use compiler::{compile_filter_circuit, EdgeColoring, Schedule, SpinHamiltonian};
use fock_core::QubitOperator;
use gates::{Circuit, Program, SimOptions};

use crate::Result;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrotterOptions {
    /// Fock cutoff; `None` uses the circuit's recommended cutoff.
    pub cutoff: Option<usize>,
    pub sim: SimOptions,
}

impl TrotterOptions {
    pub fn with_cutoff(cutoff: usize) -> Self {
        Self { cutoff: Some(cutoff), ..Self::default() }
    }
}

/// Vacuum block of any circuit.
pub fn circuit_filter(circuit: &Circuit, opts: &TrotterOptions) -> Result<QubitOperator> {
    let d = opts.cutoff.unwrap_or_else(|| circuit.recommended_cutoff());
    Ok(Program::new(circuit, d, opts.sim)?.vacuum_block()?)
}

/// Vacuum block of the compiled filter circuit for `H′ = H − E_s`.
pub fn trotter_filter(h: &SpinHamiltonian, schedule: &Schedule, alpha: f64, opts: &TrotterOptions) -> Result<QubitOperator> {
    circuit_filter(&compile_filter_circuit(h, schedule, alpha)?, opts)
}

/// `(α²/2) Σ_{γ1<γ2} ‖[H_γ1, H_γ2]‖₂`.
pub fn trotter_error_bound(h: &SpinHamiltonian, coloring: &EdgeColoring, alpha: f64) -> f64 {
    let parts: Vec<QubitOperator> = coloring.partitions.iter().map(|c| h.partition_matrix(c)).collect();
    let mut sum = 0.0;
    for a in 0..parts.len() {
        for b in a + 1..parts.len() {
            sum += parts[a].commutator(&parts[b]).spectral_norm();
        }
    }
    0.5 * alpha * alpha * sum
}

/// Spectral-norm distance `‖R − P‖₂`.
pub fn additive_error(compiled: &QubitOperator, exact: &QubitOperator) -> f64 {
    compiled.sub(exact).spectral_norm()
}
