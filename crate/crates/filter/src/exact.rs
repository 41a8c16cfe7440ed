use fock_core::linalg::{self, kron, CMat, C64, I};
use fock_core::{mode_ops, transition_block, Exec, HybridRegister, LocalOp, QubitOperator, StateVector, DEFAULT_TAIL_TOLERANCE};

use crate::{FilterError, Result};

pub(crate) fn check_hermitian(h: &QubitOperator) -> Result<()> {
    let err = h.hermiticity_error();
    if err > 1e-10 {
        return Err(FilterError::NotHermitian(err));
    }
    Ok(())
}

/// `exp(−α² H′² / 2)` through the eigendecomposition of `H′`.
pub fn exact_filter(h: &QubitOperator, alpha: f64) -> Result<QubitOperator> {
    check_hermitian(h)?;
    Ok(h.map_spectrum(|e| C64::new((-0.5 * alpha * alpha * e * e).exp(), 0.0))?)
}

/// Dense `exp(−2iβ H′ ⊗ p)` on one truncated mode; the mode is the most
/// significant factor, matching the register layout.
pub fn displacement_unitary(h: &QubitOperator, beta: f64, cutoff: usize) -> Result<CMat> {
    check_hermitian(h)?;
    let p = mode_ops(cutoff)?.p;
    Ok(linalg::expm_skew(&(kron(&p, h.matrix()) * (-I * 2.0 * beta)))?)
}

/// `⟨levels| Π_j exp(−2i(α/√M) H′ ⊗ p_j) |0…0⟩` simulated on `M` modes.
pub fn displaced_block(
    h: &QubitOperator,
    alpha: f64,
    n_modes: usize,
    cutoff: usize,
    levels: &[usize],
    exec: Exec,
) -> Result<QubitOperator> {
    if n_modes == 0 {
        return Err(FilterError::Input("need at least one mode".into()));
    }
    let n = h.n_qubits();
    let beta = alpha / (n_modes as f64).sqrt();
    let op = LocalOp::from_dense_pruned(&displacement_unitary(h, beta, cutoff)?, 1e-15);
    let reg = HybridRegister::new(n, n_modes, cutoff)?;
    let targets: Vec<Vec<usize>> = (0..n_modes).map(|j| (0..n).chain([n + j]).collect()).collect();
    transition_block(reg, levels, exec, |st: &mut StateVector| -> Result<()> {
        let mut scratch = Vec::new();
        for (j, t) in targets.iter().enumerate() {
            st.apply(&op, t, Exec::Sequential, &mut scratch)?;
            st.check_tail(&[j], DEFAULT_TAIL_TOLERANCE)?;
        }
        Ok(())
    })
}

/// Vacuum transition amplitude of the exact (untrotterized) displacement
/// split over `M` oscillators at `α/√M` each.
pub fn vta_exact_displacement(h: &QubitOperator, alpha: f64, n_modes: usize, cutoff: usize) -> Result<QubitOperator> {
    displaced_block(h, alpha, n_modes, cutoff, &vec![0; n_modes], Exec::default())
}

/// `⟨φ| exp(−2iα H′⊗p) |0⟩` for an arbitrary mode bra `φ` of length `d`,
/// from the dense single-mode unitary.
pub(crate) fn projected_block(h: &QubitOperator, alpha: f64, cutoff: usize, bra: &[C64]) -> Result<QubitOperator> {
    let u = displacement_unitary(h, alpha, cutoff)?;
    let q = h.dim();
    for col in 0..q {
        let tail: f64 = (0..q).map(|r| u[(r + q * (cutoff - 1), col)].norm_sqr()).sum();
        if tail > DEFAULT_TAIL_TOLERANCE {
            return Err(fock_core::Error::TailBreach { mode: 0, population: tail, tolerance: DEFAULT_TAIL_TOLERANCE }.into());
        }
    }
    let mut m = CMat::zeros(q, q);
    for (n, b) in bra.iter().enumerate() {
        if *b == C64::new(0.0, 0.0) {
            continue;
        }
        m += u.view((q * n, 0), (q, q)) * b.conj();
    }
    Ok(QubitOperator::new(h.n_qubits(), m)?)
}
