use fock_core::linalg::C64;
use fock_core::{coherent_state, QubitOperator};

use crate::exact::{check_hermitian, projected_block};
use crate::{FilterError, Result};

fn ln_factorial(m: usize) -> f64 {
    (1..=m).map(|k| (k as f64).ln()).sum()
}

/// Fock-outcome filter `(τH′)^m / √m! · exp(−τ²H′²/2)`.
pub fn hermite_filter(h: &QubitOperator, tau: f64, m: usize) -> Result<QubitOperator> {
    check_hermitian(h)?;
    let norm = (-0.5 * ln_factorial(m)).exp();
    Ok(h.map_spectrum(|e| {
        let x = tau * e;
        C64::new(x.powi(m as i32) * norm * (-0.5 * x * x).exp(), 0.0)
    })?)
}

/// Simulated `⟨m| exp(−2iτH′⊗p) |0⟩`.
pub fn hermite_filter_vta(h: &QubitOperator, tau: f64, m: usize, cutoff: usize) -> Result<QubitOperator> {
    if m >= cutoff {
        return Err(FilterError::Level { level: m, cutoff });
    }
    let mut bra = vec![C64::new(0.0, 0.0); cutoff];
    bra[m] = C64::new(1.0, 0.0);
    projected_block(h, tau, cutoff, &bra)
}

/// `⟨β| exp(−2iαH′⊗p) |0⟩ = Σ_n exp(−|β|²/2 − α²E_n²/2 + β* α E_n) |E_n⟩⟨E_n|`.
pub fn coherent_filter(h: &QubitOperator, alpha: f64, beta: C64) -> Result<QubitOperator> {
    check_hermitian(h)?;
    Ok(h.map_spectrum(|e| {
        let x = alpha * e;
        (C64::new(-0.5 * beta.norm_sqr() - 0.5 * x * x, 0.0) + beta.conj() * x).exp()
    })?)
}

/// The eigenvalue form `Σ_n exp(−(αE_n + iβ)²/2) |E_n⟩⟨E_n|`.
///
/// For real β this is `e^{β²} ⟨iβ|U|0⟩`, i.e. a projection onto the coherent
/// state `iβ` rescaled, not onto `β`.
pub fn coherent_filter_shifted(h: &QubitOperator, alpha: f64, beta: C64) -> Result<QubitOperator> {
    check_hermitian(h)?;
    let i = C64::new(0.0, 1.0);
    Ok(h.map_spectrum(|e| {
        let z = C64::new(alpha * e, 0.0) + i * beta;
        (-0.5 * z * z).exp()
    })?)
}

/// Simulated `⟨β|U|0⟩` against the truncated coherent state.
pub fn coherent_filter_vta(h: &QubitOperator, alpha: f64, beta: C64, cutoff: usize) -> Result<QubitOperator> {
    let bra = coherent_state(cutoff, beta)?;
    projected_block(h, alpha, cutoff, &bra)
}

/// `max |Σ_{m<d} F_m†F_m − 1|` from the closed-form Hermite filters.
pub fn completeness_check(h: &QubitOperator, tau: f64, cutoff: usize) -> Result<f64> {
    check_hermitian(h)?;
    // F_m are functions of H′, so the sum is diagonal in its eigenbasis
    let deviation = h.eigenvalues()?.into_iter().fold(0.0f64, |worst, e| {
        let x2 = (tau * e).powi(2);
        let mut term = (-x2).exp();
        let mut sum = 0.0;
        for m in 0..cutoff {
            if m > 0 {
                term *= x2 / m as f64;
            }
            sum += term;
        }
        worst.max((sum - 1.0).abs())
    });
    Ok(deviation)
}

/// Same sum built from simulated `⟨m|U|0⟩` blocks.
pub fn completeness_check_vta(h: &QubitOperator, tau: f64, cutoff: usize) -> Result<f64> {
    let n = h.n_qubits();
    let mut acc = QubitOperator::zeros(n);
    for m in 0..cutoff {
        let f = hermite_filter_vta(h, tau, m, cutoff)?;
        acc = acc.add(&f.dagger().mul(&f));
    }
    Ok(acc.max_abs_diff(&QubitOperator::identity(n)))
}
