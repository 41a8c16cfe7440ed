use fock_core::linalg::C64;
use fock_core::QubitOperator;

use crate::exact::check_hermitian;
use crate::{FilterError, Result};

/// Raw post-selection probability `‖F|ψ⟩‖²`.
pub fn success_probability(psi: &[C64], filter: &QubitOperator) -> Result<f64> {
    if psi.len() != filter.dim() {
        return Err(FilterError::Input(format!("state length {} for dimension {}", psi.len(), filter.dim())));
    }
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(FilterError::Input(format!("input state has norm² {norm}")));
    }
    Ok(filter.apply(psi).iter().map(|z| z.norm_sqr()).sum())
}

/// One eigenspace of `H′` in the post-selected ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleWeight {
    pub energy: f64,
    /// `e^{−α²E′²}|⟨E|ψ⟩|²`, i.e. this eigenspace's share of the raw probability.
    pub raw: f64,
    /// `raw / Σ raw`.
    pub normalized: f64,
}

/// Decompose the vacuum-outcome probability of the exact filter over the
/// eigenbasis of `H′`. Degenerate eigenvalues are listed separately.
pub fn filtered_ensemble(h: &QubitOperator, alpha: f64, psi: &[C64]) -> Result<Vec<EnsembleWeight>> {
    check_hermitian(h)?;
    if psi.len() != h.dim() {
        return Err(FilterError::Input(format!("state length {} for dimension {}", psi.len(), h.dim())));
    }
    let (vals, vecs) = h.eigh()?;
    let mut out: Vec<EnsembleWeight> = vals
        .iter()
        .enumerate()
        .map(|(n, &e)| {
            let amp: C64 = (0..h.dim()).map(|r| vecs[(r, n)].conj() * psi[r]).sum();
            EnsembleWeight { energy: e, raw: (-alpha * alpha * e * e).exp() * amp.norm_sqr(), normalized: 0.0 }
        })
        .collect();
    let total: f64 = out.iter().map(|w| w.raw).sum();
    if total > 0.0 {
        for w in &mut out {
            w.normalized = w.raw / total;
        }
    }
    Ok(out)
}

/// Input-independent Gaussian weights `e^{−α²E′²/2} / Σ` over the spectrum.
pub fn spectral_weights(h: &QubitOperator, alpha: f64) -> Result<Vec<(f64, f64)>> {
    check_hermitian(h)?;
    let vals = h.eigenvalues()?;
    let w: Vec<f64> = vals.iter().map(|e| (-0.5 * alpha * alpha * e * e).exp()).collect();
    let total: f64 = w.iter().sum();
    Ok(vals.into_iter().zip(w).map(|(e, x)| (e, x / total)).collect())
}
