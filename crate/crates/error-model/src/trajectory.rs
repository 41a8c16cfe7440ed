use filter::displacement_unitary;
use fock_core::linalg::{kron, CMat, C64};
use fock_core::{coherent_state, mode_ops, QubitOperator};

use crate::{ErrorModelError, Result};

/// Predicted joint state and the per-eigenvector weights.
pub type JumpPrediction = (Vec<C64>, Vec<(f64, C64)>);

/// Joint qubit–mode states, qubits least significant.
#[derive(Debug, Clone)]
pub struct JumpReport {
    pub trajectory: Vec<C64>,
    pub prediction: Vec<C64>,
    /// `max |trajectory − prediction|`.
    pub deviation: f64,
    /// `(E′_n, α̃E′_n⟨E_n|ψ⟩)` per eigenvector of `H′`.
    pub weights: Vec<(f64, C64)>,
    pub cutoff: usize,
}

impl JumpReport {
    /// The qubit state left on the vacuum outcome.
    pub fn vacuum_component(&self) -> Vec<C64> {
        let q = self.trajectory.len() / self.cutoff;
        self.trajectory[..q].to_vec()
    }
}

fn check_input(h: &QubitOperator, f: f64, psi: &[C64]) -> Result<()> {
    if !(0.0..=1.0).contains(&f) {
        return Err(ErrorModelError::Input(format!("jump fraction {f} outside [0, 1]")));
    }
    if psi.len() != h.dim() {
        return Err(ErrorModelError::Input(format!("state length {} for dimension {}", psi.len(), h.dim())));
    }
    Ok(())
}

/// Cutoff covering the final amplitudes `α|E′|`: the usual `s² + 6s + 10`,
/// raised until the coherent amplitude at the top level is below `1e−12`,
/// since the trajectory is compared amplitude by amplitude.
pub fn jump_cutoff(h: &QubitOperator, alpha: f64) -> Result<usize> {
    let s = alpha.abs() * h.spectral_norm();
    let mut d = (s * s + 6.0 * s + 10.0).ceil() as usize;
    let ln_amp = |n: usize| -0.5 * s * s + n as f64 * s.max(1e-300).ln() - 0.5 * (1..=n).map(|k| (k as f64).ln()).sum::<f64>();
    while s > 0.0 && ln_amp(d - 1) > (1e-12f64).ln() {
        d += 1;
    }
    Ok(d)
}

/// `Σ_n α̃E′_n ψ_n |E_n⟩ ⊗ |αE′_n⟩` with `α̃ = fα`.
pub fn predicted_jump_state(h: &QubitOperator, alpha: f64, f: f64, psi: &[C64], cutoff: usize) -> Result<JumpPrediction> {
    check_input(h, f, psi)?;
    let q = h.dim();
    let (vals, vecs) = h.eigh()?;
    let mut out = vec![C64::new(0.0, 0.0); q * cutoff];
    let mut weights = Vec::with_capacity(q);
    for (n, &e) in vals.iter().enumerate() {
        let amp: C64 = (0..q).map(|r| vecs[(r, n)].conj() * psi[r]).sum();
        let w = amp * (f * alpha * e);
        weights.push((e, w));
        let coh = coherent_state(cutoff, C64::new(alpha * e, 0.0))?;
        for (level, c) in coh.iter().enumerate() {
            for r in 0..q {
                out[r + q * level] += w * c * vecs[(r, n)];
            }
        }
    }
    Ok((out, weights))
}

/// One photon lost after a fraction `f` of the displacement:
/// `D_{H′}((1−f)α) a D_{H′}(fα) |ψ⟩|0⟩`, simulated with dense truncated
/// propagators and compared with the rescaled-amplitude prediction.
pub fn single_jump_trajectory(h: &QubitOperator, alpha: f64, f: f64, psi: &[C64], cutoff: Option<usize>) -> Result<JumpReport> {
    check_input(h, f, psi)?;
    let d = match cutoff {
        Some(d) => d,
        None => jump_cutoff(h, alpha)?,
    };
    let q = h.dim();
    let before = displacement_unitary(h, f * alpha, d)?;
    let after = displacement_unitary(h, (1.0 - f) * alpha, d)?;
    let jump = kron(&mode_ops(d)?.a, &CMat::identity(q, q));
    let mut start = fock_core::linalg::CMat::zeros(q * d, 1);
    for (r, z) in psi.iter().enumerate() {
        start[(r, 0)] = *z;
    }
    let out = after * (jump * (before * start));
    let trajectory: Vec<C64> = out.column(0).iter().copied().collect();

    let norm: f64 = trajectory.iter().map(|z| z.norm_sqr()).sum();
    let top: f64 = trajectory[q * (d - 1)..].iter().map(|z| z.norm_sqr()).sum();
    if norm > 0.0 && top / norm > fock_core::DEFAULT_TAIL_TOLERANCE {
        return Err(fock_core::Error::TailBreach {
            mode: 0,
            population: top / norm,
            tolerance: fock_core::DEFAULT_TAIL_TOLERANCE,
        }
        .into());
    }

    let (prediction, weights) = predicted_jump_state(h, alpha, f, psi, d)?;
    let deviation = trajectory.iter().zip(&prediction).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    Ok(JumpReport { trajectory, prediction, deviation, weights, cutoff: d })
}
