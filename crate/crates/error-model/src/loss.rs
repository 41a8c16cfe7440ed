use filter::displacement_unitary;
use fock_core::linalg::{CMat, C64};
use fock_core::{mode_ops, QubitOperator};

use crate::{ErrorModelError, Result};

/// Amplitude damping of one mode over a short step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossChannel {
    pub kappa: f64,
    pub dt: f64,
    pub cutoff: usize,
}

impl LossChannel {
    /// Requires `κδt(d−1) ≤ 0.1` so the first-order Kraus pair stays accurate.
    pub fn new(kappa: f64, dt: f64, cutoff: usize) -> Result<Self> {
        if !(kappa >= 0.0 && dt >= 0.0 && kappa.is_finite() && dt.is_finite()) {
            return Err(ErrorModelError::Input(format!("need finite κ, δt ≥ 0, got {kappa}, {dt}")));
        }
        if cutoff < 2 {
            return Err(ErrorModelError::Input(format!("cutoff {cutoff} below 2")));
        }
        let load = kappa * dt * (cutoff - 1) as f64;
        if load > 0.1 {
            return Err(ErrorModelError::Validity(format!("κδt(d−1) = {load} exceeds 0.1")));
        }
        Ok(Self { kappa, dt, cutoff })
    }

    pub fn rate(&self) -> f64 {
        self.kappa * self.dt
    }

    /// `max |K₀†K₀ + K₁†K₁ − 1|` over levels below the top one.
    pub fn completeness_deviation(&self) -> f64 {
        let (k0, k1) = kraus_pair(self);
        let s = k0.adjoint() * &k0 + k1.adjoint() * &k1;
        let inner = self.cutoff - 1;
        let mut worst = 0.0f64;
        for r in 0..inner {
            for c in 0..inner {
                let id = if r == c { 1.0 } else { 0.0 };
                worst = worst.max((s[(r, c)] - C64::new(id, 0.0)).norm());
            }
        }
        worst
    }
}

/// `K₀ = e^{−κδt n/2}`, `K₁ = √(κδt) a`.
pub fn kraus_pair(ch: &LossChannel) -> (CMat, CMat) {
    let ops = mode_ops(ch.cutoff).expect("cutoff checked on construction");
    let k0 = CMat::from_fn(ch.cutoff, ch.cutoff, |r, c| {
        if r == c {
            C64::new((-0.5 * ch.rate() * r as f64).exp(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    (k0, ops.a * C64::new(ch.rate().sqrt(), 0.0))
}

/// `α e^{−κT/2}`: the amplitude left if the whole displacement decayed for time T.
pub fn no_jump_rescaling(alpha: f64, kappa: f64, t: f64) -> f64 {
    alpha * (-0.5 * kappa * t).exp()
}

/// Effective α of the no-jump branch when the displacement is spread evenly
/// over `[0, T]` while the mode decays at rate κ.
///
/// The mode stays coherent, so the branch is again a Gaussian filter. With
/// `u = κT` the amplitude reaches `αE·b`, `b = 2(1 − e^{−u/2})/u`, and the
/// no-jump weight adds `α²E²(4/u²)(u − 4(1 − e^{−u/2}) + 1 − e^{−u})`.
pub fn no_jump_alpha_exact(alpha: f64, kappa: f64, t: f64) -> f64 {
    let u = kappa * t;
    let c = if u < 1e-4 {
        1.0 - u / 6.0 + u * u / 48.0
    } else {
        let (half, full) = (-(-u / 2.0).exp_m1(), -(-u).exp_m1());
        let b = 2.0 * half / u;
        b * b + 4.0 / (u * u) * (u - 4.0 * half + full)
    };
    alpha * c.sqrt()
}

/// Unnormalized vacuum block of the no-jump branch: `steps` slices of
/// `e^{−2i(α/steps)H′⊗p}` each followed by `K₀` for `δt = T/steps`.
pub fn no_jump_filter(h: &QubitOperator, alpha: f64, kappa: f64, t: f64, steps: usize, cutoff: usize) -> Result<QubitOperator> {
    if steps == 0 {
        return Err(ErrorModelError::Input("need at least one step".into()));
    }
    let ch = LossChannel::new(kappa, t / steps as f64, cutoff)?;
    let q = h.dim();
    let u = displacement_unitary(h, alpha / steps as f64, cutoff)?;
    let (k0, _) = kraus_pair(&ch);
    let step = fock_core::linalg::kron(&k0, &CMat::identity(q, q)) * u;
    // columns are |q⟩ ⊗ |0⟩; the vacuum rows are the first q
    let mut block = CMat::zeros(q * cutoff, q);
    for i in 0..q {
        block[(i, i)] = C64::new(1.0, 0.0);
    }
    for _ in 0..steps {
        block = &step * block;
    }
    let top = (0..q).map(|c| (0..q).map(|r| block[(q * (cutoff - 1) + r, c)].norm_sqr()).sum::<f64>()).fold(0.0, f64::max);
    if top > fock_core::DEFAULT_TAIL_TOLERANCE {
        return Err(
            fock_core::Error::TailBreach { mode: 0, population: top, tolerance: fock_core::DEFAULT_TAIL_TOLERANCE }.into()
        );
    }
    Ok(QubitOperator::new(h.n_qubits(), block.rows(0, q).into_owned())?)
}
