use std::f64::consts::FRAC_PI_2;

use fock_core::linalg::{self, kron, CMat, C64, I};
use fock_core::{mode_ops, HybridRegister, Pauli};

use crate::{GateError, Result};

/// One instruction of the phase-space ISA.
///
/// Angles follow the exponent conventions: `R(θ) = e^{−iθn}`,
/// `BS(θ,φ) = exp[−iθ/2 (e^{iφ} a_j† a_k + e^{−iφ} a_k† a_j)]`,
/// `Rm(θ) = e^{−iθ m̂·σ/2}`, `RZ(θ) = e^{−iθ Z_k n_j}`,
/// `D(α) = e^{α a† − α* a}` and `DZ(α) = e^{Z_k (α a† − α* a)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    R { mode: usize, theta: f64 },
    F { mode: usize },
    D { mode: usize, alpha: C64 },
    BS { j: usize, k: usize, theta: f64, phi: f64 },
    Rm { qubit: usize, axis: [f64; 3], theta: f64 },
    RZ { mode: usize, qubit: usize, theta: f64 },
    P { mode: usize, qubit: usize },
    DZ { mode: usize, qubit: usize, alpha: C64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wire {
    Qubit(usize),
    Mode(usize),
}

impl Gate {
    pub fn kind(&self) -> &'static str {
        match self {
            Gate::R { .. } => "R",
            Gate::F { .. } => "F",
            Gate::D { .. } => "D",
            Gate::BS { .. } => "BS",
            Gate::Rm { .. } => "Rm",
            Gate::RZ { .. } => "RZ",
            Gate::P { .. } => "P",
            Gate::DZ { .. } => "DZ",
        }
    }

    pub fn displacement(mode: usize, alpha: f64) -> Self {
        Gate::D { mode, alpha: C64::new(alpha, 0.0) }
    }

    pub fn conditional_displacement(mode: usize, qubit: usize, alpha: f64) -> Self {
        Gate::DZ { mode, qubit, alpha: C64::new(alpha, 0.0) }
    }

    /// Qubit rotation about a normalized copy of `axis`.
    pub fn rotation(qubit: usize, axis: [f64; 3], theta: f64) -> Self {
        let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
        Gate::Rm { qubit, axis: [axis[0] / n, axis[1] / n, axis[2] / n], theta }
    }

    pub fn wires(&self) -> Vec<Wire> {
        match *self {
            Gate::R { mode, .. } | Gate::F { mode } | Gate::D { mode, .. } => vec![Wire::Mode(mode)],
            Gate::BS { j, k, .. } => vec![Wire::Mode(j), Wire::Mode(k)],
            Gate::Rm { qubit, .. } => vec![Wire::Qubit(qubit)],
            Gate::RZ { mode, qubit, .. } | Gate::P { mode, qubit } | Gate::DZ { mode, qubit, .. } => {
                vec![Wire::Qubit(qubit), Wire::Mode(mode)]
            }
        }
    }

    pub fn modes(&self) -> Vec<usize> {
        self.wires()
            .into_iter()
            .filter_map(|w| match w {
                Wire::Mode(j) => Some(j),
                Wire::Qubit(_) => None,
            })
            .collect()
    }

    /// Subsystem indices in the register layout, in local-operator order.
    pub fn targets(&self, reg: &HybridRegister) -> Vec<usize> {
        self.wires()
            .into_iter()
            .map(|w| match w {
                Wire::Qubit(q) => q,
                Wire::Mode(j) => reg.mode(j),
            })
            .collect()
    }

    pub fn check(&self, n_qubits: usize, n_modes: usize) -> Result<()> {
        for w in self.wires() {
            match w {
                Wire::Qubit(q) if q >= n_qubits => {
                    return Err(GateError::Operand(format!("{} addresses qubit {q} of {n_qubits}", self.kind())))
                }
                Wire::Mode(j) if j >= n_modes => {
                    return Err(GateError::Operand(format!("{} addresses mode {j} of {n_modes}", self.kind())))
                }
                _ => {}
            }
        }
        if let Gate::BS { j, k, .. } = self {
            if j == k {
                return Err(GateError::Operand(format!("BS needs two distinct modes, got ({j},{k})")));
            }
        }
        if let Gate::Rm { axis, .. } = self {
            let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
            if (n - 1.0).abs() > 1e-12 {
                return Err(GateError::Axis(n));
            }
        }
        let finite = match *self {
            Gate::R { theta, .. } | Gate::RZ { theta, .. } => theta.is_finite(),
            Gate::BS { theta, phi, .. } => theta.is_finite() && phi.is_finite(),
            Gate::Rm { theta, axis, .. } => theta.is_finite() && axis.iter().all(|a| a.is_finite()),
            Gate::D { alpha, .. } | Gate::DZ { alpha, .. } => alpha.re.is_finite() && alpha.im.is_finite(),
            Gate::F { .. } | Gate::P { .. } => true,
        };
        if !finite {
            return Err(GateError::Parameter(format!("{} has a non-finite parameter", self.kind())));
        }
        Ok(())
    }

    /// Inverse instruction (`F` and `P` invert to `R` and `RZ`).
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::R { mode, theta } => Gate::R { mode, theta: -theta },
            Gate::F { mode } => Gate::R { mode, theta: -FRAC_PI_2 },
            Gate::D { mode, alpha } => Gate::D { mode, alpha: -alpha },
            Gate::BS { j, k, theta, phi } => Gate::BS { j, k, theta: -theta, phi },
            Gate::Rm { qubit, axis, theta } => Gate::Rm { qubit, axis, theta: -theta },
            Gate::RZ { mode, qubit, theta } => Gate::RZ { mode, qubit, theta: -theta },
            Gate::P { mode, qubit } => Gate::RZ { mode, qubit, theta: -FRAC_PI_2 },
            Gate::DZ { mode, qubit, alpha } => Gate::DZ { mode, qubit, alpha: -alpha },
        }
    }

    /// Magnitude of displacement applied to the gate's mode.
    pub fn displacement_magnitude(&self) -> f64 {
        match self {
            Gate::D { alpha, .. } | Gate::DZ { alpha, .. } => alpha.norm(),
            _ => 0.0,
        }
    }

    /// Truncated anti-Hermitian generator `G` with `exp(G)` the gate, on
    /// [`Gate::targets`] (first target least significant).
    pub fn generator(&self, cutoff: usize) -> Result<CMat> {
        let ops = mode_ops(cutoff)?;
        let id_d = CMat::identity(cutoff, cutoff);
        let z = Pauli::Z.matrix();
        Ok(match *self {
            Gate::R { theta, .. } => &ops.n * (-I * theta),
            Gate::F { .. } => &ops.n * (-I * FRAC_PI_2),
            Gate::D { alpha, .. } => &ops.adag * alpha - &ops.a * alpha.conj(),
            Gate::BS { theta, phi, .. } => {
                let aj = kron(&id_d, &ops.a);
                let ak = kron(&ops.a, &id_d);
                let e = C64::from_polar(1.0, phi);
                let h = aj.adjoint() * &ak * e + ak.adjoint() * &aj * e.conj();
                h * (-I * (theta / 2.0))
            }
            Gate::Rm { axis, theta, .. } => pauli_axis(axis) * (-I * (theta / 2.0)),
            Gate::RZ { theta, .. } => kron(&ops.n, &z) * (-I * theta),
            Gate::P { .. } => kron(&ops.n, &z) * (-I * FRAC_PI_2),
            Gate::DZ { alpha, .. } => kron(&(&ops.adag * alpha - &ops.a * alpha.conj()), &z),
        })
    }

    /// Local unitary on [`Gate::targets`].
    pub fn local_unitary(&self, cutoff: usize) -> Result<CMat> {
        let d = cutoff;
        fock_core::FockSpace::new(d)?;
        Ok(match *self {
            Gate::R { theta, .. } => number_phase(d, theta),
            Gate::F { .. } => number_phase(d, FRAC_PI_2),
            Gate::RZ { theta, .. } => hybrid_phase(d, theta),
            Gate::P { .. } => hybrid_phase(d, FRAC_PI_2),
            Gate::Rm { axis, theta, .. } => {
                let id = CMat::identity(2, 2);
                id * C64::new((theta / 2.0).cos(), 0.0) - pauli_axis(axis) * (I * (theta / 2.0).sin())
            }
            Gate::D { .. } => linalg::expm_skew(&self.generator(d)?)?,
            Gate::DZ { alpha, .. } => {
                let plus = Gate::D { mode: 0, alpha }.local_unitary(d)?;
                let minus = Gate::D { mode: 0, alpha: -alpha }.local_unitary(d)?;
                let mut u = CMat::zeros(2 * d, 2 * d);
                for r in 0..d {
                    for c in 0..d {
                        u[(2 * r, 2 * c)] = plus[(r, c)];
                        u[(2 * r + 1, 2 * c + 1)] = minus[(r, c)];
                    }
                }
                u
            }
            Gate::BS { theta, phi, .. } => beam_splitter(d, theta, phi)?,
        })
    }
}

fn pauli_axis(axis: [f64; 3]) -> CMat {
    Pauli::X.matrix() * C64::new(axis[0], 0.0)
        + Pauli::Y.matrix() * C64::new(axis[1], 0.0)
        + Pauli::Z.matrix() * C64::new(axis[2], 0.0)
}

fn number_phase(d: usize, theta: f64) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_fn(d, |n, _| C64::from_polar(1.0, -theta * n as f64)))
}

fn hybrid_phase(d: usize, theta: f64) -> CMat {
    // local index = z + 2n, z=0 ↔ Z=+1
    CMat::from_diagonal(&nalgebra::DVector::from_fn(2 * d, |l, _| {
        let z = if l % 2 == 0 { 1.0 } else { -1.0 };
        C64::from_polar(1.0, -theta * z * (l / 2) as f64)
    }))
}

/// Beam splitter from exact fixed-photon-number blocks restricted to the
/// cutoff, so that `BS(π,0)` stays an exact permutation with phases.
fn beam_splitter(d: usize, theta: f64, phi: f64) -> Result<CMat> {
    let mut u = CMat::zeros(d * d, d * d);
    let e = C64::from_polar(1.0, phi);
    for total in 0..=(2 * d - 2) {
        // block basis |n_j = m, n_k = total − m⟩, m = 0..=total
        let size = total + 1;
        let mut h = CMat::zeros(size, size);
        for m in 0..total {
            // a_j† a_k: |m, t−m⟩ → √(m+1)√(t−m) |m+1, t−m−1⟩
            let amp = ((m + 1) as f64).sqrt() * ((total - m) as f64).sqrt();
            h[(m + 1, m)] += e * amp;
            h[(m, m + 1)] += e.conj() * amp;
        }
        let block = linalg::expm_skew(&(h * (-I * (theta / 2.0))))?;
        for r in 0..size {
            let (rj, rk) = (r, total - r);
            if rj >= d || rk >= d {
                continue;
            }
            for c in 0..size {
                let (cj, ck) = (c, total - c);
                if cj >= d || ck >= d {
                    continue;
                }
                u[(rj + d * rk, cj + d * ck)] = block[(r, c)];
            }
        }
    }
    Ok(u)
}
