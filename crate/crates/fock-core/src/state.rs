use crate::linalg::{CMat, C64};
use crate::{Error, Exec, HybridRegister, LocalOp, Result};

/// Amplitudes over a [`HybridRegister`].
///
/// Post-selected states are kept unnormalized and carry `normalized == false`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    register: HybridRegister,
    amps: Vec<C64>,
    normalized: bool,
}

impl StateVector {
    pub fn from_amplitudes(register: HybridRegister, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != register.dim() {
            return Err(Error::DimensionMismatch { expected: register.dim(), got: amps.len() });
        }
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        Ok(Self { register, amps, normalized: (norm - 1.0).abs() <= 1e-10 })
    }

    /// Computational basis state `|idx⟩`.
    pub fn basis(register: HybridRegister, idx: usize) -> Result<Self> {
        if idx >= register.dim() {
            return Err(Error::IndexOutOfRange { what: "basis", index: idx, limit: register.dim() });
        }
        let mut amps = vec![C64::new(0.0, 0.0); register.dim()];
        amps[idx] = C64::new(1.0, 0.0);
        Ok(Self { register, amps, normalized: true })
    }

    /// `|ψ⟩_Q ⊗ |0…0⟩_B`.
    pub fn from_qubit_state(register: HybridRegister, psi: &[C64]) -> Result<Self> {
        if psi.len() != register.qubit_dim() {
            return Err(Error::DimensionMismatch { expected: register.qubit_dim(), got: psi.len() });
        }
        let mut amps = vec![C64::new(0.0, 0.0); register.dim()];
        amps[..psi.len()].copy_from_slice(psi);
        Self::from_amplitudes(register, amps)
    }

    /// Product state from a qubit vector and one Fock vector per mode.
    pub fn product(register: HybridRegister, psi: &[C64], modes: &[Vec<C64>]) -> Result<Self> {
        if modes.len() != register.n_modes() {
            return Err(Error::DimensionMismatch { expected: register.n_modes(), got: modes.len() });
        }
        let mut v = psi.to_vec();
        for m in modes {
            if m.len() != register.cutoff() {
                return Err(Error::DimensionMismatch { expected: register.cutoff(), got: m.len() });
            }
            let mut next = Vec::with_capacity(v.len() * m.len());
            for &c in m {
                next.extend(v.iter().map(|&x| x * c));
            }
            v = next;
        }
        Self::from_amplitudes(register, v)
    }

    pub fn register(&self) -> &HybridRegister {
        &self.register
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Population of mode `j` on Fock level `level`.
    pub fn level_population(&self, j: usize, level: usize) -> f64 {
        let s = self.register.mode(j);
        self.amps.iter().enumerate().filter(|(g, _)| self.register.digit(*g, s) == level).map(|(_, z)| z.norm_sqr()).sum()
    }

    /// Population on the top Fock level of mode `j`, relative to the norm.
    pub fn tail_population(&self, j: usize) -> f64 {
        let n = self.norm_sqr();
        if n == 0.0 {
            return 0.0;
        }
        self.level_population(j, self.register.cutoff() - 1) / n
    }

    pub fn check_tail(&self, modes: &[usize], tolerance: f64) -> Result<()> {
        for &j in modes {
            let population = self.tail_population(j);
            if population > tolerance {
                return Err(Error::TailBreach { mode: j, population, tolerance });
            }
        }
        Ok(())
    }

    /// In-place application of a precompiled local operator.
    pub fn apply(&mut self, op: &LocalOp, targets: &[usize], exec: Exec, scratch: &mut Vec<C64>) -> Result<()> {
        scratch.resize(self.amps.len(), C64::new(0.0, 0.0));
        op.apply_into(&self.register, targets, &self.amps, scratch, exec)?;
        std::mem::swap(&mut self.amps, scratch);
        Ok(())
    }

    /// Reduced amplitudes on the qubits after projecting every mode onto `levels`.
    pub fn qubit_amplitudes(&self, levels: &[usize]) -> Result<Vec<C64>> {
        if levels.len() != self.register.n_modes() {
            return Err(Error::DimensionMismatch { expected: self.register.n_modes(), got: levels.len() });
        }
        let mut offset = 0;
        for (j, &m) in levels.iter().enumerate() {
            if m >= self.register.cutoff() {
                return Err(Error::IndexOutOfRange { what: "Fock level", index: m, limit: self.register.cutoff() });
            }
            offset += m * self.register.stride(self.register.mode(j));
        }
        Ok(self.amps[offset..offset + self.register.qubit_dim()].to_vec())
    }
}

/// All qubits in `|0⟩`, all modes in vacuum.
pub fn vacuum_state(register: HybridRegister) -> StateVector {
    StateVector::basis(register, 0).expect("index 0 is always valid")
}

/// Apply `op` on `targets` without building the full-space matrix.
pub fn apply_local(op: &CMat, targets: &[usize], state: &StateVector) -> Result<StateVector> {
    apply_local_with(op, targets, state, Exec::default())
}

pub fn apply_local_with(op: &CMat, targets: &[usize], state: &StateVector, exec: Exec) -> Result<StateVector> {
    let local = LocalOp::from_dense(op);
    let mut out = vec![C64::new(0.0, 0.0); state.amps.len()];
    local.apply_into(&state.register, targets, &state.amps, &mut out, exec)?;
    let norm: f64 = out.iter().map(|z| z.norm_sqr()).sum();
    Ok(StateVector { register: state.register, amps: out, normalized: state.normalized && (norm - 1.0).abs() <= 1e-10 })
}

/// `⟨m|_mode ψ⟩` on the remaining register, with its squared norm.
pub fn project_mode(state: &StateVector, mode: usize, outcome: usize) -> Result<(StateVector, f64)> {
    let reg = state.register;
    let reduced = reg.without_mode(mode)?;
    if outcome >= reg.cutoff() {
        return Err(Error::IndexOutOfRange { what: "Fock level", index: outcome, limit: reg.cutoff() });
    }
    let stride = reg.stride(reg.mode(mode));
    let d = reg.cutoff();
    let amps: Vec<C64> = (0..reduced.dim())
        .map(|g| {
            let low = g % stride;
            let high = g / stride;
            state.amps[low + outcome * stride + high * stride * d]
        })
        .collect();
    let prob = amps.iter().map(|z| z.norm_sqr()).sum();
    Ok((StateVector { register: reduced, amps, normalized: false }, prob))
}
