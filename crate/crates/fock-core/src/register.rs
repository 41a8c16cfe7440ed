use crate::{Error, FockSpace, Result};

/// `N` qubits followed by `M` modes sharing one Fock cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HybridRegister {
    n_qubits: usize,
    n_modes: usize,
    cutoff: usize,
}

impl HybridRegister {
    pub fn new(n_qubits: usize, n_modes: usize, cutoff: usize) -> Result<Self> {
        if n_modes > 0 {
            FockSpace::new(cutoff)?;
        }
        Ok(Self { n_qubits, n_modes, cutoff: if n_modes == 0 { cutoff.max(2) } else { cutoff } })
    }

    pub fn qubits_only(n_qubits: usize) -> Self {
        Self { n_qubits, n_modes: 0, cutoff: 2 }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn with_cutoff(&self, cutoff: usize) -> Result<Self> {
        Self::new(self.n_qubits, self.n_modes, cutoff)
    }

    pub fn qubit_dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.qubit_dim() * self.cutoff.pow(self.n_modes as u32)
    }

    pub fn n_subsystems(&self) -> usize {
        self.n_qubits + self.n_modes
    }

    /// Subsystem index of mode `j`.
    pub fn mode(&self, j: usize) -> usize {
        self.n_qubits + j
    }

    pub fn is_mode(&self, s: usize) -> bool {
        s >= self.n_qubits && s < self.n_subsystems()
    }

    pub fn subsystem_dim(&self, s: usize) -> usize {
        if s < self.n_qubits {
            2
        } else {
            self.cutoff
        }
    }

    pub fn stride(&self, s: usize) -> usize {
        if s < self.n_qubits {
            1 << s
        } else {
            self.qubit_dim() * self.cutoff.pow((s - self.n_qubits) as u32)
        }
    }

    /// Digit of subsystem `s` in basis index `idx`.
    pub fn digit(&self, idx: usize, s: usize) -> usize {
        (idx / self.stride(s)) % self.subsystem_dim(s)
    }

    pub fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.n_qubits {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { what: "qubit", index: q, limit: self.n_qubits })
        }
    }

    pub fn check_mode(&self, j: usize) -> Result<()> {
        if j < self.n_modes {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { what: "mode", index: j, limit: self.n_modes })
        }
    }

    /// Register with mode `j` removed.
    pub fn without_mode(&self, j: usize) -> Result<Self> {
        self.check_mode(j)?;
        Ok(Self { n_modes: self.n_modes - 1, ..*self })
    }
}
