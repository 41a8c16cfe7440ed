use std::collections::HashSet;

use fock_core::{Pauli, QubitOperator};
use serde::{Deserialize, Serialize};

use crate::{CompileError, Result};

/// One two-body term `Jx X_jX_k + Jy Y_jY_k + Jz Z_jZ_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(usize, usize, f64, f64, f64)", into = "(usize, usize, f64, f64, f64)")]
pub struct Edge {
    pub j: usize,
    pub k: usize,
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
}

impl From<(usize, usize, f64, f64, f64)> for Edge {
    fn from((j, k, jx, jy, jz): (usize, usize, f64, f64, f64)) -> Self {
        Self { j, k, jx, jy, jz }
    }
}

impl From<Edge> for (usize, usize, f64, f64, f64) {
    fn from(e: Edge) -> Self {
        (e.j, e.k, e.jx, e.jy, e.jz)
    }
}

impl Edge {
    pub fn heisenberg(j: usize, k: usize) -> Self {
        Self::xxz(j, k, 1.0)
    }

    pub fn xxz(j: usize, k: usize, delta: f64) -> Self {
        Self { j, k, jx: 1.0, jy: 1.0, jz: delta }
    }

    pub fn is_isotropic_unit(&self) -> bool {
        self.jx == 1.0 && self.jy == 1.0 && self.jz == 1.0
    }

    fn key(&self) -> (usize, usize) {
        (self.j.min(self.k), self.j.max(self.k))
    }

    pub fn touches(&self, q: usize) -> bool {
        self.j == q || self.k == q
    }

    /// The bond operator on `n` qubits.
    pub fn operator(&self, n: usize) -> QubitOperator {
        let mut h = QubitOperator::zeros(n);
        for (p, w) in [(Pauli::X, self.jx), (Pauli::Y, self.jy), (Pauli::Z, self.jz)] {
            if w != 0.0 {
                h = h.add(&QubitOperator::pauli_string(n, &[(self.j, p), (self.k, p)]).scale(w));
            }
        }
        h
    }
}

/// Weighted 2-local spin Hamiltonian with a spectrum shift `E_s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinHamiltonian {
    pub n_qubits: usize,
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub shift: f64,
}

impl SpinHamiltonian {
    pub fn new(n_qubits: usize, edges: Vec<Edge>, shift: f64) -> Result<Self> {
        let h = Self { n_qubits, edges, shift };
        h.validate()?;
        Ok(h)
    }

    /// Isotropic Heisenberg chain with unit couplings.
    pub fn heisenberg_chain(n: usize, periodic: bool, shift: f64) -> Result<Self> {
        let mut edges: Vec<Edge> = (0..n.saturating_sub(1)).map(|j| Edge::heisenberg(j, j + 1)).collect();
        if periodic && n > 2 {
            edges.push(Edge::heisenberg(n - 1, 0));
        }
        Self::new(n, edges, shift)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for e in &self.edges {
            if e.j >= self.n_qubits || e.k >= self.n_qubits {
                return Err(CompileError::Graph(format!("edge ({},{}) outside {} qubits", e.j, e.k, self.n_qubits)));
            }
            if e.j == e.k {
                return Err(CompileError::Graph(format!("self-loop on qubit {}", e.j)));
            }
            if !seen.insert(e.key()) {
                return Err(CompileError::Graph(format!("repeated edge ({},{})", e.j, e.k)));
            }
            if ![e.jx, e.jy, e.jz].iter().all(|v| v.is_finite()) {
                return Err(CompileError::Graph(format!("non-finite coupling on ({},{})", e.j, e.k)));
            }
        }
        if !self.shift.is_finite() {
            return Err(CompileError::Graph("non-finite shift".into()));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let h: Self = serde_json::from_str(s)?;
        h.validate()?;
        Ok(h)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn with_shift(&self, shift: f64) -> Self {
        Self { shift, ..self.clone() }
    }

    pub fn is_heisenberg(&self) -> bool {
        self.edges.iter().all(Edge::is_isotropic_unit)
    }

    /// Maximum vertex degree.
    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0usize; self.n_qubits];
        for e in &self.edges {
            deg[e.j] += 1;
            deg[e.k] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }

    /// Sum of the listed edge operators, without shift.
    pub fn partition_matrix(&self, edges: &[usize]) -> QubitOperator {
        edges.iter().fold(QubitOperator::zeros(self.n_qubits), |acc, &i| acc.add(&self.edges[i].operator(self.n_qubits)))
    }

    /// `H` without the shift.
    pub fn unshifted_matrix(&self) -> QubitOperator {
        self.partition_matrix(&(0..self.edges.len()).collect::<Vec<_>>())
    }

    /// `H′ = H − E_s`.
    pub fn dense_matrix(&self) -> QubitOperator {
        self.unshifted_matrix().shifted(self.shift)
    }
}
