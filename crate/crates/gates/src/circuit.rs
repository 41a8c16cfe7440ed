use std::collections::BTreeMap;
use std::f64::consts::PI;

use fock_core::{FockSpace, HybridRegister};
use serde::{Deserialize, Serialize};

use crate::{Gate, GateError, Result};

/// Ordered gate list over `n_qubits` qubits and `n_modes` modes.
///
/// Gates are in time order: `gates[0]` acts first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Circuit {
    pub n_qubits: usize,
    pub n_modes: usize,
    gates: Vec<Gate>,
    /// Number of composite SWAP-network layers emitted by the compiler.
    #[serde(default)]
    pub sn_count: usize,
    #[serde(default = "one")]
    pub trotter_reps: usize,
}

fn one() -> usize {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CircuitStats {
    pub counts: BTreeMap<String, usize>,
    pub n_gates: usize,
    pub sn_count: usize,
    pub trotter_reps: usize,
    /// Σ|α| over every displacement in the circuit.
    pub total_displacement: f64,
    /// Largest Σ|α| accumulated by any one oscillator, following it through
    /// swaps. Proxy for the wall-clock duration of the displacement layers.
    pub duration_proxy: f64,
}

impl Circuit {
    pub fn new(n_qubits: usize, n_modes: usize) -> Self {
        Self { n_qubits, n_modes, gates: Vec::new(), sn_count: 0, trotter_reps: 1 }
    }

    pub fn from_gates(n_qubits: usize, n_modes: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut c = Self::new(n_qubits, n_modes);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        g.check(self.n_qubits, self.n_modes)?;
        self.gates.push(g);
        Ok(())
    }

    pub fn extend<I: IntoIterator<Item = Gate>>(&mut self, gates: I) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        self.extend(other.gates.iter().copied())?;
        self.sn_count += other.sn_count;
        Ok(())
    }

    pub(crate) fn replace_gates(&mut self, gates: Vec<Gate>) {
        self.gates = gates;
    }

    pub fn inverse(&self) -> Circuit {
        Circuit { gates: self.gates.iter().rev().map(Gate::inverse).collect(), ..self.clone() }
    }

    /// Re-validate every gate. Deserialized circuits are linted on load.
    pub fn lint(&self) -> Result<()> {
        for (i, g) in self.gates.iter().enumerate() {
            g.check(self.n_qubits, self.n_modes).map_err(|e| GateError::Operand(format!("gate {i}: {e}")))?;
        }
        Ok(())
    }

    pub fn register(&self, cutoff: usize) -> Result<HybridRegister> {
        Ok(HybridRegister::new(self.n_qubits, self.n_modes, cutoff)?)
    }

    /// Per-oscillator Σ|α|, tracking oscillators through full swaps.
    /// Partial beam splitters merge the two budgets conservatively.
    pub fn oscillator_displacements(&self) -> Vec<f64> {
        let mut owner: Vec<usize> = (0..self.n_modes).collect();
        let mut acc = vec![0.0; self.n_modes];
        for g in &self.gates {
            match *g {
                Gate::D { mode, alpha } | Gate::DZ { mode, alpha, .. } => acc[owner[mode]] += alpha.norm(),
                Gate::BS { j, k, theta, .. } => {
                    let full_swap = ((theta.abs() / PI).round() - theta.abs() / PI).abs() < 1e-12
                        && (theta.abs() / PI).round() as i64 % 2 == 1;
                    if full_swap {
                        owner.swap(j, k);
                    } else if theta != 0.0 {
                        let s = acc[owner[j]] + acc[owner[k]];
                        acc[owner[j]] = s;
                        acc[owner[k]] = s;
                    }
                }
                _ => {}
            }
        }
        acc
    }

    /// Cutoff policy applied to the largest per-oscillator displacement budget.
    pub fn recommended_cutoff(&self) -> usize {
        let s = self.oscillator_displacements().into_iter().fold(0.0, f64::max);
        FockSpace::for_displacement(s).cutoff()
    }

    pub fn stats(&self) -> CircuitStats {
        let mut counts = BTreeMap::new();
        for g in &self.gates {
            *counts.entry(g.kind().to_string()).or_insert(0) += 1;
        }
        CircuitStats {
            counts,
            n_gates: self.gates.len(),
            sn_count: self.sn_count,
            trotter_reps: self.trotter_reps,
            total_displacement: self.gates.iter().map(Gate::displacement_magnitude).sum(),
            duration_proxy: self.oscillator_displacements().into_iter().fold(0.0, f64::max),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Circuit = serde_json::from_str(s)?;
        c.lint()?;
        Ok(c)
    }
}
