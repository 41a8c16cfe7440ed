use std::path::Path;

use compiler::{Boundary, Edge, Lattice, Ordering, Schedule, SpinHamiltonian};
use fock_core::linalg::C64;
use serde::Deserialize;

use crate::CliError;

/// Interaction graph: either a lattice with uniform couplings or an explicit
/// edge list `[j, k, Jx, Jy, Jz]`.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    #[serde(default)]
    pub lattice: Option<Lattice>,
    #[serde(default = "periodic")]
    pub bc: Boundary,
    #[serde(default = "unit_couplings")]
    pub couplings: [f64; 3],
    #[serde(default)]
    pub n_qubits: Option<usize>,
    #[serde(default)]
    pub edges: Option<Vec<Edge>>,
}

fn periodic() -> Boundary {
    Boundary::Periodic
}

fn unit_couplings() -> [f64; 3] {
    [1.0, 1.0, 1.0]
}

impl Default for HamiltonianSpec {
    fn default() -> Self {
        Self {
            lattice: Some(Lattice::Chain(4)),
            bc: Boundary::Periodic,
            couplings: unit_couplings(),
            n_qubits: None,
            edges: None,
        }
    }
}

impl HamiltonianSpec {
    pub fn build(&self, shift: f64) -> Result<SpinHamiltonian, CliError> {
        match (&self.lattice, &self.edges) {
            (Some(lat), None) => {
                let [jx, jy, jz] = self.couplings;
                lat.hamiltonian(self.bc, (jx, jy, jz), shift).map_err(|e| CliError::Config(e.to_string()))
            }
            (None, Some(edges)) => {
                let n = self.n_qubits.ok_or_else(|| CliError::Config("an explicit edge list needs n_qubits".into()))?;
                SpinHamiltonian::new(n, edges.clone(), shift).map_err(|e| CliError::Config(e.to_string()))
            }
            _ => Err(CliError::Config("give exactly one of hamiltonian.lattice or hamiltonian.edges".into())),
        }
    }

    /// Lattice and boundary when the graph came from a lattice.
    pub fn lattice(&self) -> Option<(Lattice, Boundary)> {
        self.lattice.map(|l| (l, self.bc))
    }
}

/// α values: an explicit list or an inclusive arithmetic range.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AlphaSpec {
    List(Vec<f64>),
    Range { start: f64, stop: f64, step: f64 },
}

impl AlphaSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        let v = match self {
            AlphaSpec::List(v) => v.clone(),
            AlphaSpec::Range { start, stop, step } => {
                if !step.is_finite() || *step <= 0.0 || stop < start {
                    return Err(CliError::Config(format!("bad alpha range {start}..{stop} step {step}")));
                }
                let n = ((stop - start) / step + 1e-9).floor() as usize;
                (0..=n).map(|i| start + step * i as f64).collect()
            }
        };
        if v.is_empty() {
            return Err(CliError::Config("alpha grid is empty".into()));
        }
        if let Some(a) = v.iter().find(|a| !a.is_finite()) {
            return Err(CliError::Config(format!("non-finite alpha {a}")));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LossSpec {
    #[serde(default = "default_kappa")]
    pub kappa: f64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_fractions")]
    pub jump_fraction: Vec<f64>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn default_kappa() -> f64 {
    1.0
}
fn default_dt() -> f64 {
    1e-3
}
fn default_fractions() -> Vec<f64> {
    vec![0.25, 0.5, 1.0]
}
fn default_samples() -> usize {
    10_000
}

impl Default for LossSpec {
    fn default() -> Self {
        Self { kappa: default_kappa(), dt: default_dt(), jump_fraction: default_fractions(), samples: default_samples() }
    }
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PovmSpec {
    /// Fock outcomes `m < levels` reported.
    #[serde(default = "default_levels")]
    pub levels: usize,
    /// Coherent outcomes `[re, im]`.
    #[serde(default)]
    pub betas: Vec<[f64; 2]>,
}

fn default_levels() -> usize {
    4
}

impl Default for PovmSpec {
    fn default() -> Self {
        Self { levels: default_levels(), betas: vec![[0.0, 0.0], [0.2, 0.0], [0.0, 0.2]] }
    }
}

/// Scenario configuration; every field has a default, so `{}` is valid.
#[derive(Debug, Clone, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Subcommand this file is meant for; checked when present.
    #[serde(default)]
    pub scenario: Option<String>,
    #[serde(default)]
    pub hamiltonian: HamiltonianSpec,
    /// Defaults to one oscillator, color ordered, on the Hamiltonian's lattice.
    #[serde(default)]
    pub schedule: Option<Schedule>,
    #[serde(default)]
    pub alpha: Option<AlphaSpec>,
    #[serde(default)]
    pub bracket: Option<[f64; 2]>,
    #[serde(default)]
    pub samples: Option<usize>,
    #[serde(rename = "Es", default)]
    pub e_s: Option<f64>,
    #[serde(default)]
    pub cutoff: Option<usize>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub seed: Option<u64>,
    /// Oscillator counts compared by `parallel-check`.
    #[serde(rename = "M", default)]
    pub m_values: Option<Vec<usize>>,
    /// Input qubit state as `[re, im]` pairs; uniform superposition by default.
    #[serde(default)]
    pub input_state: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub loss: LossSpec,
    #[serde(default)]
    pub povm: PovmSpec,
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                Self::from_json(&text)
            }
        }
    }

    pub fn check_scenario(&self, name: &str) -> Result<(), CliError> {
        match &self.scenario {
            Some(s) if s != name => Err(CliError::Config(format!("config is for '{s}', not '{name}'"))),
            _ => Ok(()),
        }
    }

    /// Spectrum shift, −8 unless given.
    pub fn shift(&self) -> f64 {
        self.e_s.unwrap_or(-8.0)
    }

    pub fn hamiltonian(&self) -> Result<SpinHamiltonian, CliError> {
        self.hamiltonian.build(self.shift())
    }

    pub fn schedule(&self) -> Schedule {
        self.schedule.unwrap_or_else(|| Schedule::new(Ordering::ColorOrdered, 1, self.hamiltonian.lattice, self.hamiltonian.bc))
    }

    pub fn alphas(&self, default: AlphaSpec) -> Result<Vec<f64>, CliError> {
        self.alpha.clone().unwrap_or(default).values()
    }

    pub fn input_state(&self, dim: usize) -> Result<Vec<C64>, CliError> {
        match &self.input_state {
            None => Ok(vec![C64::new((dim as f64).recip().sqrt(), 0.0); dim]),
            Some(v) => {
                if v.len() != dim {
                    return Err(CliError::Config(format!("input_state has {} entries, need {dim}", v.len())));
                }
                let psi: Vec<C64> = v.iter().map(|[re, im]| C64::new(*re, *im)).collect();
                let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if norm == 0.0 {
                    return Err(CliError::Config("input_state is zero".into()));
                }
                Ok(psi.into_iter().map(|z| z / norm).collect())
            }
        }
    }
}
