use std::collections::HashMap;
use std::sync::Arc;

use fock_core::linalg::{CMat, C64};
use fock_core::{transition_block, Exec, HybridRegister, LocalOp, QubitOperator, StateVector, DEFAULT_TAIL_TOLERANCE};

use crate::{Circuit, Gate, GateError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimOptions {
    pub tail_tolerance: f64,
    pub exec: Exec,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self { tail_tolerance: DEFAULT_TAIL_TOLERANCE, exec: Exec::default() }
    }
}

struct Step {
    op: Arc<LocalOp>,
    targets: Vec<usize>,
    /// Modes whose photon statistics this gate can change.
    watch: Vec<usize>,
}

/// A circuit lowered to local sparse operators at a fixed cutoff.
///
/// Identical gates (up to operands) share one operator.
pub struct Program {
    register: HybridRegister,
    steps: Vec<Step>,
    opts: SimOptions,
}

fn operand_free(g: &Gate) -> Gate {
    match *g {
        Gate::R { theta, .. } => Gate::R { mode: 0, theta },
        Gate::F { .. } => Gate::F { mode: 0 },
        Gate::D { alpha, .. } => Gate::D { mode: 0, alpha },
        Gate::BS { theta, phi, .. } => Gate::BS { j: 0, k: 1, theta, phi },
        Gate::Rm { axis, theta, .. } => Gate::Rm { qubit: 0, axis, theta },
        Gate::RZ { theta, .. } => Gate::RZ { mode: 0, qubit: 0, theta },
        Gate::P { .. } => Gate::P { mode: 0, qubit: 0 },
        Gate::DZ { alpha, .. } => Gate::DZ { mode: 0, qubit: 0, alpha },
    }
}

impl Program {
    pub fn new(circuit: &Circuit, cutoff: usize, opts: SimOptions) -> Result<Self> {
        circuit.lint()?;
        let register = circuit.register(cutoff)?;
        let mut cache: HashMap<String, Arc<LocalOp>> = HashMap::new();
        let mut steps = Vec::with_capacity(circuit.len());
        for g in circuit.gates() {
            let key = format!("{:?}", operand_free(g));
            let op = match cache.get(&key) {
                Some(op) => op.clone(),
                None => {
                    let op = Arc::new(LocalOp::from_dense_pruned(&g.local_unitary(cutoff)?, 1e-15));
                    cache.insert(key, op.clone());
                    op
                }
            };
            let watch = match g {
                Gate::D { .. } | Gate::DZ { .. } | Gate::BS { .. } => g.modes(),
                _ => Vec::new(),
            };
            steps.push(Step { op, targets: g.targets(&register), watch });
        }
        Ok(Self { register, steps, opts })
    }

    pub fn register(&self) -> HybridRegister {
        self.register
    }

    pub fn options(&self) -> SimOptions {
        self.opts
    }

    /// Evolve `state` in place, checking the Fock tail after every gate that
    /// can move photons.
    pub fn run_with(&self, state: &mut StateVector, exec: Exec) -> Result<()> {
        if *state.register() != self.register {
            return Err(GateError::Operand("state register does not match program".into()));
        }
        let mut scratch = Vec::with_capacity(self.register.dim());
        for step in &self.steps {
            state.apply(&step.op, &step.targets, exec, &mut scratch)?;
            if !step.watch.is_empty() {
                state.check_tail(&step.watch, self.opts.tail_tolerance)?;
            }
        }
        Ok(())
    }

    pub fn run(&self, state: &mut StateVector) -> Result<()> {
        self.run_with(state, self.opts.exec)
    }

    /// `⟨levels|_B U |0…0⟩_B` as a qubit operator.
    pub fn transition_block(&self, levels: &[usize]) -> Result<QubitOperator> {
        // parallelism goes over columns; each column runs sequentially
        transition_block(self.register, levels, self.opts.exec, |st| self.run_with(st, Exec::Sequential))
    }

    pub fn vacuum_block(&self) -> Result<QubitOperator> {
        self.transition_block(&vec![0; self.register.n_modes()])
    }
}

/// Dense unitary of a circuit on a small register, column by column.
pub fn circuit_unitary(circuit: &Circuit, cutoff: usize) -> Result<CMat> {
    let opts = SimOptions { tail_tolerance: f64::INFINITY, exec: Exec::Sequential };
    let prog = Program::new(circuit, cutoff, opts)?;
    let reg = prog.register();
    let dim = reg.dim();
    if dim > 4096 {
        return Err(GateError::Operand(format!("register dimension {dim} too large for a dense unitary")));
    }
    let cols = Exec::default().map(dim, |c| -> Result<Vec<C64>> {
        let mut st = StateVector::basis(reg, c)?;
        prog.run_with(&mut st, Exec::Sequential)?;
        Ok(st.into_amplitudes())
    });
    let mut u = CMat::zeros(dim, dim);
    for (c, col) in cols.into_iter().enumerate() {
        for (r, z) in col?.into_iter().enumerate() {
            u[(r, c)] = z;
        }
    }
    Ok(u)
}
