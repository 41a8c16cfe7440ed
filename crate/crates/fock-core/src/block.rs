use crate::linalg::CMat;
use crate::{Error, Exec, HybridRegister, QubitOperator, StateVector};

/// `⟨0…0|_B U |0…0⟩_B` built column by column.
///
/// `evolve` applies `U` in place; each column starts from `|q⟩ ⊗ |vac⟩`.
pub fn vacuum_block<F, E>(register: HybridRegister, exec: Exec, evolve: F) -> Result<QubitOperator, E>
where
    F: Fn(&mut StateVector) -> Result<(), E> + Sync + Send,
    E: From<Error> + Send,
{
    let zeros = vec![0; register.n_modes()];
    transition_block(register, &zeros, exec, evolve)
}

/// `⟨m_0 … m_{M−1}|_B U |0…0⟩_B` for the given Fock outcomes.
pub fn transition_block<F, E>(register: HybridRegister, levels: &[usize], exec: Exec, evolve: F) -> Result<QubitOperator, E>
where
    F: Fn(&mut StateVector) -> Result<(), E> + Sync + Send,
    E: From<Error> + Send,
{
    let q = register.qubit_dim();
    let columns = exec.map(q, |col| -> Result<Vec<_>, E> {
        let mut st = StateVector::basis(register, col)?;
        evolve(&mut st)?;
        Ok(st.qubit_amplitudes(levels)?)
    });
    let mut m = CMat::zeros(q, q);
    for (col, c) in columns.into_iter().enumerate() {
        for (row, z) in c?.into_iter().enumerate() {
            m[(row, col)] = z;
        }
    }
    Ok(QubitOperator::new(register.n_qubits(), m)?)
}
