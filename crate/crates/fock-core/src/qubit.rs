use nalgebra::DVector;

use crate::linalg::{self, CMat, C64};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMat {
        let o = C64::new(0.0, 0.0);
        let l = C64::new(1.0, 0.0);
        let i = C64::new(0.0, 1.0);
        match self {
            Pauli::I => CMat::from_row_slice(2, 2, &[l, o, o, l]),
            Pauli::X => CMat::from_row_slice(2, 2, &[o, l, l, o]),
            Pauli::Y => CMat::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => CMat::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }

    /// `(phase, output bit)` for the action on bit `b`.
    fn act(self, b: usize) -> (C64, usize) {
        match self {
            Pauli::I => (C64::new(1.0, 0.0), b),
            Pauli::X => (C64::new(1.0, 0.0), b ^ 1),
            Pauli::Y => (if b == 0 { C64::new(0.0, 1.0) } else { C64::new(0.0, -1.0) }, b ^ 1),
            Pauli::Z => (C64::new(if b == 0 { 1.0 } else { -1.0 }, 0.0), b),
        }
    }
}

/// Dense operator on `N` qubits, little-endian like the hybrid layout.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitOperator {
    n_qubits: usize,
    matrix: CMat,
}

impl QubitOperator {
    pub fn new(n_qubits: usize, matrix: CMat) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: matrix.nrows().max(matrix.ncols()) });
        }
        Ok(Self { n_qubits, matrix })
    }

    pub fn identity(n_qubits: usize) -> Self {
        Self { n_qubits, matrix: linalg::identity(1 << n_qubits) }
    }

    pub fn zeros(n_qubits: usize) -> Self {
        let d = 1 << n_qubits;
        Self { n_qubits, matrix: CMat::zeros(d, d) }
    }

    /// Tensor product of Paulis, `ops[(q, P)]` acting on qubit `q`.
    pub fn pauli_string(n_qubits: usize, ops: &[(usize, Pauli)]) -> Self {
        let d = 1usize << n_qubits;
        let mut m = CMat::zeros(d, d);
        for col in 0..d {
            let mut row = col;
            let mut phase = C64::new(1.0, 0.0);
            for &(q, p) in ops {
                let (ph, b) = p.act((row >> q) & 1);
                phase *= ph;
                row = (row & !(1 << q)) | (b << q);
            }
            m[(row, col)] += phase;
        }
        Self { n_qubits, matrix: m }
    }

    pub fn single(n_qubits: usize, q: usize, p: Pauli) -> Self {
        Self::pauli_string(n_qubits, &[(q, p)])
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn dagger(&self) -> Self {
        Self { n_qubits: self.n_qubits, matrix: self.matrix.adjoint() }
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { n_qubits: self.n_qubits, matrix: &self.matrix * C64::new(s, 0.0) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { n_qubits: self.n_qubits, matrix: &self.matrix + &other.matrix }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { n_qubits: self.n_qubits, matrix: &self.matrix - &other.matrix }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { n_qubits: self.n_qubits, matrix: &self.matrix * &other.matrix }
    }

    /// `self − shift·1`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut m = self.matrix.clone();
        for k in 0..m.nrows() {
            m[(k, k)] -= C64::new(shift, 0.0);
        }
        Self { n_qubits: self.n_qubits, matrix: m }
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self { n_qubits: self.n_qubits, matrix: linalg::commutator(&self.matrix, &other.matrix) }
    }

    pub fn hermiticity_error(&self) -> f64 {
        linalg::hermiticity_error(&self.matrix)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn max_abs(&self) -> f64 {
        linalg::max_abs(&self.matrix)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        linalg::max_abs_diff(&self.matrix, &other.matrix)
    }

    pub fn spectral_norm(&self) -> f64 {
        linalg::spectral_norm(&self.matrix)
    }

    pub fn eigh(&self) -> Result<(DVector<f64>, CMat)> {
        let err = self.hermiticity_error();
        if err > 1e-10 {
            return Err(Error::NotHermitian(err));
        }
        linalg::eigh(&self.matrix)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigh()?.0.iter().copied().collect())
    }

    /// `f(A)` for Hermitian `A`.
    pub fn map_spectrum<F: Fn(f64) -> C64>(&self, f: F) -> Result<Self> {
        Ok(Self { n_qubits: self.n_qubits, matrix: linalg::hermitian_fn(&self.matrix, f)? })
    }

    pub fn apply(&self, psi: &[C64]) -> Vec<C64> {
        let v = DVector::from_column_slice(psi);
        (&self.matrix * v).iter().copied().collect()
    }

    /// `⟨ψ|A|ψ⟩`.
    pub fn expectation(&self, psi: &[C64]) -> C64 {
        let v = DVector::from_column_slice(psi);
        (v.adjoint() * &self.matrix * &v)[(0, 0)]
    }
}
