use compiler::SpinHamiltonian;
use fock_core::linalg::{CMat, C64};
use fock_core::{Pauli, QubitOperator};

use crate::{AnalyticError, Result};

/// Clustering tolerance for each refinement stage.
const CLUSTER_TOL: f64 = 1e-9;

/// Quantum numbers of one 4-site eigenvector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenRow {
    pub n: usize,
    pub energy: f64,
    pub s: u32,
    pub sz: i32,
    /// Parity under the swap of sites 1 and 3.
    pub sigma: i32,
}

/// Simultaneous eigenbasis of H, S², S_z and SWAP₁₃ for the 4-site ring.
/// Column `n` of `vectors` is `|E_n⟩`.
#[derive(Debug, Clone)]
pub struct EigenTable4 {
    pub rows: Vec<EigenRow>,
    pub vectors: CMat,
}

impl EigenTable4 {
    pub fn energies(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.energy).collect()
    }

    /// `⟨E_m|op|E_n⟩`.
    pub fn in_eigenbasis(&self, op: &QubitOperator) -> CMat {
        self.vectors.adjoint() * op.matrix() * &self.vectors
    }

    pub fn to_computational(&self, m: &CMat) -> Result<QubitOperator> {
        Ok(QubitOperator::new(4, &self.vectors * m * self.vectors.adjoint())?)
    }

    pub fn vector(&self, n: usize) -> Vec<C64> {
        self.vectors.column(n).iter().copied().collect()
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("n,E,s,sz,sigma\n");
        for r in &self.rows {
            out += &format!("{},{},{},{},{}\n", r.n, r.energy, r.s, r.sz, r.sigma);
        }
        out
    }
}

pub(crate) fn spin_operators(n: usize) -> (QubitOperator, QubitOperator) {
    let total = |p: Pauli| (0..n).fold(QubitOperator::zeros(n), |acc, q| acc.add(&QubitOperator::single(n, q, p))).scale(0.5);
    let (sx, sy, sz) = (total(Pauli::X), total(Pauli::Y), total(Pauli::Z));
    let s2 = sx.mul(&sx).add(&sy.mul(&sy)).add(&sz.mul(&sz));
    (s2, sz)
}

fn is_ring4(h: &SpinHamiltonian) -> bool {
    let mut bonds: Vec<(usize, usize)> = h.edges.iter().map(|e| (e.j.min(e.k), e.j.max(e.k))).collect();
    bonds.sort_unstable();
    h.n_qubits == 4 && h.is_heisenberg() && bonds == [(0, 1), (0, 3), (1, 2), (2, 3)]
}

/// Split `basis` into eigenspaces of `op` restricted to it.
fn refine(op: &CMat, labels: &[f64], basis: &CMat) -> Result<Vec<(Vec<f64>, CMat)>> {
    let restricted = basis.adjoint() * op * basis;
    let restricted = (&restricted + restricted.adjoint()) * C64::new(0.5, 0.0);
    let (vals, vecs) = fock_core::linalg::eigh(&restricted)?;
    let mut out = Vec::new();
    let mut start = 0;
    while start < vals.len() {
        let mut end = start + 1;
        while end < vals.len() && vals[end] - vals[start] < CLUSTER_TOL {
            end += 1;
        }
        let mean = vals.rows(start, end - start).mean();
        let mut l = labels.to_vec();
        l.push(mean);
        out.push((l, basis * vecs.columns(start, end - start)));
        start = end;
    }
    Ok(out)
}

/// Resolve the 4-site spectrum by diagonalizing H, then S², then S_z, then
/// SWAP₁₃ inside each degenerate block. Rows are sorted by `(E, s, s_z, σ)`
/// and each vector's first largest component is made real and positive.
pub fn symmetry_block_basis(h: &SpinHamiltonian) -> Result<EigenTable4> {
    if !is_ring4(h) {
        return Err(AnalyticError::Input("expected the 4-site periodic Heisenberg chain".into()));
    }
    let (s2, sz) = spin_operators(4);
    let swap13 = compiler::Edge::heisenberg(1, 3).operator(4).shifted(-1.0).scale(0.5);
    let ops = [h.unshifted_matrix(), s2, sz, swap13];

    let mut blocks = vec![(Vec::new(), CMat::identity(16, 16))];
    for op in &ops {
        let mut next = Vec::new();
        for (labels, basis) in &blocks {
            next.extend(refine(op.matrix(), labels, basis)?);
        }
        blocks = next;
    }
    if let Some((l, b)) = blocks.iter().find(|(_, b)| b.ncols() != 1) {
        return Err(AnalyticError::Degeneracy(format!("{}-fold block left at labels {l:?}", b.ncols())));
    }

    let mut labeled: Vec<(EigenRow, Vec<C64>)> = Vec::with_capacity(16);
    for (l, b) in blocks {
        let s = (-1.0 + (1.0 + 4.0 * l[1]).sqrt()) / 2.0;
        let (s_r, sz_r, sigma_r) = (s.round(), l[2].round(), l[3].round());
        if (s - s_r).abs() > 1e-6 || (l[2] - sz_r).abs() > 1e-6 || (l[3] - sigma_r).abs() > 1e-6 {
            return Err(AnalyticError::Degeneracy(format!("non-integral quantum numbers {l:?}")));
        }
        let mut v: Vec<C64> = b.column(0).iter().copied().collect();
        let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let lead = v.iter().position(|z| z.norm() >= max - 1e-8).unwrap_or(0);
        let phase = v[lead].conj() / v[lead].norm();
        for z in &mut v {
            *z *= phase;
        }
        let row = EigenRow { n: 0, energy: l[0], s: s_r as u32, sz: sz_r as i32, sigma: sigma_r as i32 };
        labeled.push((row, v));
    }
    labeled.sort_by(|(a, _), (b, _)| {
        a.energy.total_cmp(&b.energy).then(a.s.cmp(&b.s)).then(a.sz.cmp(&b.sz)).then(a.sigma.cmp(&b.sigma))
    });
    let mut vectors = CMat::zeros(16, 16);
    let mut rows = Vec::with_capacity(16);
    for (n, (mut row, v)) in labeled.into_iter().enumerate() {
        row.n = n;
        rows.push(row);
        for (i, z) in v.into_iter().enumerate() {
            vectors[(i, n)] = z;
        }
    }
    Ok(EigenTable4 { rows, vectors })
}

/// Weights of the color-ordered 4-site filter in the labeled eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct R4Weights {
    /// `e_k = e^{−α²(E_s − 4 + 4k)²/2}` for `k = 0..=4` singlets.
    pub e: [f64; 5],
    pub g00: f64,
    pub g44: f64,
    pub g04: f64,
    pub g40: f64,
    pub gt: f64,
    /// Weight of the six-fold E=0, s=1 block, `e_1`.
    pub gs: f64,
    pub gq: f64,
}

impl R4Weights {
    pub fn new(alpha: f64, e_s: f64) -> Self {
        let e: [f64; 5] = std::array::from_fn(|k| (-0.5 * alpha * alpha * (e_s - 4.0 + 4.0 * k as f64).powi(2)).exp());
        let g04 = 3f64.sqrt() * (e[0] - 2.0 * e[2] + e[4]) / 8.0;
        Self {
            e,
            g00: (-e[0] + 6.0 * e[2] + 3.0 * e[4]) / 8.0,
            g44: (3.0 * e[0] + 6.0 * e[2] - e[4]) / 8.0,
            g04,
            g40: -g04,
            gt: e[2],
            gs: e[1],
            gq: e[0],
        }
    }

    /// The six-fold weight as `e_1/2`; half of what the expansion gives.
    pub fn gs_halved(&self) -> f64 {
        self.e[1] / 2.0
    }
}

/// The color-ordered 4-site filter assembled from its eigenbasis weights,
/// in the row order of [`symmetry_block_basis`].
pub fn r4_closed_form(alpha: f64, e_s: f64) -> QubitOperator {
    let w = R4Weights::new(alpha, e_s);
    let mut m = CMat::zeros(16, 16);
    let c = |x: f64| C64::new(x, 0.0);
    m[(0, 0)] = c(w.g00);
    m[(4, 4)] = c(w.g44);
    m[(0, 4)] = c(w.g04);
    m[(4, 0)] = c(w.g40);
    for k in 1..=3 {
        m[(k, k)] = c(w.gt);
    }
    for k in 5..=10 {
        m[(k, k)] = c(w.gs);
    }
    for k in 11..=15 {
        m[(k, k)] = c(w.gq);
    }
    QubitOperator::new(4, m).expect("16x16 is a 4-qubit operator")
}
