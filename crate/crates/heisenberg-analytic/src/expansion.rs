use std::collections::BTreeMap;

use compiler::{EdgeColoring, Plan, SpinHamiltonian, Step};
use fock_core::linalg::{CMat, C64};
use fock_core::{Exec, QubitOperator};

use crate::{AnalyticError, Result};

/// Largest register the dense expansions accept.
const MAX_QUBITS: usize = 12;
/// Budget on stored complex entries in the plan expansion.
const MAX_ENTRIES: usize = 1 << 27;

/// Triplet and singlet projectors of every Heisenberg bond.
///
/// `π⁰ = (3 + H_jk)/4 = (1 + SWAP_jk)/2` and `π¹ = (1 − H_jk)/4 = (1 − SWAP_jk)/2`.
#[derive(Debug, Clone)]
pub struct BondProjectors {
    pub bonds: Vec<(usize, usize)>,
    pub triplet: Vec<QubitOperator>,
    pub singlet: Vec<QubitOperator>,
}

impl BondProjectors {
    pub fn new(h: &SpinHamiltonian) -> Result<Self> {
        check_heisenberg(h)?;
        let n = h.n_qubits;
        let mut out = Self { bonds: Vec::new(), triplet: Vec::new(), singlet: Vec::new() };
        for e in &h.edges {
            let hb = e.operator(n);
            out.bonds.push((e.j, e.k));
            out.triplet.push(hb.shifted(-3.0).scale(0.25));
            out.singlet.push(QubitOperator::identity(n).sub(&hb).scale(0.25));
        }
        Ok(out)
    }

    pub fn get(&self, edge: usize, bit: u8) -> &QubitOperator {
        if bit == 0 {
            &self.triplet[edge]
        } else {
            &self.singlet[edge]
        }
    }
}

fn check_heisenberg(h: &SpinHamiltonian) -> Result<()> {
    h.validate()?;
    if let Some(i) = h.edges.iter().position(|e| !e.is_isotropic_unit()) {
        return Err(AnalyticError::NotHeisenberg(i));
    }
    if h.n_qubits > MAX_QUBITS {
        return Err(AnalyticError::TooLarge(format!("{} qubits", h.n_qubits)));
    }
    Ok(())
}

/// Left-multiply `m` by `π^bit` on qubits `j, k` in place.
pub fn apply_bond_projector(m: &mut CMat, j: usize, k: usize, bit: u8) {
    let (bj, bk) = (1usize << j, 1usize << k);
    let sign = if bit == 0 { 1.0 } else { -1.0 };
    for r in 0..m.nrows() {
        if (r & bj == 0) == (r & bk == 0) {
            // symmetric under the swap: kept by π⁰, removed by π¹
            if bit == 1 {
                m.row_mut(r).fill(C64::new(0.0, 0.0));
            }
            continue;
        }
        // visit each swapped pair once, from the member with bit j set
        if r & bj == 0 {
            continue;
        }
        let s = r ^ bj ^ bk;
        for c in 0..m.ncols() {
            let (a, b) = (m[(r, c)], m[(s, c)]);
            m[(r, c)] = (a + b * sign) * 0.5;
            m[(s, c)] = (b + a * sign) * 0.5;
        }
    }
}

fn weight(alpha: f64, x: f64) -> f64 {
    (-0.5 * alpha * alpha * x * x).exp()
}

/// Color-ordered filter of a Heisenberg Hamiltonian as a sum over bond
/// singlet/triplet assignments: `Σ_b e^{−α²(Σ_e(1−4b_e) − E_s)²/2} T_γ Π π^{b_e}`,
/// the first color acting first. `E_s` is the Hamiltonian's shift.
///
/// The weight depends on `b` only through the singlet count, so the sum is
/// accumulated as a matrix polynomial in that count.
pub fn projector_expansion_r(h: &SpinHamiltonian, coloring: &EdgeColoring, alpha: f64) -> Result<QubitOperator> {
    check_heisenberg(h)?;
    coloring.verify(h)?;
    let dim = 1usize << h.n_qubits;
    let n_edges = h.edges.len();
    // coeffs[k] = sum of ordered products with exactly k singlets so far
    let mut coeffs = vec![CMat::identity(dim, dim)];
    for class in &coloring.partitions {
        for &i in class {
            let e = &h.edges[i];
            let mut next = Vec::with_capacity(coeffs.len() + 1);
            for k in 0..=coeffs.len() {
                let mut acc = CMat::zeros(dim, dim);
                if k < coeffs.len() {
                    let mut t = coeffs[k].clone();
                    apply_bond_projector(&mut t, e.j, e.k, 0);
                    acc += t;
                }
                if k > 0 {
                    let mut s = coeffs[k - 1].clone();
                    apply_bond_projector(&mut s, e.j, e.k, 1);
                    acc += s;
                }
                next.push(acc);
            }
            coeffs = next;
        }
    }
    let mut r = CMat::zeros(dim, dim);
    for (k, c) in coeffs.iter().enumerate() {
        let x = n_edges as f64 - 4.0 * k as f64 - h.shift;
        r += c * C64::new(weight(alpha, x), 0.0);
    }
    Ok(QubitOperator::new(h.n_qubits, r)?)
}

/// Even-`N` periodic chain, summed bit vector by bit vector: even bonds
/// `(2j, 2j+1)` carry `b_j`, odd bonds `(2j+1, 2j+2)` carry `b_{j+N/2}`, and
/// the odd-bond product multiplies from the left.
pub fn r_1d_closed_form(n: usize, alpha: f64, e_s: f64, exec: Exec) -> Result<QubitOperator> {
    if n < 4 || n % 2 == 1 {
        return Err(AnalyticError::OddChain(n));
    }
    if n > MAX_QUBITS {
        return Err(AnalyticError::TooLarge(format!("{n}-site chain")));
    }
    let dim = 1usize << n;
    let half = n / 2;
    let n_strings = 1usize << n;
    let chunk = 64.min(n_strings);
    let partial = exec.map(n_strings / chunk, |ci| {
        let mut acc = CMat::zeros(dim, dim);
        for b in ci * chunk..(ci + 1) * chunk {
            let ones = b.count_ones() as f64;
            let w = weight(alpha, e_s - n as f64 + 4.0 * ones);
            let mut m = CMat::identity(dim, dim);
            for j in 0..half {
                apply_bond_projector(&mut m, 2 * j, 2 * j + 1, ((b >> j) & 1) as u8);
            }
            for j in 0..half {
                apply_bond_projector(&mut m, 2 * j + 1, (2 * j + 2) % n, ((b >> (j + half)) & 1) as u8);
            }
            acc += m * C64::new(w, 0.0);
        }
        acc
    });
    let r = partial.into_iter().fold(CMat::zeros(dim, dim), |a, b| a + b);
    Ok(QubitOperator::new(n, r)?)
}

/// Exact vacuum block of a scheduled filter plan for a Heisenberg
/// Hamiltonian, without simulating oscillators.
///
/// Every kick on oscillator `o` is `e^{−2iβ p_o H_e}` and every shift is
/// `e^{2iβ p_o E_s/Γ}`. Splitting each bond into its projectors makes the
/// phase on `o` depend only on how many singlets `o` has picked up, and the
/// vacuum average of `e^{−2iβXp}` is `e^{−β²X²/2}`.
pub fn plan_expansion_r(h: &SpinHamiltonian, plan: &Plan) -> Result<QubitOperator> {
    check_heisenberg(h)?;
    let dim = 1usize << h.n_qubits;
    let m = plan.n_modes;
    let gamma = plan.coloring.n_colors() as f64;
    let mut kicks = vec![0usize; m];
    let mut shifts = vec![0usize; m];
    for s in &plan.steps {
        match *s {
            Step::Displace { oscillator, .. } => kicks[oscillator] += 1,
            Step::Shift { oscillator, .. } => shifts[oscillator] += 1,
            Step::Network => {}
        }
    }
    let keys: usize = kicks.iter().map(|k| k + 1).product();
    if keys.saturating_mul(dim * dim) > MAX_ENTRIES {
        return Err(AnalyticError::TooLarge(format!("plan with {keys} singlet-count classes")));
    }

    let mut terms: BTreeMap<Vec<u16>, CMat> = BTreeMap::new();
    terms.insert(vec![0; m], CMat::identity(dim, dim));
    for s in &plan.steps {
        let Step::Displace { oscillator, edge, .. } = *s else { continue };
        let e = &h.edges[edge];
        let mut next: BTreeMap<Vec<u16>, CMat> = BTreeMap::new();
        for (key, mat) in terms {
            let mut singlet = mat.clone();
            apply_bond_projector(&mut singlet, e.j, e.k, 1);
            let mut triplet = mat;
            apply_bond_projector(&mut triplet, e.j, e.k, 0);
            let mut up = key.clone();
            up[oscillator] += 1;
            *next.entry(key).or_insert_with(|| CMat::zeros(dim, dim)) += triplet;
            *next.entry(up).or_insert_with(|| CMat::zeros(dim, dim)) += singlet;
        }
        terms = next;
    }

    let mut r = CMat::zeros(dim, dim);
    for (key, mat) in &terms {
        let w: f64 = (0..m)
            .map(|o| {
                let x = kicks[o] as f64 - 4.0 * key[o] as f64 - shifts[o] as f64 * plan.shift / gamma;
                weight(plan.beta, x)
            })
            .product();
        r += mat * C64::new(w, 0.0);
    }
    Ok(QubitOperator::new(h.n_qubits, r)?)
}
