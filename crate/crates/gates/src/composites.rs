use std::collections::VecDeque;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::{Circuit, Gate, GateError, Result};

/// Bosonic SWAP in time order: `R_j(−π/2)`, `R_k(−π/2)`, `BS(π, 0)`.
///
/// Maps `a_j ↔ a_k` exactly and fixes the vacuum, so it is its own inverse.
pub fn bosonic_swap(j: usize, k: usize) -> Result<Vec<Gate>> {
    if j == k {
        return Err(GateError::Operand(format!("SWAP needs distinct modes, got ({j},{k})")));
    }
    Ok(vec![
        Gate::R { mode: j, theta: -FRAC_PI_2 },
        Gate::R { mode: k, theta: -FRAC_PI_2 },
        Gate::BS { j, k, theta: PI, phi: 0.0 },
    ])
}

/// `exp(−2iβ Z_j Z_k ⊗ p_n)` from one conditional displacement on qubit `k`
/// sandwiched by a controlled parity on qubit `j` and a Fourier rotation.
pub fn zz_displacement(n: usize, j: usize, k: usize, beta: f64) -> Vec<Gate> {
    vec![
        Gate::P { mode: n, qubit: j },
        Gate::R { mode: n, theta: -FRAC_PI_2 },
        Gate::conditional_displacement(n, k, beta),
        Gate::R { mode: n, theta: FRAC_PI_2 },
        Gate::RZ { mode: n, qubit: j, theta: -FRAC_PI_2 },
    ]
}

/// Hardware adjacency: which cavity each qubit drives natively and which
/// cavities share a beam splitter.
#[derive(Debug, Clone, PartialEq)]
pub struct Connectivity {
    native: Vec<Option<usize>>,
    adjacency: Vec<Vec<usize>>,
}

impl Connectivity {
    /// Qubit `q` native to mode `q`; modes coupled nearest-neighbor in a line.
    pub fn default_layout(n_qubits: usize, n_modes: usize) -> Self {
        let native = (0..n_qubits).map(|q| (q < n_modes).then_some(q)).collect();
        let edges: Vec<(usize, usize)> = (1..n_modes).map(|m| (m - 1, m)).collect();
        Self::new(native, n_modes, &edges)
    }

    pub fn new(native: Vec<Option<usize>>, n_modes: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![Vec::new(); n_modes];
        for &(a, b) in edges {
            if a < n_modes && b < n_modes && a != b && !adjacency[a].contains(&b) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
        Self { native, adjacency }
    }

    pub fn native_mode(&self, qubit: usize) -> Option<usize> {
        self.native.get(qubit).copied().flatten()
    }

    pub fn is_native(&self, mode: usize, qubit: usize) -> bool {
        self.native_mode(qubit) == Some(mode)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency.get(a).is_some_and(|n| n.contains(&b))
    }

    /// Shortest mode path `from → to`, endpoints included.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let n = self.adjacency.len();
        if from >= n || to >= n {
            return None;
        }
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &v in &self.adjacency[u] {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if prev[to] == usize::MAX {
            return None;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }
}

fn hops(path: &[usize]) -> Result<Vec<Gate>> {
    let mut out = Vec::new();
    for w in path.windows(2) {
        out.extend(bosonic_swap(w[0], w[1])?);
    }
    Ok(out)
}

fn unhops(path: &[usize]) -> Result<Vec<Gate>> {
    let mut out = Vec::new();
    for w in path.windows(2).rev() {
        out.extend(bosonic_swap(w[0], w[1])?);
    }
    Ok(out)
}

fn with_mode(g: &Gate, m: usize) -> Gate {
    match *g {
        Gate::RZ { qubit, theta, .. } => Gate::RZ { mode: m, qubit, theta },
        Gate::P { qubit, .. } => Gate::P { mode: m, qubit },
        Gate::DZ { qubit, alpha, .. } => Gate::DZ { mode: m, qubit, alpha },
        other => other,
    }
}

/// Native form of `D^{(j)}_{Z_k}(α)`: swap cavity `j` hop by hop into the
/// cavity native to qubit `k`, displace, swap back.
pub fn native_conditional_displacement(j: usize, k: usize, alpha: f64, conn: &Connectivity) -> Result<Vec<Gate>> {
    route_hybrid(&Gate::conditional_displacement(j, k, alpha), conn)
}

fn route_hybrid(g: &Gate, conn: &Connectivity) -> Result<Vec<Gate>> {
    let (mode, qubit) = match *g {
        Gate::RZ { mode, qubit, .. } | Gate::P { mode, qubit } | Gate::DZ { mode, qubit, .. } => (mode, qubit),
        other => return Ok(vec![other]),
    };
    if conn.is_native(mode, qubit) {
        return Ok(vec![*g]);
    }
    let target = conn.native_mode(qubit).ok_or(GateError::Unroutable { mode, qubit })?;
    let path = conn.path(mode, target).ok_or(GateError::Unroutable { mode, qubit })?;
    let mut out = hops(&path)?;
    out.push(with_mode(g, target));
    out.extend(unhops(&path)?);
    Ok(out)
}

fn route_beam_splitter(g: &Gate, conn: &Connectivity) -> Result<Vec<Gate>> {
    let Gate::BS { j, k, theta, phi } = *g else {
        return Ok(vec![*g]);
    };
    if conn.adjacent(j, k) {
        return Ok(vec![*g]);
    }
    let path = conn.path(j, k).ok_or_else(|| GateError::Operand(format!("modes {j} and {k} are not connected")))?;
    // carry mode j next to k, couple, carry it back
    let carry = &path[..path.len() - 1];
    let near = *carry.last().expect("path has at least two modes");
    let mut out = hops(carry)?;
    out.push(Gate::BS { j: near, k, theta, phi });
    out.extend(unhops(carry)?);
    Ok(out)
}

/// Rewrite a logical circuit so every hybrid gate addresses its qubit's native
/// cavity and every beam splitter couples adjacent cavities.
pub fn lower_native(circuit: &Circuit, conn: &Connectivity) -> Result<Circuit> {
    let mut out = Circuit::new(circuit.n_qubits, circuit.n_modes);
    out.sn_count = circuit.sn_count;
    out.trotter_reps = circuit.trotter_reps;
    for g in circuit.gates() {
        let lowered = match g {
            Gate::BS { .. } => route_beam_splitter(g, conn)?,
            _ => route_hybrid(g, conn)?,
        };
        out.extend(lowered)?;
    }
    Ok(out)
}
