use std::f64::consts::PI;

use fock_core::C64;

use crate::{Circuit, Gate, Wire};

const EPS: f64 = 1e-12;

fn is_multiple(theta: f64, period: f64) -> bool {
    let r = theta / period;
    (r - r.round()).abs() * period < EPS
}

fn is_identity(g: &Gate) -> bool {
    match *g {
        Gate::R { theta, .. } | Gate::RZ { theta, .. } => is_multiple(theta, 2.0 * PI),
        Gate::BS { theta, .. } | Gate::Rm { theta, .. } => is_multiple(theta, 4.0 * PI),
        Gate::D { alpha, .. } | Gate::DZ { alpha, .. } => alpha.norm() < EPS,
        Gate::F { .. } | Gate::P { .. } => false,
    }
}

fn collinear(a: C64, b: C64) -> bool {
    (a * b.conj()).im.abs() < EPS
}

/// Merge `first` then `second` into one gate when they share kind and operands.
fn fuse(first: &Gate, second: &Gate) -> Option<Gate> {
    use Gate::*;
    let angle = |g: &Gate| match *g {
        R { theta, .. } | RZ { theta, .. } => Some(theta),
        F { .. } | P { .. } => Some(PI / 2.0),
        _ => None,
    };
    match (*first, *second) {
        (R { mode: a, .. } | F { mode: a }, R { mode: b, .. } | F { mode: b }) if a == b => {
            Some(R { mode: a, theta: angle(first)? + angle(second)? })
        }
        (RZ { mode: a, qubit: q, .. } | P { mode: a, qubit: q }, RZ { mode: b, qubit: r, .. } | P { mode: b, qubit: r })
            if a == b && q == r =>
        {
            Some(RZ { mode: a, qubit: q, theta: angle(first)? + angle(second)? })
        }
        (D { mode: a, alpha: x }, D { mode: b, alpha: y }) if a == b && collinear(x, y) => Some(D { mode: a, alpha: x + y }),
        (DZ { mode: a, qubit: q, alpha: x }, DZ { mode: b, qubit: r, alpha: y }) if a == b && q == r && collinear(x, y) => {
            Some(DZ { mode: a, qubit: q, alpha: x + y })
        }
        (BS { j, k, theta: t1, phi: p1 }, BS { j: j2, k: k2, theta: t2, phi: p2 })
            if j == j2 && k == k2 && (p1 - p2).abs() < EPS =>
        {
            Some(BS { j, k, theta: t1 + t2, phi: p1 })
        }
        (Rm { qubit: a, axis: m1, theta: t1 }, Rm { qubit: b, axis: m2, theta: t2 }) if a == b => {
            let dot: f64 = (0..3).map(|i| m1[i] * m2[i]).sum();
            if (dot - 1.0).abs() < EPS {
                Some(Rm { qubit: a, axis: m1, theta: t1 + t2 })
            } else if (dot + 1.0).abs() < EPS {
                Some(Rm { qubit: a, axis: m1, theta: t1 - t2 })
            } else {
                None
            }
        }
        _ => None,
    }
}

fn overlaps(a: &[Wire], b: &[Wire]) -> bool {
    a.iter().any(|w| b.contains(w))
}

/// Peephole pass: drops identity gates and fuses each gate into the latest
/// earlier gate on an overlapping wire when the two merge; gates on disjoint
/// wires commute and are skipped over.
pub fn optimize(circuit: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(circuit.len());
    let mut wires: Vec<Vec<Wire>> = Vec::with_capacity(circuit.len());
    for g in circuit.gates() {
        if is_identity(g) {
            continue;
        }
        let gw = g.wires();
        let hit = (0..out.len()).rev().find(|&i| overlaps(&wires[i], &gw));
        match hit.and_then(|i| fuse(&out[i], g).map(|f| (i, f))) {
            Some((i, fused)) if is_identity(&fused) => {
                out.remove(i);
                wires.remove(i);
            }
            Some((i, fused)) => {
                out[i] = fused;
            }
            None => {
                out.push(*g);
                wires.push(gw);
            }
        }
    }
    let mut c = circuit.clone();
    c.replace_gates(out);
    c
}
