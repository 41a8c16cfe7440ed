use std::f64::consts::FRAC_PI_2;

use gates::{zz_displacement, Gate};

use crate::hamiltonian::Edge;

const Y: [f64; 3] = [0.0, 1.0, 0.0];
const X: [f64; 3] = [1.0, 0.0, 0.0];

/// `exp(−2iα Ĥ_jk ⊗ p_n)` for one bond, as ZZ, YY then XX kicks.
///
/// XX and YY reuse the ZZ gadget inside transversal basis changes: `Rm_y(−π/2)`
/// maps Z to X and `Rm_x(π/2)` maps Z to Y under conjugation. Zero couplings
/// emit nothing.
pub fn compile_bond_displacement(n: usize, edge: &Edge, alpha: f64) -> Vec<Gate> {
    // keep the conditional displacement on the qubit that owns this cavity when we can
    let (parity, target) = if n == edge.j { (edge.k, edge.j) } else { (edge.j, edge.k) };
    let kick = |beta: f64| zz_displacement(n, parity, target, beta);
    let sandwich = |axis: [f64; 3], angle: f64, beta: f64| {
        let mut out = vec![Gate::rotation(edge.j, axis, angle), Gate::rotation(edge.k, axis, angle)];
        out.extend(kick(beta));
        out.extend([Gate::rotation(edge.j, axis, -angle), Gate::rotation(edge.k, axis, -angle)]);
        out
    };
    let mut out = Vec::new();
    if edge.jz != 0.0 {
        out.extend(kick(edge.jz * alpha));
    }
    if edge.jy != 0.0 {
        out.extend(sandwich(X, FRAC_PI_2, edge.jy * alpha));
    }
    if edge.jx != 0.0 {
        out.extend(sandwich(Y, -FRAC_PI_2, edge.jx * alpha));
    }
    out
}

/// Unconditional displacements that shift each color generator by `−E_s/Γ`.
///
/// `beta` is the per-oscillator amplitude. Since `D(β) = e^{−2iβp}`, the shift
/// `exp(2iβ(E_s/Γ) p)` is `D(−β E_s/Γ)`.
pub fn apply_shift(modes: &[usize], shift: f64, beta: f64, n_colors: usize) -> Vec<Gate> {
    if shift == 0.0 || beta == 0.0 || n_colors == 0 {
        return Vec::new();
    }
    let amount = -beta * shift / n_colors as f64;
    modes.iter().map(|&m| Gate::displacement(m, amount)).collect()
}
