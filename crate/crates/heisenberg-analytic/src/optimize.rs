use compiler::{plan_schedule, Schedule, SpinHamiltonian};
use fock_core::linalg::C64;
use fock_core::QubitOperator;

use crate::eigenbasis::{symmetry_block_basis, EigenTable4};
use crate::expansion::plan_expansion_r;
use crate::{AnalyticError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaOutcome {
    /// Sign change of `r01`, refined by bisection.
    Root(f64),
    /// Interior minimum of the off-diagonal coupling that is not a zero.
    Minimum { alpha: f64, value: f64 },
    /// Neither: the coupling is smallest at a bracket edge.
    NoRoot,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSearch {
    /// `(α, objective)` on the sampling grid; signed `r01` for the 4-site
    /// ring, the ground-state off-diagonal norm otherwise.
    pub curve: Vec<(f64, f64)>,
    pub outcome: AlphaOutcome,
}

/// `‖(1 − |g⟩⟨g|) R |g⟩‖` combined with the same for `R†`: how strongly the
/// filter leaks the ground state into, and out of, the rest of the spectrum.
pub fn ground_offdiagonal_norm(r: &QubitOperator, ground: &[C64]) -> f64 {
    let leak = |op: &QubitOperator| {
        let v = op.apply(ground);
        let overlap: C64 = ground.iter().zip(&v).map(|(g, x)| g.conj() * x).sum();
        v.iter().zip(ground).map(|(x, g)| (x - overlap * g).norm_sqr()).sum::<f64>()
    };
    (leak(r) + leak(&r.dagger())).sqrt()
}

/// `⟨E_0|R(α)|E_4⟩` for the 4-site ring: the coupling between the two spin-0 states.
pub fn r01(h: &SpinHamiltonian, schedule: &Schedule, alpha: f64, table: &EigenTable4) -> Result<f64> {
    let plan = plan_schedule(h, schedule, alpha)?;
    let r = plan_expansion_r(h, &plan)?;
    let m = table.in_eigenbasis(&r);
    Ok(m[(0, 4)].re)
}

/// Search `bracket` for the α that decouples the ground state.
///
/// The 4-site ring uses the signed `r01` and bisects its first sign change.
/// Without one, or for other Hamiltonians, the coupling magnitude is minimized
/// by golden section around the best grid point; a best point on the bracket
/// edge gives `NoRoot`.
pub fn optimize_alpha(h: &SpinHamiltonian, schedule: &Schedule, bracket: (f64, f64), samples: usize) -> Result<AlphaSearch> {
    let (lo, hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) || samples < 3 {
        return Err(AnalyticError::Input(format!("bad bracket {bracket:?} with {samples} samples")));
    }
    let objective: Box<dyn Fn(f64) -> Result<f64>> = match symmetry_block_basis(h) {
        Ok(table) => Box::new(move |a| r01(h, schedule, a, &table)),
        Err(AnalyticError::Input(_)) => {
            let (vals, vecs) = h.dense_matrix().eigh()?;
            if vals.len() > 1 && vals[1] - vals[0] < 1e-9 {
                return Err(AnalyticError::Input("ground state is degenerate".into()));
            }
            let ground: Vec<C64> = vecs.column(0).iter().copied().collect();
            Box::new(move |a| {
                let plan = plan_schedule(h, schedule, a)?;
                Ok(ground_offdiagonal_norm(&plan_expansion_r(h, &plan)?, &ground))
            })
        }
        Err(e) => return Err(e),
    };

    let curve = (0..samples)
        .map(|i| {
            let a = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
            objective(a).map(|v| (a, v))
        })
        .collect::<Result<Vec<_>>>()?;

    if let Some(i) = curve.windows(2).position(|w| w[0].1 == 0.0 || w[0].1.signum() != w[1].1.signum()) {
        let (mut a, mut b) = (curve[i].0, curve[i + 1].0);
        let mut fa = curve[i].1;
        if fa == 0.0 {
            return Ok(AlphaSearch { outcome: AlphaOutcome::Root(a), curve });
        }
        while b - a > 1e-10 {
            let mid = 0.5 * (a + b);
            let fm = objective(mid)?;
            if fm.signum() == fa.signum() {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        return Ok(AlphaSearch { outcome: AlphaOutcome::Root(0.5 * (a + b)), curve });
    }

    let best = (0..curve.len()).min_by(|&i, &j| curve[i].1.abs().total_cmp(&curve[j].1.abs())).unwrap_or(0);
    if best == 0 || best == curve.len() - 1 {
        return Ok(AlphaSearch { outcome: AlphaOutcome::NoRoot, curve });
    }
    let f = |a: f64| objective(a).map(f64::abs);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (curve[best - 1].0, curve[best + 1].0);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    while b - a > 1e-8 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2)?;
        }
    }
    let alpha = 0.5 * (a + b);
    Ok(AlphaSearch { outcome: AlphaOutcome::Minimum { alpha, value: f(alpha)? }, curve })
}
