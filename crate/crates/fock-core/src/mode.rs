use crate::linalg::{CMat, C64, I};
use crate::{Error, Result, DEFAULT_TAIL_TOLERANCE};

/// One bosonic mode truncated to Fock levels `0..cutoff`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockSpace {
    cutoff: usize,
}

impl FockSpace {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < 2 {
            return Err(Error::InvalidCutoff(cutoff));
        }
        Ok(Self { cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Cutoff policy: `ceil(s² + 6s + 10)` for a largest displacement `s`.
    pub fn for_displacement(s: f64) -> Self {
        let s = s.abs();
        let d = (s * s + 6.0 * s + 10.0).ceil() as usize;
        Self { cutoff: d.max(2) }
    }

    pub fn ops(&self) -> ModeOps {
        build_ops(self.cutoff)
    }
}

/// Truncated ladder and quadrature matrices in Wigner units:
/// `x = (a + a†)/2`, `p = i(a† − a)/2`, `[x, p] = i/2` away from the cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeOps {
    pub cutoff: usize,
    pub a: CMat,
    pub adag: CMat,
    pub n: CMat,
    pub x: CMat,
    pub p: CMat,
}

pub fn mode_ops(d: usize) -> Result<ModeOps> {
    Ok(FockSpace::new(d)?.ops())
}

fn build_ops(d: usize) -> ModeOps {
    let mut a = CMat::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    let adag = a.adjoint();
    let n = CMat::from_diagonal(&nalgebra::DVector::from_fn(d, |k, _| C64::new(k as f64, 0.0)));
    let half = C64::new(0.5, 0.0);
    let x = (&a + &adag) * half;
    let p = (&adag - &a) * (I * half);
    ModeOps { cutoff: d, a, adag, n, x, p }
}

/// Fock amplitudes of the coherent state `|α⟩`, renormalized after truncation.
///
/// Fails when the probability lost to truncation exceeds the default tail
/// tolerance.
pub fn coherent_state(d: usize, alpha: C64) -> Result<Vec<C64>> {
    FockSpace::new(d)?;
    let mut amps = Vec::with_capacity(d);
    let mut cur = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    amps.push(cur);
    for n in 1..d {
        cur = cur * alpha / (n as f64).sqrt();
        amps.push(cur);
    }
    let kept: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
    let lost = (1.0 - kept).max(amps[d - 1].norm_sqr());
    if lost > DEFAULT_TAIL_TOLERANCE {
        return Err(Error::TailBreach { mode: 0, population: lost, tolerance: DEFAULT_TAIL_TOLERANCE });
    }
    let norm = kept.sqrt();
    for z in &mut amps {
        *z /= norm;
    }
    Ok(amps)
}
