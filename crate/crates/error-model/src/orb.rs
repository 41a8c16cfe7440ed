use filter::hermite_filter;
use fock_core::linalg::{CMat, C64};
use fock_core::{Exec, QubitOperator};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::Result;

const CHUNK: usize = 256;

#[derive(Debug, Clone)]
pub struct OrbReport {
    /// Sample mean of the reweighted `F_m†F_m`.
    pub estimate: QubitOperator,
    /// `max |estimate − 1|` over entries.
    pub deviation: f64,
    /// Standard error of the entry attaining `deviation`.
    pub standard_error: f64,
    /// Largest `|estimate − 1| / SE` over entries with nonzero spread.
    pub max_z: f64,
    /// `max |Σ_{m<d} F_m†F_m − 1|` without sampling.
    pub deterministic: f64,
    pub samples: usize,
}

impl OrbReport {
    /// The worst entry lies within `k` of its standard errors of the identity.
    pub fn within(&self, k: f64) -> bool {
        self.deviation <= k * self.standard_error + 1e-12
    }
}

fn effects(h: &QubitOperator, alpha: f64, cutoff: usize) -> Result<Vec<CMat>> {
    (0..cutoff)
        .map(|m| {
            let f = hermite_filter(h, alpha, m)?;
            Ok(f.matrix().adjoint() * f.matrix())
        })
        .collect()
}

/// Deterministic `max |Σ_{m<d} F_m†F_m − 1|`.
pub fn orb_deterministic(h: &QubitOperator, alpha: f64, cutoff: usize) -> Result<f64> {
    let dim = h.dim();
    let sum = effects(h, alpha, cutoff)?.into_iter().fold(CMat::zeros(dim, dim), |a, b| a + b);
    Ok((sum - CMat::identity(dim, dim)).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

fn random_state(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim).map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= n;
    }
    v
}

/// Sampled resolution of the identity.
///
/// Sample `i` draws a random input `ψ` and an outcome `m` with probability
/// `p_m = ⟨ψ|F_m†F_m|ψ⟩` (renormalized over `m < d`), and contributes
/// `F_m†F_m · P/p_m`, whose mean is `Σ_m F_m†F_m` whatever `ψ` is. Each sample
/// uses its own ChaCha8 stream of `seed`, so the result does not depend on
/// how samples are scheduled.
pub fn orb_identity(h: &QubitOperator, alpha: f64, cutoff: usize, n_samples: usize, seed: u64, exec: Exec) -> Result<OrbReport> {
    let dim = h.dim();
    let g = effects(h, alpha, cutoff)?;
    let n_chunks = n_samples.div_ceil(CHUNK);
    let partial = exec.map(n_chunks, |ci| {
        let mut sum = CMat::zeros(dim, dim);
        let mut sum_sq = vec![0.0f64; dim * dim];
        for i in ci * CHUNK..((ci + 1) * CHUNK).min(n_samples) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let psi = random_state(&mut rng, dim);
            let probs: Vec<f64> = g
                .iter()
                .map(|gm| {
                    let v = gm * fock_core::linalg::CMat::from_column_slice(dim, 1, &psi);
                    psi.iter().zip(v.iter()).map(|(a, b)| (a.conj() * b).re).sum::<f64>().max(0.0)
                })
                .collect();
            let total: f64 = probs.iter().sum();
            let mut u = rng.random::<f64>() * total;
            let mut m = probs.len() - 1;
            for (k, p) in probs.iter().enumerate() {
                if u < *p {
                    m = k;
                    break;
                }
                u -= p;
            }
            let x = &g[m] * C64::new(total / probs[m], 0.0);
            for (k, z) in x.iter().enumerate() {
                sum_sq[k] += z.norm_sqr();
            }
            sum += x;
        }
        (sum, sum_sq)
    });

    let mut sum = CMat::zeros(dim, dim);
    let mut sum_sq = vec![0.0f64; dim * dim];
    for (s, sq) in partial {
        sum += s;
        for (a, b) in sum_sq.iter_mut().zip(sq) {
            *a += b;
        }
    }
    let n = n_samples.max(1) as f64;
    let mean = sum / C64::new(n, 0.0);
    let (mut deviation, mut standard_error, mut max_z) = (0.0f64, 0.0f64, 0.0f64);
    for (k, z) in mean.iter().enumerate() {
        let target = if k % dim == k / dim { 1.0 } else { 0.0 };
        let dev = (z - C64::new(target, 0.0)).norm();
        let var = (sum_sq[k] / n - z.norm_sqr()).max(0.0) * n / (n - 1.0).max(1.0);
        let se = (var / n).sqrt();
        if dev > deviation {
            deviation = dev;
            standard_error = se;
        }
        // spread below round-off means every sample agreed
        if se > 1e-12 {
            max_z = max_z.max(dev / se);
        } else if dev > 1e-10 {
            max_z = f64::INFINITY;
        }
    }
    Ok(OrbReport {
        estimate: QubitOperator::new(h.n_qubits(), mean)?,
        deviation,
        standard_error,
        max_z,
        deterministic: orb_deterministic(h, alpha, cutoff)?,
        samples: n_samples,
    })
}
