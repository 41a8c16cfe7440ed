//! Dense complex helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
pub use num_complex::Complex64 as C64;

use crate::{Error, Result};

pub type CMat = DMatrix<C64>;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

/// Largest entrywise modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Distance between `a` and `b` after removing the best global phase.
pub fn max_abs_diff_up_to_phase(a: &CMat, b: &CMat) -> f64 {
    let overlap: C64 = b.iter().zip(a.iter()).map(|(y, x)| y.conj() * x).sum();
    if overlap.norm() == 0.0 {
        return max_abs_diff(a, b);
    }
    let phase = overlap / overlap.norm();
    max_abs_diff(a, &(b * phase))
}

pub fn hermiticity_error(m: &CMat) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Kronecker product with `a` as the most significant factor.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Largest singular value.
pub fn spectral_norm(m: &CMat) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.iter().fold(0.0, |acc: f64, &s| acc.max(s))
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn eigh(h: &CMat) -> Result<(DVector<f64>, CMat)> {
    let n = h.nrows();
    if n != h.ncols() {
        return Err(Error::DimensionMismatch { expected: n, got: h.ncols() });
    }
    let sym = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 0).ok_or(Error::Eigensolver)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let vals = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vecs = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vecs.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok((vals, vecs))
}

/// `f(H)` for Hermitian `H` through its eigendecomposition.
pub fn hermitian_fn<F: Fn(f64) -> C64>(h: &CMat, f: F) -> Result<CMat> {
    let err = hermiticity_error(h);
    if err > 1e-10 * (1.0 + max_abs(h)) {
        return Err(Error::NotHermitian(err));
    }
    let (vals, vecs) = eigh(h)?;
    Ok(spectral_apply(&vals, &vecs, f))
}

/// `V diag(f(λ)) V†`.
pub fn spectral_apply<F: Fn(f64) -> C64>(vals: &DVector<f64>, vecs: &CMat, f: F) -> CMat {
    let mut scaled = vecs.clone();
    for (j, &lam) in vals.iter().enumerate() {
        let w = f(lam);
        for z in scaled.column_mut(j).iter_mut() {
            *z *= w;
        }
    }
    scaled * vecs.adjoint()
}

/// `exp(G)` for anti-Hermitian `G`, via the eigendecomposition of `iG`.
pub fn expm_skew(g: &CMat) -> Result<CMat> {
    if g.nrows() != g.ncols() {
        return Err(Error::DimensionMismatch { expected: g.nrows(), got: g.ncols() });
    }
    let dev = max_abs(&(g + g.adjoint()));
    if dev > 1e-10 {
        return Err(Error::NotAntiHermitian(dev));
    }
    if g.iter().all(|z| *z == C64::new(0.0, 0.0)) {
        return Ok(identity(g.nrows()));
    }
    let h = g * I;
    let (vals, vecs) = eigh(&h)?;
    // exp(G) = exp(-i H)
    Ok(spectral_apply(&vals, &vecs, |l| C64::from_polar(1.0, -l)))
}

/// `‖U†U − 1‖_max`.
pub fn unitarity_error(u: &CMat) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &identity(u.nrows()))
}
