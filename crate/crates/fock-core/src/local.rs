use crate::linalg::{CMat, C64};
use crate::{Error, Exec, HybridRegister, Result};

/// Row-compressed operator on a few subsystems.
///
/// Local index convention: the first target is the least significant digit,
/// mirroring the global layout.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOp {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
    diagonal: Option<Vec<C64>>,
}

impl LocalOp {
    /// Keeps every nonzero entry.
    pub fn from_dense(m: &CMat) -> Self {
        Self::from_dense_pruned(m, 0.0)
    }

    /// Drops entries with modulus `<= tol`.
    pub fn from_dense_pruned(m: &CMat, tol: f64) -> Self {
        assert_eq!(m.nrows(), m.ncols(), "local operator must be square");
        let dim = m.nrows();
        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        let mut is_diag = true;
        for r in 0..dim {
            for c in 0..dim {
                let v = m[(r, c)];
                if v.norm() > tol {
                    if r != c {
                        is_diag = false;
                    }
                    cols.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(cols.len());
        }
        let diagonal = is_diag.then(|| (0..dim).map(|k| m[(k, k)]).collect());
        Self { dim, row_ptr, cols, vals, diagonal }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal.is_some()
    }

    pub fn to_dense(&self) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for r in 0..self.dim {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                m[(r, self.cols[k])] = self.vals[k];
            }
        }
        m
    }

    /// Apply to `input`, embedded on `targets` of `reg`, writing into `out`.
    pub fn apply_into(&self, reg: &HybridRegister, targets: &[usize], input: &[C64], out: &mut [C64], exec: Exec) -> Result<()> {
        let emb = Embedding::new(reg, targets)?;
        if emb.local_dim != self.dim {
            return Err(Error::DimensionMismatch { expected: emb.local_dim, got: self.dim });
        }
        if input.len() != reg.dim() || out.len() != reg.dim() {
            return Err(Error::DimensionMismatch { expected: reg.dim(), got: input.len() });
        }
        if let Some(diag) = &self.diagonal {
            exec.fill(out, 4096, |g| {
                let (l, _) = emb.split(g);
                diag[l] * input[g]
            });
            return Ok(());
        }
        exec.fill(out, 4096, |g| {
            let (l, base) = emb.split(g);
            let mut acc = C64::new(0.0, 0.0);
            for k in self.row_ptr[l]..self.row_ptr[l + 1] {
                acc += self.vals[k] * input[base + emb.offsets[self.cols[k]]];
            }
            acc
        });
        Ok(())
    }
}

struct Embedding {
    strides: Vec<usize>,
    dims: Vec<usize>,
    local_strides: Vec<usize>,
    offsets: Vec<usize>,
    local_dim: usize,
}

impl Embedding {
    fn new(reg: &HybridRegister, targets: &[usize]) -> Result<Self> {
        let n = reg.n_subsystems();
        for (i, &t) in targets.iter().enumerate() {
            if t >= n {
                return Err(Error::IndexOutOfRange { what: "subsystem", index: t, limit: n });
            }
            if targets[..i].contains(&t) {
                return Err(Error::RepeatedTarget(t));
            }
        }
        let strides: Vec<usize> = targets.iter().map(|&t| reg.stride(t)).collect();
        let dims: Vec<usize> = targets.iter().map(|&t| reg.subsystem_dim(t)).collect();
        let mut local_strides = Vec::with_capacity(dims.len());
        let mut acc = 1;
        for &d in &dims {
            local_strides.push(acc);
            acc *= d;
        }
        let local_dim = acc;
        let offsets =
            (0..local_dim).map(|l| (0..dims.len()).map(|i| ((l / local_strides[i]) % dims[i]) * strides[i]).sum()).collect();
        Ok(Self { strides, dims, local_strides, offsets, local_dim })
    }

    /// Local index of `g` and the global index with the target digits zeroed.
    #[inline]
    fn split(&self, g: usize) -> (usize, usize) {
        let mut l = 0;
        let mut base = g;
        for i in 0..self.dims.len() {
            let digit = (g / self.strides[i]) % self.dims[i];
            l += digit * self.local_strides[i];
            base -= digit * self.strides[i];
        }
        (l, base)
    }
}
