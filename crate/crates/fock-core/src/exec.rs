/// Execution strategy for the data-parallel kernels.
///
/// `Parallel` uses rayon when the `parallel` feature is enabled and silently
/// degrades to the sequential loop otherwise, so callers never need to cfg-gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Map `f` over `0..n`, preserving order.
    pub fn map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Fill `out[i] = f(i)`.
    pub fn fill<T, F>(self, out: &mut [T], min_len: usize, f: F)
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() && out.len() >= min_len {
            use rayon::prelude::*;
            out.par_iter_mut().with_min_len(min_len.max(1)).enumerate().for_each(|(i, o)| *o = f(i));
            return;
        }
        let _ = min_len;
        for (i, o) in out.iter_mut().enumerate() {
            *o = f(i);
        }
    }
}
