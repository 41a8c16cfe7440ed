use compiler::{Schedule, SpinHamiltonian};
use fock_core::linalg::{eigh, CMat, C64};
use fock_core::QubitOperator;
use serde_json::{json, Value};

use crate::probability::success_probability;
use crate::trotter::{additive_error, trotter_error_bound, trotter_filter, TrotterOptions};
use crate::{exact_filter, Result};

/// 17 significant digits, enough to round-trip an f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Right eigenvalues of a general operator, by descending real part.
///
/// The unbounded Schur iteration can stall on exactly degenerate spectra, so
/// it is capped; normal operators (functions of a Hermitian H) then fall back
/// to the eigenbasis of their Hermitian part.
pub fn right_eigenvalues(op: &QubitOperator) -> Vec<C64> {
    let m = op.matrix();
    let schur = m.clone().try_schur(1e-15, 10_000).and_then(|s| s.eigenvalues()).map(|v| v.iter().copied().collect::<Vec<_>>());
    let mut ev = match schur {
        Some(ev) => ev,
        None => normal_eigenvalues(m),
    };
    ev.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
    ev
}

/// Rayleigh quotients of `m` in a common eigenbasis of its Hermitian and
/// anti-Hermitian parts; a generic combination splits shared degeneracies.
fn normal_eigenvalues(m: &CMat) -> Vec<C64> {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let anti = (m - m.adjoint()) * C64::new(0.0, -0.5);
    let Ok((_, vecs)) = eigh(&(herm + anti * C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0))) else {
        return Vec::new();
    };
    (0..m.nrows())
        .map(|k| {
            let v = vecs.column(k);
            (v.adjoint() * m * v)[(0, 0)]
        })
        .collect()
}

/// One α point of a filter sweep.
#[derive(Debug, Clone)]
pub struct FilterReport {
    pub alpha: f64,
    pub shift: f64,
    pub exact: QubitOperator,
    pub compiled: QubitOperator,
    pub additive_error: f64,
    pub bound: f64,
    pub success_probability: f64,
}

impl FilterReport {
    pub fn compute(h: &SpinHamiltonian, schedule: &Schedule, alpha: f64, psi: &[C64], opts: &TrotterOptions) -> Result<Self> {
        let exact = exact_filter(&h.dense_matrix(), alpha)?;
        let compiled = trotter_filter(h, schedule, alpha, opts)?;
        let coloring = schedule.coloring(h)?;
        Ok(Self {
            alpha,
            shift: h.shift,
            additive_error: additive_error(&compiled, &exact),
            bound: trotter_error_bound(h, &coloring, alpha),
            success_probability: success_probability(psi, &compiled)?,
            exact,
            compiled,
        })
    }

    /// Bound holds up to round-off.
    pub fn within_bound(&self) -> bool {
        self.additive_error <= self.bound + 1e-9
    }

    pub fn compiled_eigenvalues(&self) -> Vec<C64> {
        right_eigenvalues(&self.compiled)
    }

    pub fn csv_header(n_qubits: usize) -> String {
        let mut cols: Vec<String> = ["alpha", "Es", "eps", "bound", "p_success"].iter().map(|s| s.to_string()).collect();
        cols.extend((0..1usize << n_qubits).map(|k| format!("lambda_{k}")));
        cols.join(",")
    }

    /// Eigenvalue columns carry real parts; see `to_json` for the imaginary parts.
    pub fn csv_row(&self) -> String {
        let mut cols = vec![
            fmt_f64(self.alpha),
            fmt_f64(self.shift),
            fmt_f64(self.additive_error),
            fmt_f64(self.bound),
            fmt_f64(self.success_probability),
        ];
        cols.extend(self.compiled_eigenvalues().iter().map(|z| fmt_f64(z.re)));
        cols.join(",")
    }

    pub fn to_json(&self) -> Value {
        let mat = |op: &QubitOperator| -> Value {
            let m = op.matrix();
            Value::Array(
                (0..m.nrows())
                    .map(|r| Value::Array((0..m.ncols()).map(|c| json!([m[(r, c)].re, m[(r, c)].im])).collect()))
                    .collect(),
            )
        };
        json!({
            "alpha": self.alpha,
            "Es": self.shift,
            "eps": self.additive_error,
            "bound": self.bound,
            "p_success": self.success_probability,
            "lambda": self.compiled_eigenvalues().iter().map(|z| json!([z.re, z.im])).collect::<Vec<_>>(),
            "exact": mat(&self.exact),
            "compiled": mat(&self.compiled),
        })
    }
}
