use fock_core::C64;
use serde::{Deserialize, Serialize};

use crate::{Gate, GateError};

/// Wire format of one gate: `{"kind": "DZ", "operands": [mode, qubit], "params": [re, im]}`.
///
/// Operands: `R`, `F`, `D` take `[mode]`; `BS` takes `[j, k]`; `Rm` takes
/// `[qubit]`; `RZ`, `P`, `DZ` take `[mode, qubit]`. Params: `R`/`RZ` `[θ]`,
/// `BS` `[θ, φ]`, `Rm` `[θ, mx, my, mz]`, `D`/`DZ` `[Re α, Im α]`, `F`/`P` none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateRecord {
    pub kind: String,
    pub operands: Vec<usize>,
    pub params: Vec<f64>,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        let (operands, params) = match *g {
            Gate::R { mode, theta } => (vec![mode], vec![theta]),
            Gate::F { mode } => (vec![mode], vec![]),
            Gate::D { mode, alpha } => (vec![mode], vec![alpha.re, alpha.im]),
            Gate::BS { j, k, theta, phi } => (vec![j, k], vec![theta, phi]),
            Gate::Rm { qubit, axis, theta } => (vec![qubit], vec![theta, axis[0], axis[1], axis[2]]),
            Gate::RZ { mode, qubit, theta } => (vec![mode, qubit], vec![theta]),
            Gate::P { mode, qubit } => (vec![mode, qubit], vec![]),
            Gate::DZ { mode, qubit, alpha } => (vec![mode, qubit], vec![alpha.re, alpha.im]),
        };
        GateRecord { kind: g.kind().to_string(), operands, params }
    }
}

impl TryFrom<GateRecord> for Gate {
    type Error = GateError;

    fn try_from(r: GateRecord) -> Result<Self, GateError> {
        let shape = |ops: usize, params: usize| -> Result<(), GateError> {
            if r.operands.len() != ops || r.params.len() != params {
                return Err(GateError::Parameter(format!(
                    "{} expects {ops} operands and {params} params, got {} and {}",
                    r.kind,
                    r.operands.len(),
                    r.params.len()
                )));
            }
            Ok(())
        };
        let o = &r.operands;
        let p = &r.params;
        let g = match r.kind.as_str() {
            "R" => {
                shape(1, 1)?;
                Gate::R { mode: o[0], theta: p[0] }
            }
            "F" => {
                shape(1, 0)?;
                Gate::F { mode: o[0] }
            }
            "D" => {
                shape(1, 2)?;
                Gate::D { mode: o[0], alpha: C64::new(p[0], p[1]) }
            }
            "BS" => {
                shape(2, 2)?;
                Gate::BS { j: o[0], k: o[1], theta: p[0], phi: p[1] }
            }
            "Rm" => {
                shape(1, 4)?;
                Gate::Rm { qubit: o[0], axis: [p[1], p[2], p[3]], theta: p[0] }
            }
            "RZ" => {
                shape(2, 1)?;
                Gate::RZ { mode: o[0], qubit: o[1], theta: p[0] }
            }
            "P" => {
                shape(2, 0)?;
                Gate::P { mode: o[0], qubit: o[1] }
            }
            "DZ" => {
                shape(2, 2)?;
                Gate::DZ { mode: o[0], qubit: o[1], alpha: C64::new(p[0], p[1]) }
            }
            other => return Err(GateError::UnknownKind(other.to_string())),
        };
        Ok(g)
    }
}

impl Serialize for Gate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GateRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rec = GateRecord::deserialize(d)?;
        Gate::try_from(rec).map_err(serde::de::Error::custom)
    }
}
