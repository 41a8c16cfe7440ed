use serde::{Deserialize, Serialize};

use crate::hamiltonian::{Edge, SpinHamiltonian};
use crate::{CompileError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Open,
    Periodic,
}

/// Site geometry. Grid sites are numbered `x + nx·y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lattice {
    Chain(usize),
    Grid(usize, usize),
}

impl Lattice {
    pub fn n_sites(&self) -> usize {
        match *self {
            Lattice::Chain(n) => n,
            Lattice::Grid(nx, ny) => nx * ny,
        }
    }

    pub fn is_1d(&self) -> bool {
        matches!(self, Lattice::Chain(_))
    }

    pub fn check(&self, bc: Boundary) -> Result<()> {
        let bad = |m: String| Err(CompileError::Schedule(m));
        match *self {
            Lattice::Chain(n) if n < 2 => bad(format!("chain needs at least 2 sites, got {n}")),
            Lattice::Chain(n) if bc == Boundary::Periodic && n % 2 == 1 => {
                bad(format!("periodic chain needs even length, got {n}"))
            }
            Lattice::Grid(nx, ny) if nx == 0 || ny == 0 => bad("empty grid".into()),
            Lattice::Grid(nx, ny) if bc == Boundary::Periodic && (nx % 2 == 1 || ny % 2 == 1) => {
                bad(format!("periodic grid needs even sides, got {nx}x{ny}"))
            }
            _ => Ok(()),
        }
    }

    /// Nearest-neighbor bonds grouped by color: `[A, B]` for a chain (even
    /// and odd bonds), `[A, B, C, D]` for a grid (even/odd horizontal, then
    /// even/odd vertical).
    pub fn colored_bonds(&self, bc: Boundary) -> Result<Vec<Vec<(usize, usize)>>> {
        self.check(bc)?;
        let periodic = bc == Boundary::Periodic;
        // bonds (s, s+1) along a line of length n, split by parity of s
        let line = |n: usize| -> [Vec<(usize, usize)>; 2] {
            let mut out = [Vec::new(), Vec::new()];
            for s in 0..n {
                let t = s + 1;
                if t < n {
                    out[s % 2].push((s, t));
                } else if periodic && n > 2 {
                    out[s % 2].push((s, 0));
                }
            }
            out
        };
        Ok(match *self {
            Lattice::Chain(n) => line(n).to_vec(),
            Lattice::Grid(nx, ny) => {
                let site = |x: usize, y: usize| x + nx * y;
                let mut colors = vec![Vec::new(); 4];
                let [a, b] = line(nx);
                for y in 0..ny {
                    colors[0].extend(a.iter().map(|&(s, t)| (site(s, y), site(t, y))));
                    colors[1].extend(b.iter().map(|&(s, t)| (site(s, y), site(t, y))));
                }
                let [c, d] = line(ny);
                for x in 0..nx {
                    colors[2].extend(c.iter().map(|&(s, t)| (site(x, s), site(x, t))));
                    colors[3].extend(d.iter().map(|&(s, t)| (site(x, s), site(x, t))));
                }
                colors
            }
        })
    }

    /// Cavity ring used by the SWAP network: the chain itself, or a
    /// boustrophedon walk through the grid. Ring-position parity equals
    /// checkerboard parity, so every bond joins an even and an odd position.
    pub fn ring(&self) -> Vec<usize> {
        match *self {
            Lattice::Chain(n) => (0..n).collect(),
            Lattice::Grid(nx, ny) => (0..ny)
                .flat_map(|y| {
                    let row: Vec<usize> = (0..nx).map(|x| x + nx * y).collect();
                    if y % 2 == 0 {
                        row
                    } else {
                        row.into_iter().rev().collect()
                    }
                })
                .collect(),
        }
    }

    /// Hamiltonian with the same coupling on every bond, edges listed by color.
    pub fn hamiltonian(&self, bc: Boundary, (jx, jy, jz): (f64, f64, f64), shift: f64) -> Result<SpinHamiltonian> {
        let edges = self.colored_bonds(bc)?.into_iter().flatten().map(|(j, k)| Edge { j, k, jx, jy, jz }).collect();
        SpinHamiltonian::new(self.n_sites(), edges, shift)
    }

    pub fn heisenberg(&self, bc: Boundary, shift: f64) -> Result<SpinHamiltonian> {
        self.hamiltonian(bc, (1.0, 1.0, 1.0), shift)
    }
}
