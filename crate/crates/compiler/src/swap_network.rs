use gates::{bosonic_swap, Gate};

use crate::{CompileError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnLayer {
    /// Swaps ring positions `(2i, 2i+1)`.
    A,
    /// Swaps ring positions `(2i+1, 2i+2)`, wrapping.
    B,
}

/// `τ^p(j)`: cavity of oscillator `j` after `p` composite swaps on an `n`-ring.
pub fn tau(p: usize, j: usize, n: usize) -> usize {
    let shift = (2 * p) % n;
    if j % 2 == 0 {
        (j + shift) % n
    } else {
        (j + n - shift) % n
    }
}

/// Transversal SWAPs on one layer of a cavity ring.
pub fn swap_network_ring(ring: &[usize], layer: SnLayer) -> Result<Vec<Gate>> {
    let n = ring.len();
    if n % 2 == 1 {
        return Err(CompileError::Schedule(format!("swap network needs an even ring, got {n}")));
    }
    let mut out = Vec::new();
    if n == 2 {
        // both layers act on the single pair
        out.extend(bosonic_swap(ring[0], ring[1])?);
        return Ok(out);
    }
    let start = match layer {
        SnLayer::A => 0,
        SnLayer::B => 1,
    };
    for i in (start..n).step_by(2) {
        out.extend(bosonic_swap(ring[i], ring[(i + 1) % n])?);
    }
    Ok(out)
}

pub fn swap_network_1d(n: usize, layer: SnLayer) -> Result<Vec<Gate>> {
    swap_network_ring(&(0..n).collect::<Vec<_>>(), layer)
}

/// The composite `T_AB = T_B T_A` (A layer first in time).
pub fn composite_network(ring: &[usize]) -> Result<Vec<Gate>> {
    let mut out = swap_network_ring(ring, SnLayer::A)?;
    out.extend(swap_network_ring(ring, SnLayer::B)?);
    Ok(out)
}

/// Oscillator-to-cavity map, updated as swap layers are applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationTracker {
    ring: Vec<usize>,
    /// Ring position of each oscillator.
    position: Vec<usize>,
    applied: usize,
}

impl PermutationTracker {
    /// Oscillator `o` starts on ring position `o`.
    pub fn new(ring: Vec<usize>) -> Self {
        let position = (0..ring.len()).collect();
        Self { ring, position, applied: 0 }
    }

    pub fn chain(n: usize) -> Self {
        Self::new((0..n).collect())
    }

    pub fn ring(&self) -> &[usize] {
        &self.ring
    }

    /// Number of composite networks applied so far.
    pub fn applied(&self) -> usize {
        self.applied
    }

    pub fn cavity(&self, oscillator: usize) -> usize {
        self.ring[self.position[oscillator]]
    }

    pub fn oscillator_at(&self, cavity: usize) -> Option<usize> {
        let pos = self.ring.iter().position(|&c| c == cavity)?;
        self.position.iter().position(|&p| p == pos)
    }

    /// Oscillator → cavity for every oscillator.
    pub fn cavities(&self) -> Vec<usize> {
        (0..self.position.len()).map(|o| self.cavity(o)).collect()
    }

    pub fn apply_layer(&mut self, layer: SnLayer) {
        let n = self.ring.len();
        if n == 2 {
            for p in &mut self.position {
                *p = 1 - *p;
            }
            return;
        }
        let start = match layer {
            SnLayer::A => 0,
            SnLayer::B => 1,
        };
        for p in &mut self.position {
            if (*p + n - start) % 2 == 0 {
                *p = (*p + 1) % n;
            } else {
                *p = (*p + n - 1) % n;
            }
        }
    }

    /// Apply `T_AB` and return its gates.
    pub fn advance(&mut self) -> Result<Vec<Gate>> {
        let gates = composite_network(&self.ring)?;
        self.apply_layer(SnLayer::A);
        self.apply_layer(SnLayer::B);
        self.applied += 1;
        Ok(gates)
    }
}
