use fock_core::linalg::C64;
use fock_core::Pauli;
use rand::Rng;

/// Per-gate qubit depolarizing hook. Off unless a probability is set; not
/// calibrated against anything.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DepolarizingHook {
    pub probability: f64,
}

impl DepolarizingHook {
    pub fn is_enabled(&self) -> bool {
        self.probability > 0.0
    }

    /// With probability `p` apply X, Y or Z (uniformly) to `qubit` of a joint
    /// state whose qubits are the least significant digits.
    pub fn apply<R: Rng>(&self, state: &mut [C64], qubit: usize, rng: &mut R) -> Option<Pauli> {
        if !self.is_enabled() || rng.random::<f64>() >= self.probability {
            return None;
        }
        let pauli = [Pauli::X, Pauli::Y, Pauli::Z][rng.random_range(0..3)];
        let bit = 1usize << qubit;
        let i = C64::new(0.0, 1.0);
        for idx in 0..state.len() {
            if idx & bit != 0 {
                continue;
            }
            let (a, b) = (state[idx], state[idx | bit]);
            let (na, nb) = match pauli {
                Pauli::X => (b, a),
                Pauli::Y => (-i * b, i * a),
                Pauli::Z => (a, -b),
                Pauli::I => (a, b),
            };
            state[idx] = na;
            state[idx | bit] = nb;
        }
        Some(pauli)
    }
}
