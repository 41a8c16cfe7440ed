use std::collections::HashMap;

use gates::{Circuit, CircuitStats};
use serde::{Deserialize, Serialize};

use crate::bond::{apply_shift, compile_bond_displacement};
use crate::coloring::{color_edges, EdgeColoring};
use crate::hamiltonian::SpinHamiltonian;
use crate::lattice::{Boundary, Lattice};
use crate::swap_network::PermutationTracker;
use crate::{CompileError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// Every oscillator finishes one color before the next starts.
    ColorOrdered,
    /// 1D only: even- and odd-cavity oscillators take opposite colors each
    /// step, then trade.
    Alternating,
}

fn one() -> usize {
    1
}

fn open() -> Boundary {
    Boundary::Open
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Schedule {
    pub ordering: Ordering,
    #[serde(rename = "M")]
    pub m: usize,
    /// Without a lattice the interaction graph is colored generically and
    /// oscillators run logical staggered sweeps.
    #[serde(default)]
    pub lattice: Option<Lattice>,
    #[serde(default = "open")]
    pub bc: Boundary,
    #[serde(default = "one")]
    pub r: usize,
}

impl Schedule {
    pub fn new(ordering: Ordering, m: usize, lattice: Option<Lattice>, bc: Boundary) -> Self {
        Self { ordering, m, lattice, bc, r: 1 }
    }

    pub fn single(lattice: Lattice, bc: Boundary) -> Self {
        Self::new(Ordering::ColorOrdered, 1, Some(lattice), bc)
    }

    pub fn with_reps(self, r: usize) -> Self {
        Self { r, ..self }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn coloring(&self, h: &SpinHamiltonian) -> Result<EdgeColoring> {
        color_edges(h, self.lattice.map(|l| (l, self.bc)))
    }
}

/// One logical instruction of a schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    /// Oscillator, sitting in `cavity`, is kicked by one bond of `color`.
    Displace { oscillator: usize, cavity: usize, edge: usize, color: usize },
    /// Spectrum shift of one color on one oscillator.
    Shift { oscillator: usize, cavity: usize, color: usize },
    /// One composite swap network `T_AB` over the cavity ring.
    Network,
}

/// A schedule resolved against a Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub n_qubits: usize,
    pub n_modes: usize,
    /// Per-oscillator amplitude `α/(r√M)`.
    pub beta: f64,
    pub shift: f64,
    pub coloring: EdgeColoring,
    pub steps: Vec<Step>,
    /// Cavity ring the networks act on; empty when no network is used.
    pub ring: Vec<usize>,
    /// Cavity holding each oscillator after the last step.
    pub final_cavities: Vec<usize>,
    pub sn_count: usize,
    pub reps: usize,
}

impl Plan {
    /// Each oscillator meets every edge of every color once per repetition,
    /// and colors are met in order unless the ordering interleaves them.
    fn verify_coverage(&self, ordering: Ordering) -> Result<()> {
        let mut seen = vec![vec![0usize; self.coloring.partitions.iter().map(Vec::len).sum()]; self.n_modes];
        let mut last_color = vec![0usize; self.n_modes];
        for s in &self.steps {
            if let Step::Displace { oscillator, edge, color, .. } = *s {
                seen[oscillator][edge] += 1;
                if ordering == Ordering::ColorOrdered && self.reps == 1 {
                    if color < last_color[oscillator] {
                        return Err(CompileError::Schedule("color order violated".into()));
                    }
                    last_color[oscillator] = color;
                }
            }
        }
        for (o, counts) in seen.iter().enumerate() {
            if let Some(e) = counts.iter().position(|&c| c != self.reps) {
                return Err(CompileError::Schedule(format!(
                    "oscillator {o} meets edge {e} {} times, expected {}",
                    counts[e], self.reps
                )));
            }
        }
        Ok(())
    }

    /// Gate-level circuit; modes are cavities.
    pub fn emit(&self, h: &SpinHamiltonian) -> Result<Circuit> {
        let mut c = Circuit::new(self.n_qubits, self.n_modes);
        let n_colors = self.coloring.n_colors();
        for s in &self.steps {
            match *s {
                Step::Displace { cavity, edge, .. } => c.extend(compile_bond_displacement(cavity, &h.edges[edge], self.beta))?,
                Step::Shift { cavity, .. } => c.extend(apply_shift(&[cavity], self.shift, self.beta, n_colors))?,
                Step::Network => c.extend(crate::swap_network::composite_network(&self.ring)?)?,
            }
        }
        c.sn_count = self.sn_count;
        c.trotter_reps = self.reps;
        Ok(c)
    }
}

/// Resolve a schedule into logical steps.
pub fn plan_schedule(h: &SpinHamiltonian, schedule: &Schedule, alpha: f64) -> Result<Plan> {
    h.validate()?;
    let n = h.n_qubits;
    let m = schedule.m;
    if m == 0 || m > n.max(1) {
        return Err(CompileError::Schedule(format!("need 1 ≤ M ≤ N, got M={m}, N={n}")));
    }
    if schedule.r == 0 {
        return Err(CompileError::Schedule("r must be at least 1".into()));
    }
    if !alpha.is_finite() {
        return Err(CompileError::Schedule(format!("non-finite alpha {alpha}")));
    }
    let coloring = schedule.coloring(h)?;
    let beta = alpha / (schedule.r as f64 * (m as f64).sqrt());
    let ring_lattice = schedule.lattice.filter(|_| m == n && n > 1);
    let mut plan = Plan {
        n_qubits: n,
        n_modes: m,
        beta,
        shift: h.shift,
        coloring,
        steps: Vec::new(),
        ring: Vec::new(),
        final_cavities: (0..m).collect(),
        sn_count: 0,
        reps: schedule.r,
    };
    match (schedule.ordering, ring_lattice) {
        (Ordering::Alternating, Some(lat @ Lattice::Chain(_))) => alternating(h, lat, &mut plan)?,
        (Ordering::Alternating, _) => {
            return Err(CompileError::Schedule("alternating ordering needs a chain lattice with one oscillator per site".into()))
        }
        (Ordering::ColorOrdered, Some(lat)) => ring_color_ordered(h, lat, &mut plan)?,
        (Ordering::ColorOrdered, None) => staggered(&mut plan),
    }
    plan.verify_coverage(schedule.ordering)?;
    Ok(plan)
}

/// Full compiled filter circuit.
pub fn compile_filter_circuit(h: &SpinHamiltonian, schedule: &Schedule, alpha: f64) -> Result<Circuit> {
    plan_schedule(h, schedule, alpha)?.emit(h)
}

pub fn circuit_stats(c: &Circuit) -> CircuitStats {
    c.stats()
}

/// Logical sweeps without swap networks. At step `t` oscillator `o` handles
/// edge `(t + o·⌊|γ|/M⌋) mod |γ|` of the current color.
fn staggered(plan: &mut Plan) {
    let m = plan.n_modes;
    for _ in 0..plan.reps {
        for (color, class) in plan.coloring.partitions.iter().enumerate() {
            plan.steps.extend((0..m).map(|o| Step::Shift { oscillator: o, cavity: o, color }));
            let g = class.len();
            if g == 0 {
                continue;
            }
            let stride = g / m;
            for t in 0..g {
                for o in 0..m {
                    plan.steps.push(Step::Displace { oscillator: o, cavity: o, edge: class[(t + o * stride) % g], color });
                }
            }
        }
    }
}

fn ring_tracker(lat: Lattice, n: usize) -> Result<PermutationTracker> {
    if n % 2 == 1 {
        return Err(CompileError::Schedule(format!("one oscillator per site needs an even number of sites, got {n}")));
    }
    Ok(PermutationTracker::new(lat.ring()))
}

/// One oscillator per cavity. For each color, `N/2` layers in which both
/// endpoint cavities of every bond are kicked by that bond, separated by the
/// composite network; the trailing network of each color is dropped.
fn ring_color_ordered(h: &SpinHamiltonian, lat: Lattice, plan: &mut Plan) -> Result<()> {
    let n = plan.n_qubits;
    let mut tracker = ring_tracker(lat, n)?;
    let layers = n / 2;
    for _ in 0..plan.reps {
        for (color, class) in plan.coloring.partitions.iter().enumerate() {
            for o in 0..n {
                plan.steps.push(Step::Shift { oscillator: o, cavity: tracker.cavity(o), color });
            }
            for layer in 0..layers {
                for &e in class {
                    let edge = &h.edges[e];
                    for cavity in [edge.j, edge.k] {
                        let oscillator = tracker.oscillator_at(cavity).expect("every cavity holds an oscillator");
                        plan.steps.push(Step::Displace { oscillator, cavity, edge: e, color });
                    }
                }
                if layer + 1 < layers {
                    tracker.advance()?;
                    plan.steps.push(Step::Network);
                    plan.sn_count += 1;
                }
            }
        }
    }
    plan.ring = tracker.ring().to_vec();
    plan.final_cavities = tracker.cavities();
    Ok(())
}

/// `N/2` rounds of two steps. In step 0 oscillators on even cavities take the
/// A bond through their cavity and odd ones the B bond; step 1 trades colors.
/// Within a step the A pass precedes the B pass. Networks run between rounds
/// only, `N/2 − 1` in total.
fn alternating(h: &SpinHamiltonian, lat: Lattice, plan: &mut Plan) -> Result<()> {
    let n = plan.n_qubits;
    if plan.coloring.n_colors() != 2 {
        return Err(CompileError::Schedule("alternating ordering needs two colors".into()));
    }
    let mut tracker = ring_tracker(lat, n)?;
    let index: HashMap<(usize, usize), usize> =
        h.edges.iter().enumerate().map(|(i, e)| ((e.j.min(e.k), e.j.max(e.k)), i)).collect();
    let color_of: HashMap<usize, usize> =
        plan.coloring.partitions.iter().enumerate().flat_map(|(c, class)| class.iter().map(move |&e| (e, c))).collect();
    // the bond of a color through cavity c, if the Hamiltonian has it
    let bond = |color: usize, c: usize| -> Option<usize> {
        let (a, b) = if (c % 2 == 0) == (color == 0) { (c, (c + 1) % n) } else { ((c + n - 1) % n, c) };
        index.get(&(a.min(b), a.max(b))).copied().filter(|e| color_of.get(e) == Some(&color))
    };
    for _ in 0..plan.reps {
        for color in 0..2 {
            for o in 0..n {
                plan.steps.push(Step::Shift { oscillator: o, cavity: tracker.cavity(o), color });
            }
        }
        for round in 0..n / 2 {
            for step in 0..2 {
                let mut passes = [Vec::new(), Vec::new()];
                for o in 0..n {
                    let cavity = tracker.cavity(o);
                    let color = usize::from((cavity % 2 == 0) != (step == 0));
                    if let Some(edge) = bond(color, cavity) {
                        passes[color].push(Step::Displace { oscillator: o, cavity, edge, color });
                    }
                }
                let [a, b] = passes;
                plan.steps.extend(a);
                plan.steps.extend(b);
            }
            if round + 1 < n / 2 {
                tracker.advance()?;
                plan.steps.push(Step::Network);
                plan.sn_count += 1;
            }
        }
    }
    plan.ring = tracker.ring().to_vec();
    plan.final_cavities = tracker.cavities();
    Ok(())
}
