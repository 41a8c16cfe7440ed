use std::f64::consts::FRAC_PI_2;

use compiler::{
    apply_shift, compile_bond_displacement, compile_filter_circuit, plan_schedule, swap_network_1d, tau, Boundary, Edge, Lattice,
    Ordering, PermutationTracker, Plan, Schedule, SpinHamiltonian, Step,
};
use fock_core::linalg::{self, kron, max_abs_diff, CMat, C64, I};
use fock_core::{apply_local, mode_ops, Exec, HybridRegister, StateVector};
use gates::{circuit_unitary, optimize, zz_displacement, Circuit, Gate, Program, SimOptions};
use proptest::prelude::*;

fn loose() -> SimOptions {
    SimOptions { tail_tolerance: 1.0, exec: Exec::Sequential }
}

fn random_qubit_state(n: usize, seed: u64) -> Vec<C64> {
    // small LCG; only needs to be generic
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    let v: Vec<C64> = (0..1 << n).map(|_| C64::new(next(), next())).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

/// Evolve with dense `exp(−2iβ Ĥ_e ⊗ p)` per bond step and `D` per shift,
/// on oscillator-labelled modes, ignoring the swap networks.
fn oracle_state(h: &SpinHamiltonian, plan: &Plan, d: usize, psi: &[C64]) -> StateVector {
    let n = h.n_qubits;
    let reg = HybridRegister::new(n, plan.n_modes, d).unwrap();
    let mut st = StateVector::from_qubit_state(reg, psi).unwrap();
    let p = mode_ops(d).unwrap().p;
    let targets = |o: usize| -> Vec<usize> { (0..n).chain([n + o]).collect() };
    let gamma = plan.coloring.n_colors() as f64;
    for s in &plan.steps {
        let (o, gen) = match *s {
            Step::Displace { oscillator, edge, .. } => (oscillator, h.edges[edge].operator(n).into_matrix()),
            Step::Shift { oscillator, .. } => (oscillator, CMat::identity(1 << n, 1 << n) * C64::new(-h.shift / gamma, 0.0)),
            Step::Network => continue,
        };
        let u = linalg::expm_skew(&(kron(&p, &gen) * (-I * 2.0 * plan.beta))).unwrap();
        st = apply_local(&u, &targets(o), &st).unwrap();
    }
    st
}

/// Relabel modes so oscillator `o` sits in slot `o`.
fn unpermute(st: &StateVector, plan: &Plan) -> Vec<C64> {
    let reg = *st.register();
    let (qd, d, m) = (reg.qubit_dim(), reg.cutoff(), plan.n_modes);
    let mut out = vec![C64::new(0.0, 0.0); reg.dim()];
    for (idx, z) in st.amplitudes().iter().enumerate() {
        let q = idx % qd;
        let mut rest = idx / qd;
        let mut levels = vec![0; m];
        for l in levels.iter_mut() {
            *l = rest % d;
            rest /= d;
        }
        // cavity c holds oscillator o with final_cavities[o] == c
        let mut j = 0;
        for o in (0..m).rev() {
            j = j * d + levels[plan.final_cavities[o]];
        }
        out[q + qd * j] = *z;
    }
    out
}

fn max_dev(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

fn compiled_vs_oracle(h: &SpinHamiltonian, schedule: &Schedule, alpha: f64, d: usize) -> f64 {
    let plan = plan_schedule(h, schedule, alpha).unwrap();
    let circuit = plan.emit(h).unwrap();
    let prog = Program::new(&circuit, d, loose()).unwrap();
    let psi = random_qubit_state(h.n_qubits, 7);
    let mut st = StateVector::from_qubit_state(prog.register(), &psi).unwrap();
    prog.run(&mut st).unwrap();
    let want = oracle_state(h, &plan, d, &psi);
    max_dev(&unpermute(&st, &plan), want.amplitudes())
}

#[test]
fn zz_only_bond_is_the_bare_gadget() {
    let e = Edge { j: 0, k: 1, jx: 0.0, jy: 0.0, jz: 1.0 };
    assert_eq!(compile_bond_displacement(2, &e, 0.3), zz_displacement(2, 0, 1, 0.3));
    // on a cavity owned by qubit j the roles swap
    assert_eq!(compile_bond_displacement(0, &e, 0.3), zz_displacement(0, 1, 0, 0.3));
}

#[test]
fn heisenberg_bond_matches_dense_exponential() {
    let d = 24;
    let ops = mode_ops(d).unwrap();
    for (e, alpha) in
        [(Edge::heisenberg(0, 1), 0.2), (Edge { j: 1, k: 0, jx: 0.7, jy: -0.4, jz: 1.3 }, -0.6), (Edge::xxz(0, 1, 0.0), 1.0)]
    {
        let u = circuit_unitary(&Circuit::from_gates(2, 1, compile_bond_displacement(0, &e, alpha)).unwrap(), d).unwrap();
        let hb = e.operator(2).into_matrix();
        let want = linalg::expm_skew(&(kron(&ops.p, &hb) * (-I * 2.0 * alpha))).unwrap();
        assert!(max_abs_diff(&u, &want) < 1e-9, "{e:?}");
    }
}

#[test]
fn heisenberg_bond_gate_counts() {
    let gates = compile_bond_displacement(0, &Edge::heisenberg(0, 1), 0.1);
    let count = |k: &str| gates.iter().filter(|g| g.kind() == k).count();
    assert_eq!(count("DZ"), 3);
    assert_eq!(count("P"), 3);
    assert_eq!(count("RZ"), 3);
    assert_eq!(count("R"), 6);
    assert_eq!(count("Rm"), 8);
}

#[test]
fn zero_alpha_bond_optimizes_away() {
    let c = Circuit::from_gates(2, 1, compile_bond_displacement(0, &Edge::heisenberg(0, 1), 0.0)).unwrap();
    assert!(optimize(&c).is_empty());
}

#[test]
fn shift_amounts() {
    assert!(apply_shift(&[0, 1], 0.0, 0.1, 2).is_empty());
    let g = apply_shift(&[0], -8.0, 0.1, 2);
    assert_eq!(g, vec![Gate::displacement(0, 0.4)]);
}

#[test]
fn shifted_singlet_passes_unfiltered() {
    // bond eigenvalue −3 on the singlet; shifting by it leaves amplitude 1
    let h = SpinHamiltonian::new(2, vec![Edge::heisenberg(0, 1)], -3.0).unwrap();
    let c = compile_filter_circuit(&h, &Schedule::single(Lattice::Chain(2), Boundary::Open), 0.4).unwrap();
    let vta = Program::new(&c, 30, SimOptions::default()).unwrap().vacuum_block().unwrap();
    let s = 0.5f64.sqrt();
    let singlet = [C64::new(0.0, 0.0), C64::new(s, 0.0), C64::new(-s, 0.0), C64::new(0.0, 0.0)];
    let out = vta.apply(&singlet);
    assert!(max_dev(&out, &singlet) < 1e-9);
}

#[test]
fn tau_examples() {
    assert_eq!((0..4).map(|j| tau(1, j, 4)).collect::<Vec<_>>(), [2, 3, 0, 1]);
    assert_eq!(tau(2, 0, 6), 4);
    assert_eq!(tau(2, 1, 6), 3);
    for n in [2, 4, 6, 8] {
        assert!((0..n).all(|j| tau(n / 2, j, n) == j));
    }
}

#[test]
fn composite_network_squares_to_identity_at_n4() {
    let d = 3;
    let mut gates = Vec::new();
    for _ in 0..2 {
        gates.extend(swap_network_1d(4, compiler::SnLayer::A).unwrap());
        gates.extend(swap_network_1d(4, compiler::SnLayer::B).unwrap());
    }
    let u = circuit_unitary(&Circuit::from_gates(0, 4, gates).unwrap(), d).unwrap();
    assert!(max_abs_diff(&u, &CMat::identity(81, 81)) < 1e-10);
    assert!(swap_network_1d(5, compiler::SnLayer::A).is_err());
}

#[test]
fn tracker_follows_photons() {
    let d = 2;
    for n in [4usize, 6] {
        let reg = HybridRegister::new(0, n, d).unwrap();
        for j in 0..n {
            let mut tracker = PermutationTracker::chain(n);
            let mut st = StateVector::basis(reg, d.pow(j as u32)).unwrap();
            for p in 1..=n {
                let gates = tracker.advance().unwrap();
                let prog = Program::new(&Circuit::from_gates(0, n, gates).unwrap(), d, loose()).unwrap();
                prog.run(&mut st).unwrap();
                let cavity = tracker.cavity(j);
                assert_eq!(cavity, tau(p, j, n));
                assert!((st.level_population(cavity, 1) - 1.0).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn network_counts() {
    for (n, co, alt) in [(4usize, 2usize, 1usize), (6, 4, 2), (8, 6, 3)] {
        let lat = Lattice::Chain(n);
        let h = lat.heisenberg(Boundary::Periodic, 0.0).unwrap();
        let sch = |o| Schedule::new(o, n, Some(lat), Boundary::Periodic);
        assert_eq!(compile_filter_circuit(&h, &sch(Ordering::ColorOrdered), 0.1).unwrap().sn_count, co);
        assert_eq!(compile_filter_circuit(&h, &sch(Ordering::Alternating), 0.1).unwrap().sn_count, alt);
    }
}

#[test]
fn schedule_errors() {
    let lat = Lattice::Chain(4);
    let h = lat.heisenberg(Boundary::Periodic, 0.0).unwrap();
    let bad = [
        Schedule::new(Ordering::ColorOrdered, 0, Some(lat), Boundary::Periodic),
        Schedule::new(Ordering::ColorOrdered, 5, Some(lat), Boundary::Periodic),
        Schedule::new(Ordering::Alternating, 2, Some(lat), Boundary::Periodic),
        Schedule::new(Ordering::ColorOrdered, 1, Some(Lattice::Chain(6)), Boundary::Periodic),
        Schedule::new(Ordering::ColorOrdered, 1, Some(lat), Boundary::Periodic).with_reps(0),
    ];
    for s in bad {
        assert!(compile_filter_circuit(&h, &s, 0.1).is_err(), "{s:?}");
    }
    let odd = Lattice::Chain(5).heisenberg(Boundary::Open, 0.0).unwrap();
    assert!(compile_filter_circuit(
        &odd,
        &Schedule::new(Ordering::ColorOrdered, 5, Some(Lattice::Chain(5)), Boundary::Open),
        0.1
    )
    .is_err());
    assert!(compile_filter_circuit(&odd, &Schedule::single(Lattice::Chain(5), Boundary::Open), 0.1).is_ok());
}

#[test]
fn zero_alpha_single_oscillator_is_identity() {
    let lat = Lattice::Chain(4);
    let h = lat.heisenberg(Boundary::Periodic, -8.0).unwrap();
    let c = compile_filter_circuit(&h, &Schedule::single(lat, Boundary::Periodic), 0.0).unwrap();
    let u = circuit_unitary(&c, 3).unwrap();
    assert!(max_abs_diff(&u, &CMat::identity(48, 48)) < 1e-12);
    assert!(optimize(&c).is_empty());
}

#[test]
fn single_oscillator_matches_partition_exponentials() {
    let lat = Lattice::Chain(4);
    let h = lat.heisenberg(Boundary::Periodic, -8.0).unwrap();
    let alpha = 0.1;
    let d = 8;
    let sch = Schedule::single(lat, Boundary::Periodic);
    let c = compile_filter_circuit(&h, &sch, alpha).unwrap();
    let u = circuit_unitary(&c, d).unwrap();
    let col = sch.coloring(&h).unwrap();
    let p = mode_ops(d).unwrap().p;
    let mut want = CMat::identity(16 * d, 16 * d);
    for class in &col.partitions {
        let gen = h.partition_matrix(class).shifted(h.shift / 2.0).into_matrix();
        want = linalg::expm_skew(&(kron(&p, &gen) * (-I * 2.0 * alpha))).unwrap() * want;
    }
    assert!(max_abs_diff(&u, &want) < 1e-9);
}

#[test]
fn same_color_bonds_commute() {
    let lat = Lattice::Chain(4);
    let h = lat.heisenberg(Boundary::Periodic, 0.0).unwrap();
    let mut swapped = h.clone();
    swapped.edges.swap(0, 1);
    swapped.edges.swap(2, 3);
    let sch = Schedule::single(lat, Boundary::Periodic);
    let u1 = circuit_unitary(&compile_filter_circuit(&h, &sch, 0.3).unwrap(), 6).unwrap();
    let u2 = circuit_unitary(&compile_filter_circuit(&swapped, &sch, 0.3).unwrap(), 6).unwrap();
    assert!(max_abs_diff(&u1, &u2) < 1e-10);
}

#[test]
fn ring_schedules_match_oracle() {
    let chain = Lattice::Chain(4);
    for (lat, bc, ord, d) in [
        (chain, Boundary::Periodic, Ordering::ColorOrdered, 4),
        (chain, Boundary::Periodic, Ordering::Alternating, 4),
        (chain, Boundary::Open, Ordering::ColorOrdered, 4),
        (chain, Boundary::Open, Ordering::Alternating, 4),
        (Lattice::Grid(2, 2), Boundary::Open, Ordering::ColorOrdered, 4),
    ] {
        let h = lat.heisenberg(bc, -6.0).unwrap();
        let sch = Schedule::new(ord, lat.n_sites(), Some(lat), bc);
        let dev = compiled_vs_oracle(&h, &sch, 0.3, d);
        assert!(dev < 1e-10, "{lat:?} {bc:?} {ord:?}: {dev}");
    }
}

#[test]
fn staggered_and_repeated_schedules_match_oracle() {
    let lat = Lattice::Chain(4);
    let h = lat.hamiltonian(Boundary::Periodic, (0.5, 1.0, -0.7), 1.0).unwrap();
    for sch in [
        Schedule::new(Ordering::ColorOrdered, 2, Some(lat), Boundary::Periodic),
        Schedule::new(Ordering::ColorOrdered, 3, None, Boundary::Open),
        Schedule::new(Ordering::ColorOrdered, 4, Some(lat), Boundary::Periodic).with_reps(2),
    ] {
        let dev = compiled_vs_oracle(&h, &sch, 0.25, 4);
        assert!(dev < 1e-10, "{sch:?}: {dev}");
    }
}

#[test]
fn alternating_interleaves_colors() {
    let lat = Lattice::Chain(4);
    let h = lat.heisenberg(Boundary::Periodic, 0.0).unwrap();
    let plan = plan_schedule(&h, &Schedule::new(Ordering::Alternating, 4, Some(lat), Boundary::Periodic), 0.1).unwrap();
    let first: Vec<(usize, usize)> = plan
        .steps
        .iter()
        .filter_map(|s| match *s {
            Step::Displace { oscillator, color, .. } => Some((oscillator, color)),
            _ => None,
        })
        .take(4)
        .collect();
    // step 0: even cavities take A first, then odd cavities take B
    assert_eq!(first, [(0, 0), (2, 0), (1, 1), (3, 1)]);
}

#[test]
fn duration_proxy_scales_with_oscillator_count() {
    let lat = Lattice::Chain(4);
    let h = lat.heisenberg(Boundary::Periodic, -8.0).unwrap();
    let one = compile_filter_circuit(&h, &Schedule::single(lat, Boundary::Periodic), 0.1).unwrap().stats();
    let four = compile_filter_circuit(&h, &Schedule::new(Ordering::ColorOrdered, 4, Some(lat), Boundary::Periodic), 0.1)
        .unwrap()
        .stats();
    assert!((one.duration_proxy / four.duration_proxy - 2.0).abs() < 1e-12);
    assert_eq!(four.sn_count, 2);
    assert_eq!(compiler::circuit_stats(&Circuit::new(4, 1)).duration_proxy, 0.0);
}

#[test]
fn parity_gadget_sign_conventions() {
    // R(π/2) is the Fourier gate used inside every gadget
    let f = Gate::F { mode: 0 }.local_unitary(6).unwrap();
    let r = Gate::R { mode: 0, theta: FRAC_PI_2 }.local_unitary(6).unwrap();
    assert!(max_abs_diff(&f, &r) < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tracker_matches_tau(half in 1usize..6, p in 0usize..12) {
        let n = 2 * half;
        let mut t = PermutationTracker::chain(n);
        for _ in 0..p {
            t.advance().unwrap();
        }
        for j in 0..n {
            prop_assert_eq!(t.cavity(j), tau(p, j, n));
            prop_assert_eq!(t.oscillator_at(tau(p, j, n)), Some(j));
        }
    }

    #[test]
    fn every_schedule_covers_every_bond(half in 1usize..5, m in 1usize..9, alt in any::<bool>(), periodic in any::<bool>()) {
        let n = 2 * half;
        let bc = if periodic { Boundary::Periodic } else { Boundary::Open };
        let lat = Lattice::Chain(n);
        let h = lat.heisenberg(bc, -1.0).unwrap();
        let m = m.min(n);
        let ord = if alt && m == n { Ordering::Alternating } else { Ordering::ColorOrdered };
        // plan_schedule runs its own coverage check
        let plan = plan_schedule(&h, &Schedule::new(ord, m, Some(lat), bc), 0.1).unwrap();
        let c = plan.emit(&h).unwrap();
        prop_assert_eq!(c.n_modes, m);
        let budget = c.oscillator_displacements();
        let max = budget.iter().cloned().fold(0.0, f64::max);
        let min = budget.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assert!((max - min).abs() < 1e-12);
    }
}
