use std::f64::consts::{FRAC_PI_2, PI};

use fock_core::linalg::{self, kron, max_abs_diff, max_abs_diff_up_to_phase, CMat, C64, I};
use fock_core::{coherent_state, mode_ops, Exec, HybridRegister, Pauli, StateVector};
use gates::{
    bosonic_swap, circuit_unitary, lower_native, native_conditional_displacement, optimize, zz_displacement, Circuit,
    Connectivity, Gate, GateRecord, Program, SimOptions,
};
use proptest::prelude::*;

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn unitary(n_qubits: usize, n_modes: usize, gates: Vec<Gate>, d: usize) -> CMat {
    circuit_unitary(&Circuit::from_gates(n_qubits, n_modes, gates).unwrap(), d).unwrap()
}

fn run(n_qubits: usize, n_modes: usize, gates: Vec<Gate>, d: usize, start: StateVector) -> StateVector {
    let c = Circuit::from_gates(n_qubits, n_modes, gates).unwrap();
    let prog = Program::new(&c, d, SimOptions::default()).unwrap();
    let mut st = start;
    prog.run(&mut st).unwrap();
    st
}

/// Direct `exp(−2iβ P_string ⊗ p)` with the mode as the most significant factor.
fn direct_kick(qubit_op: &CMat, d: usize, beta: f64) -> CMat {
    let ops = mode_ops(d).unwrap();
    linalg::expm_skew(&(kron(&ops.p, qubit_op) * (-I * 2.0 * beta))).unwrap()
}

fn zz() -> CMat {
    kron(&Pauli::Z.matrix(), &Pauli::Z.matrix())
}

#[test]
fn mode_rotation_pi_is_parity() {
    let u = unitary(0, 1, vec![Gate::R { mode: 0, theta: PI }], 3);
    let want = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![re(1.0), re(-1.0), re(1.0)]));
    assert!(max_abs_diff(&u, &want) < 1e-15);
}

#[test]
fn displacement_moves_x() {
    let d = 40;
    let reg = HybridRegister::new(0, 1, d).unwrap();
    let st = run(0, 1, vec![Gate::displacement(0, 1.0)], d, StateVector::basis(reg, 0).unwrap());
    let v = nalgebra::DVector::from_column_slice(st.amplitudes());
    let x = (v.adjoint() * mode_ops(d).unwrap().x * &v)[(0, 0)];
    assert!((x.re - 1.0).abs() < 1e-8);
}

#[test]
fn conditional_displacement_branches() {
    let d = 30;
    let alpha = 0.7;
    let reg = HybridRegister::new(1, 1, d).unwrap();
    for (q, sign) in [(0usize, 1.0), (1, -1.0)] {
        let st = run(1, 1, vec![Gate::conditional_displacement(0, 0, alpha)], d, StateVector::basis(reg, q).unwrap());
        let coh = coherent_state(d, re(sign * alpha)).unwrap();
        for (n, c) in coh.iter().enumerate() {
            assert!((st.amplitudes()[q + 2 * n] - c).norm() < 1e-10);
            assert!(st.amplitudes()[(1 - q) + 2 * n].norm() < 1e-15);
        }
    }
}

#[test]
fn fourier_squared_is_parity() {
    let d = 9;
    let u = unitary(0, 1, vec![Gate::F { mode: 0 }, Gate::F { mode: 0 }], d);
    let parity = CMat::from_diagonal(&nalgebra::DVector::from_fn(d, |n, _| re(if n % 2 == 0 { 1.0 } else { -1.0 })));
    assert!(max_abs_diff(&u, &parity) < 1e-14);
}

#[test]
fn controlled_parity_rotates_quadratures() {
    let d = 12;
    let ops = mode_ops(d).unwrap();
    let p = Gate::P { mode: 0, qubit: 0 }.local_unitary(d).unwrap();
    let id2 = CMat::identity(2, 2);
    let x = kron(&ops.x, &id2);
    let conj = p.adjoint() * x * &p;
    assert!(max_abs_diff(&conj, &kron(&ops.p, &Pauli::Z.matrix())) < 1e-14);
    let pq = kron(&ops.p, &id2);
    let conj = p.adjoint() * pq * &p;
    assert!(max_abs_diff(&conj, &(kron(&ops.x, &Pauli::Z.matrix()) * re(-1.0))) < 1e-14);
}

#[test]
fn y_rotation_makes_plus_state() {
    let reg = HybridRegister::qubits_only(1);
    let st = run(1, 0, vec![Gate::rotation(0, [0.0, 1.0, 0.0], FRAC_PI_2)], 2, StateVector::basis(reg, 0).unwrap());
    let s = 0.5f64.sqrt();
    assert!((st.amplitudes()[0] - re(s)).norm() < 1e-15);
    assert!((st.amplitudes()[1] - re(s)).norm() < 1e-15);
}

#[test]
fn swap_moves_a_photon() {
    let d = 4;
    let reg = HybridRegister::new(0, 2, d).unwrap();
    let st = run(0, 2, bosonic_swap(0, 1).unwrap(), d, StateVector::basis(reg, 1).unwrap());
    assert!((st.amplitudes()[d].norm() - 1.0).abs() < 1e-14);
}

#[test]
fn swap_conjugates_ladders() {
    let d = 6;
    let u = unitary(0, 2, bosonic_swap(0, 1).unwrap(), d);
    let ops = mode_ops(d).unwrap();
    let id = CMat::identity(d, d);
    let a0 = kron(&id, &ops.a);
    let a1 = kron(&ops.a, &id);
    assert!(max_abs_diff(&(u.adjoint() * &a0 * &u), &a1) < 1e-10);
    assert!(max_abs_diff(&(u.adjoint() * &a1 * &u), &a0) < 1e-10);
    assert!(linalg::unitarity_error(&u) < 1e-12);
}

#[test]
fn swap_is_an_involution() {
    let d = 5;
    let mut gates = bosonic_swap(0, 1).unwrap();
    gates.extend(bosonic_swap(0, 1).unwrap());
    let u = unitary(0, 2, gates, d);
    assert!(max_abs_diff(&u, &CMat::identity(d * d, d * d)) < 1e-12);
    assert!(bosonic_swap(1, 1).is_err());
}

#[test]
fn native_conversion_matches_direct() {
    let d = 10;
    let alpha = 0.3;
    let conn = Connectivity::default_layout(2, 2);
    // D^{(0)}_{Z_1}: mode 0 driven by qubit 1, whose native cavity is mode 1
    let gates = native_conditional_displacement(0, 1, alpha, &conn).unwrap();
    assert_eq!(gates.iter().filter(|g| matches!(g, Gate::DZ { .. })).count(), 1);
    assert_eq!(gates.iter().filter(|g| matches!(g, Gate::BS { .. })).count(), 2);
    assert_eq!(gates.iter().filter(|g| matches!(g, Gate::R { .. })).count(), 4);
    assert!(matches!(gates[3], Gate::DZ { mode: 1, qubit: 1, .. }));
    let lowered = unitary(2, 2, gates, d);
    let logical = unitary(2, 2, vec![Gate::conditional_displacement(0, 1, alpha)], d);
    assert!(max_abs_diff(&lowered, &logical) < 1e-10);

    let same = native_conditional_displacement(1, 1, alpha, &conn).unwrap();
    assert_eq!(same, vec![Gate::conditional_displacement(1, 1, alpha)]);
}

#[test]
fn native_conversion_counts_each_hop() {
    let conn = Connectivity::default_layout(3, 3);
    let gates = native_conditional_displacement(0, 2, 0.1, &conn).unwrap();
    assert_eq!(gates.iter().filter(|g| matches!(g, Gate::BS { .. })).count(), 4);
    let no_cavity = Connectivity::default_layout(3, 2);
    assert!(native_conditional_displacement(0, 2, 0.1, &no_cavity).is_err());
}

#[test]
fn lowering_preserves_circuits() {
    let d = 4;
    let mut c = Circuit::new(3, 3);
    c.extend([
        Gate::conditional_displacement(2, 0, 0.2),
        Gate::P { mode: 0, qubit: 2 },
        Gate::BS { j: 0, k: 2, theta: 0.4, phi: 0.1 },
        Gate::RZ { mode: 1, qubit: 0, theta: 0.3 },
    ])
    .unwrap();
    let conn = Connectivity::default_layout(3, 3);
    let low = lower_native(&c, &conn).unwrap();
    for g in low.gates() {
        match *g {
            Gate::RZ { mode, qubit, .. } | Gate::P { mode, qubit } | Gate::DZ { mode, qubit, .. } => {
                assert!(conn.is_native(mode, qubit))
            }
            Gate::BS { j, k, .. } => assert!(conn.adjacent(j, k)),
            _ => {}
        }
    }
    // compare on a low-photon input where truncation is irrelevant
    let reg = HybridRegister::new(3, 3, d).unwrap();
    let start = StateVector::basis(reg, 5).unwrap();
    let a = {
        let mut s = start.clone();
        Program::new(&c, d, SimOptions { tail_tolerance: 1.0, exec: Exec::Sequential }).unwrap().run(&mut s).unwrap();
        s
    };
    let b = {
        let mut s = start;
        Program::new(&low, d, SimOptions { tail_tolerance: 1.0, exec: Exec::Sequential }).unwrap().run(&mut s).unwrap();
        s
    };
    let dev = a.amplitudes().iter().zip(b.amplitudes()).fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
    assert!(dev < 1e-10, "{dev}");
}

#[test]
fn zz_gadget_is_an_ising_kick() {
    let d = 24;
    for beta in [0.2, -0.45, 1.0] {
        let u = unitary(2, 1, zz_displacement(0, 0, 1, beta), d);
        let want = direct_kick(&zz(), d, beta);
        assert!(max_abs_diff(&u, &want) < 1e-9, "beta={beta}");
    }
}

#[test]
fn literal_parity_sandwich_gives_x_kick() {
    // P† D_Z P without the Fourier rotation couples to x, not p
    let d = 24;
    let beta = 0.3;
    let gates = vec![
        Gate::P { mode: 0, qubit: 0 },
        Gate::conditional_displacement(0, 1, beta),
        Gate::RZ { mode: 0, qubit: 0, theta: -FRAC_PI_2 },
    ];
    let u = unitary(2, 1, gates, d);
    let ops = mode_ops(d).unwrap();
    let x_kick = linalg::expm_skew(&(kron(&ops.x, &zz()) * (I * 2.0 * beta))).unwrap();
    assert!(max_abs_diff(&u, &x_kick) < 1e-9);
    assert!(max_abs_diff(&u, &direct_kick(&zz(), d, beta)) > 1e-2);
}

#[test]
fn basis_change_sandwiches() {
    let v = Gate::rotation(0, [0.0, 1.0, 0.0], -FRAC_PI_2).local_unitary(2).unwrap();
    let w = Gate::rotation(0, [1.0, 0.0, 0.0], FRAC_PI_2).local_unitary(2).unwrap();
    let z = Pauli::Z.matrix();
    assert!(max_abs_diff(&(v.adjoint() * &z * &v), &Pauli::X.matrix()) < 1e-15);
    assert!(max_abs_diff(&(w.adjoint() * &z * &w), &Pauli::Y.matrix()) < 1e-15);
}

#[test]
fn geometric_phase_in_strict_mode() {
    let d = 40;
    let (x, y) = (0.4, -0.3);
    let split = unitary(0, 1, vec![Gate::displacement(0, x), Gate::D { mode: 0, alpha: C64::new(0.0, y) }], d);
    let joint = unitary(0, 1, vec![Gate::D { mode: 0, alpha: C64::new(x, y) }], d);
    let block = |m: &CMat| m.view((0, 0), (8, 8)).clone_owned();
    // D(iy) D(x) = e^{ixy} D(x + iy)
    let phased = block(&split) * C64::from_polar(1.0, -x * y);
    assert!(max_abs_diff(&block(&joint), &phased) < 1e-10);
    assert!(max_abs_diff(&block(&joint), &block(&split)) > 1e-3);
    assert!(max_abs_diff_up_to_phase(&block(&joint), &block(&split)) < 1e-10);
}

#[test]
fn zero_alpha_gadget_collapses() {
    let mut gates = Vec::new();
    gates.extend([Gate::rotation(0, [0.0, 1.0, 0.0], -FRAC_PI_2), Gate::rotation(1, [0.0, 1.0, 0.0], -FRAC_PI_2)]);
    gates.extend(zz_displacement(0, 0, 1, 0.0));
    gates.extend([Gate::rotation(0, [0.0, 1.0, 0.0], FRAC_PI_2), Gate::rotation(1, [0.0, 1.0, 0.0], FRAC_PI_2)]);
    let c = Circuit::from_gates(2, 1, gates).unwrap();
    assert!(optimize(&c).is_empty());
}

#[test]
fn json_round_trip_and_rejections() {
    let mut c = Circuit::new(2, 2);
    c.extend([
        Gate::R { mode: 0, theta: 0.1 },
        Gate::F { mode: 1 },
        Gate::D { mode: 0, alpha: C64::new(0.1, -0.2) },
        Gate::BS { j: 0, k: 1, theta: PI, phi: 0.25 },
        Gate::rotation(1, [1.0, 2.0, 2.0], 0.3),
        Gate::RZ { mode: 1, qubit: 0, theta: -0.7 },
        Gate::P { mode: 0, qubit: 1 },
        Gate::conditional_displacement(1, 1, 0.123_456_789_012_345_68),
    ])
    .unwrap();
    c.sn_count = 3;
    let s = c.to_json().unwrap();
    let back = Circuit::from_json(&s).unwrap();
    assert_eq!(back, c);
    let kinds: Vec<String> = serde_json::from_str::<serde_json::Value>(&s).unwrap()["gates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["kind"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(kinds, ["R", "F", "D", "BS", "Rm", "RZ", "P", "DZ"]);

    let cx = r#"{"n_qubits":2,"n_modes":0,"gates":[{"kind":"CX","operands":[0,1],"params":[]}]}"#;
    assert!(Circuit::from_json(cx).is_err());
    let extra = r#"{"kind":"R","operands":[0],"params":[0.1],"label":"x"}"#;
    assert!(serde_json::from_str::<GateRecord>(extra).is_err());
    let out_of_range = r#"{"n_qubits":1,"n_modes":1,"gates":[{"kind":"DZ","operands":[0,3],"params":[0.1,0]}]}"#;
    assert!(Circuit::from_json(out_of_range).is_err());
}

#[test]
fn push_rejects_out_of_range() {
    let mut c = Circuit::new(1, 1);
    assert!(c.push(Gate::R { mode: 1, theta: 0.0 }).is_err());
    assert!(c.push(Gate::BS { j: 0, k: 0, theta: 1.0, phi: 0.0 }).is_err());
}

#[test]
fn stats_track_oscillators_through_swaps() {
    let mut c = Circuit::new(1, 2);
    c.push(Gate::displacement(0, 0.5)).unwrap();
    c.extend(bosonic_swap(0, 1).unwrap()).unwrap();
    c.push(Gate::displacement(1, 0.25)).unwrap();
    let s = c.stats();
    assert_eq!(s.counts["R"], 2);
    assert_eq!(s.counts["BS"], 1);
    assert!((s.total_displacement - 0.75).abs() < 1e-15);
    assert!((s.duration_proxy - 0.75).abs() < 1e-15);
    assert_eq!(Circuit::new(2, 2).stats().n_gates, 0);
    assert_eq!(Circuit::new(2, 2).stats().total_displacement, 0.0);
}

fn arb_gate() -> impl Strategy<Value = Gate> {
    let ang = -3.5f64..3.5;
    prop_oneof![
        (0usize..2, ang.clone()).prop_map(|(mode, theta)| Gate::R { mode, theta }),
        (0usize..2).prop_map(|mode| Gate::F { mode }),
        (0usize..2, -0.3f64..0.3, -0.3f64..0.3).prop_map(|(mode, a, b)| Gate::D { mode, alpha: C64::new(a, b) }),
        (ang.clone(), -1.0f64..1.0).prop_map(|(theta, phi)| Gate::BS { j: 0, k: 1, theta, phi }),
        (0usize..2, ang.clone(), 0usize..3).prop_map(|(qubit, theta, ax)| {
            let mut axis = [0.0; 3];
            axis[ax] = 1.0;
            Gate::Rm { qubit, axis, theta }
        }),
        (0usize..2, 0usize..2, ang).prop_map(|(mode, qubit, theta)| Gate::RZ { mode, qubit, theta }),
        (0usize..2, 0usize..2).prop_map(|(mode, qubit)| Gate::P { mode, qubit }),
        (0usize..2, 0usize..2, -0.3f64..0.3).prop_map(|(mode, qubit, a)| Gate::conditional_displacement(mode, qubit, a)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn optimizer_preserves_action(gates in proptest::collection::vec(arb_gate(), 0..14), with_inverse in any::<bool>()) {
        let mut c = Circuit::from_gates(2, 2, gates).unwrap();
        if with_inverse {
            let inv = c.inverse();
            c.append(&inv).unwrap();
        }
        let opt = optimize(&c);
        prop_assert!(opt.len() <= c.len());
        let d = 16;
        let reg = HybridRegister::new(2, 2, d).unwrap();
        let opts = SimOptions { tail_tolerance: 1.0, exec: Exec::Sequential };
        for start in [0usize, 3, 1 + 4] {
            let mut a = StateVector::basis(reg, start).unwrap();
            let mut b = a.clone();
            Program::new(&c, d, opts).unwrap().run(&mut a).unwrap();
            Program::new(&opt, d, opts).unwrap().run(&mut b).unwrap();
            let dev = a.amplitudes().iter().zip(b.amplitudes()).fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
            prop_assert!(dev < 1e-6, "deviation {dev}");
        }
    }

    #[test]
    fn circuits_preserve_norm(gates in proptest::collection::vec(arb_gate(), 0..12)) {
        let c = Circuit::from_gates(2, 2, gates).unwrap();
        let d = 14;
        let reg = HybridRegister::new(2, 2, d).unwrap();
        let mut st = StateVector::basis(reg, 2).unwrap();
        let prog = Program::new(&c, d, SimOptions::default()).unwrap();
        if prog.run(&mut st).is_ok() {
            prop_assert!((st.norm_sqr() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn inverse_circuit_undoes(gates in proptest::collection::vec(arb_gate(), 0..10)) {
        let c = Circuit::from_gates(2, 2, gates).unwrap();
        let mut full = c.clone();
        full.append(&c.inverse()).unwrap();
        let d = 16;
        let reg = HybridRegister::new(2, 2, d).unwrap();
        let start = StateVector::basis(reg, 1).unwrap();
        let mut st = start.clone();
        Program::new(&full, d, SimOptions { tail_tolerance: 1.0, exec: Exec::Sequential }).unwrap().run(&mut st).unwrap();
        prop_assert!((st.inner(&start) - re(1.0)).norm() < 1e-8);
    }
}
