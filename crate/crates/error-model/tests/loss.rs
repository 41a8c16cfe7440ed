use error_model::*;
use filter::{completeness_check, exact_filter};
use fock_core::linalg::{CMat, C64};
use fock_core::{Exec, Pauli, QubitOperator};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn z1() -> QubitOperator {
    QubitOperator::single(1, 0, Pauli::Z)
}

fn ring4_shifted() -> QubitOperator {
    let mut h = QubitOperator::zeros(4);
    for (j, k) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            h = h.add(&QubitOperator::pauli_string(4, &[(j, p), (k, p)]));
        }
    }
    h.shifted(-8.0)
}

fn random_hermitian(seed: u64) -> QubitOperator {
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
    };
    let a = CMat::from_fn(4, 4, |_, _| C64::new(next(), next()));
    let h = QubitOperator::new(2, (&a + a.adjoint()) * c(0.5)).unwrap();
    h.scale(1.0 / h.spectral_norm())
}

#[test]
fn kraus_examples() {
    let (k0, k1) = kraus_pair(&LossChannel::new(0.0, 1.0, 6).unwrap());
    assert!((k0 - CMat::identity(6, 6)).iter().all(|z| z.norm() < 1e-15));
    assert!(k1.iter().all(|z| z.norm() == 0.0));

    let ch = LossChannel::new(1.0, 0.01, 10).unwrap();
    let (k0, k1) = kraus_pair(&ch);
    let vac = CMat::from_fn(10, 1, |r, _| c(if r == 0 { 1.0 } else { 0.0 }));
    assert!(((&k0 * &vac) - &vac).iter().all(|z| z.norm() < 1e-15));
    assert!((&k1 * &vac).iter().all(|z| z.norm() < 1e-15));
    let dev = ch.completeness_deviation();
    assert!(dev <= 5e-3 && dev > 1e-5, "{dev}");

    assert!(matches!(LossChannel::new(1.0, 0.02, 10), Err(ErrorModelError::Validity(_))));
    assert!(LossChannel::new(-1.0, 0.01, 10).is_err());
}

#[test]
fn no_jump_amplitude() {
    assert_eq!(no_jump_rescaling(0.3, 0.0, 5.0), 0.3);
    assert!((no_jump_rescaling(0.3, 2f64.ln(), 2.0) - 0.15).abs() < 1e-15);
    assert_eq!(no_jump_alpha_exact(0.3, 0.0, 1.0), 0.3);
    // series and closed form meet
    let (a, b) = (no_jump_alpha_exact(1.0, 1e-4 - 1e-13, 1.0), no_jump_alpha_exact(1.0, 1e-4 + 1e-13, 1.0));
    assert!((a - b).abs() < 1e-10);
}

#[test]
fn lossless_no_jump_branch_is_the_filter() {
    let h = random_hermitian(3);
    let f = no_jump_filter(&h, 0.8, 0.0, 1.0, 7, 30).unwrap();
    assert!(f.max_abs_diff(&exact_filter(&h, 0.8).unwrap()) < 1e-10);
}

#[test]
fn no_jump_branch_is_gaussian_with_shrunk_alpha() {
    let h = z1();
    let (alpha, kt) = (1.0, 0.2);
    let exact_alpha = no_jump_alpha_exact(alpha, kt, 1.0);
    let coarse = no_jump_filter(&h, alpha, kt, 1.0, 50, 24).unwrap();
    let fine = no_jump_filter(&h, alpha, kt, 1.0, 400, 24).unwrap();
    let target = exact_filter(&h, exact_alpha).unwrap();
    let (e_coarse, e_fine) = (coarse.max_abs_diff(&target), fine.max_abs_diff(&target));
    assert!(e_fine < e_coarse && e_fine < 2e-4, "{e_coarse} {e_fine}");

    // the whole-displacement estimate α e^{−κT/2} agrees only to first order
    let rescaled = exact_filter(&h, no_jump_rescaling(alpha, kt, 1.0)).unwrap();
    let gap = fine.max_abs_diff(&rescaled);
    assert!(gap > 10.0 * e_fine && gap < kt);
    let small = no_jump_filter(&h, alpha, kt / 10.0, 1.0, 400, 24).unwrap();
    let gap_small = small.max_abs_diff(&exact_filter(&h, no_jump_rescaling(alpha, kt / 10.0, 1.0)).unwrap());
    assert!(gap_small < gap / 5.0);
}

#[test]
fn jump_examples() {
    let s = 0.5f64.sqrt();
    let psi = [c(s), c(s)];
    let r = single_jump_trajectory(&z1(), 1.0, 0.0, &psi, None).unwrap();
    assert!(r.trajectory.iter().all(|z| z.norm() < 1e-14));

    let r = single_jump_trajectory(&z1(), 1.0, 0.5, &psi, None).unwrap();
    assert!(r.deviation < 1e-8);
    let (w0, w1) = (r.weights[0].1, r.weights[1].1);
    assert!((w0.norm() - w1.norm()).abs() < 1e-14);
    assert!((w0.re + w1.re).abs() < 1e-14 && (w0.re.abs() - 0.5 * s).abs() < 1e-14);

    // eigenstate: the vacuum outcome carries α̃E′ e^{−α²E′²/2}
    let h = z1().shifted(0.5);
    let r = single_jump_trajectory(&h, 0.8, 0.25, &[c(1.0), c(0.0)], None).unwrap();
    let e: f64 = 0.5;
    let want = 0.25 * 0.8 * e * (-0.5 * 0.64 * e * e).exp();
    let vac = r.vacuum_component();
    assert!((vac[0].re - want).abs() < 1e-10 && vac[1].norm() < 1e-14);

    assert!(single_jump_trajectory(&z1(), 1.0, 1.5, &psi, None).is_err());
}

#[test]
fn jump_matches_prediction_on_ring() {
    let h = ring4_shifted();
    let psi: Vec<C64> = (0..16).map(|k| C64::new(((k * 7 % 5) as f64) - 2.0, (k % 3) as f64)).collect();
    let n = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<C64> = psi.into_iter().map(|z| z / n).collect();
    for alpha in [0.1, 0.3] {
        for f in [0.25, 1.0] {
            let r = single_jump_trajectory(&h, alpha, f, &psi, None).unwrap();
            assert!(r.deviation < 1e-8, "alpha {alpha} f {f}: {}", r.deviation);
        }
    }
}

#[test]
fn short_cutoff_is_reported() {
    let err = single_jump_trajectory(&z1(), 3.0, 0.5, &[c(1.0), c(0.0)], Some(6)).unwrap_err();
    assert!(err.is_cutoff());
}

#[test]
fn orb_examples() {
    let r = orb_identity(&z1(), 0.0, 10, 100, 1, Exec::default()).unwrap();
    assert_eq!(r.deviation, 0.0);

    for h in [z1(), random_hermitian(8)] {
        let det = orb_deterministic(&h, 1.0, 40).unwrap();
        assert!((det - completeness_check(&h, 1.0, 40).unwrap()).abs() < 1e-12);
    }

    let r = orb_identity(&z1(), 0.5, 40, 10_000, 2024, Exec::default()).unwrap();
    assert!(r.within(3.0), "{} vs SE {}", r.deviation, r.standard_error);
    let r = orb_identity(&random_hermitian(5), 0.5, 40, 10_000, 2024, Exec::default()).unwrap();
    assert!(r.within(3.0), "{} vs SE {}", r.deviation, r.standard_error);
    assert!(r.standard_error > 0.0);
}

#[test]
fn orb_is_reproducible_across_executors() {
    let h = random_hermitian(6);
    let a = orb_identity(&h, 0.7, 20, 1000, 9, Exec::Sequential).unwrap();
    let b = orb_identity(&h, 0.7, 20, 1000, 9, Exec::Parallel).unwrap();
    assert_eq!(a.estimate.matrix(), b.estimate.matrix());
    let c = orb_identity(&h, 0.7, 20, 1000, 10, Exec::Sequential).unwrap();
    assert_ne!(a.estimate.matrix(), c.estimate.matrix());
}

#[test]
fn depolarizing_hook_is_off_by_default() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut psi = vec![c(0.6), c(0.0), c(0.8), c(0.0)];
    let before = psi.clone();
    assert_eq!(DepolarizingHook::default().apply(&mut psi, 1, &mut rng), None);
    assert_eq!(psi, before);
    let p = DepolarizingHook { probability: 1.0 }.apply(&mut psi, 1, &mut rng);
    assert!(p.is_some());
    assert!((psi.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-15);
}

proptest! {
    #[test]
    fn kraus_defect_is_second_order(rate in 1e-6f64..1e-2, d in 3usize..12) {
        let dt = rate.min(0.1 / (d - 1) as f64);
        let ch = LossChannel::new(1.0, dt, d).unwrap();
        // diagonal defect e^{−rn} + rn − 1 ≤ (rn)²/2
        let rn = dt * (d - 2) as f64;
        prop_assert!(ch.completeness_deviation() <= 0.5 * rn * rn + 1e-15);
    }

    #[test]
    fn no_jump_alpha_between_rescaled_form_and_alpha(alpha in 0.0f64..2.0, kappa in 0.0f64..5.0, t in 0.0f64..3.0) {
        let exact = no_jump_alpha_exact(alpha, kappa, t);
        prop_assert!(exact <= alpha * (1.0 + 1e-12));
        prop_assert!(exact >= no_jump_rescaling(alpha, kappa, t) * (1.0 - 1e-12));
    }

    #[test]
    fn jump_trajectory_matches_prediction(alpha in 0.0f64..0.6, f in 0.0f64..=1.0, theta in 0.0f64..std::f64::consts::PI) {
        let psi = [c(theta.cos()), C64::new(0.0, theta.sin())];
        let r = single_jump_trajectory(&z1(), alpha, f, &psi, None).unwrap();
        prop_assert!(r.deviation < 1e-8, "{}", r.deviation);
    }
}
