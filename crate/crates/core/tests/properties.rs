use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use qutrit_qec::code::{single_qutrit_errors, KL_TOL};
use qutrit_qec::oracle::pair_errors;
use qutrit_qec::stabgen::{solve, PairStatus};
use qutrit_qec::statevec::ALGEBRA_TOL;
use qutrit_qec::{
    build_proposed_code, build_steane_ternary, equal_up_to_global_phase, Chrestenson, Exec,
    PauliWord, PhaseExp, QutritOp, StateVec,
};

fn op() -> impl Strategy<Value = QutritOp> {
    (0..3i64, 0..3i64).prop_map(|(x, z)| QutritOp::new(x, z))
}

fn word(n: usize) -> impl Strategy<Value = PauliWord> {
    (prop::collection::vec(op(), n), 0..3i64)
        .prop_map(|(ops, k)| PauliWord::new(ops).with_phase(PhaseExp::new(k)))
}

fn word_pair() -> impl Strategy<Value = (PauliWord, PauliWord)> {
    (1..=3usize).prop_flat_map(|n| (word(n), word(n)))
}

fn state(n: usize) -> impl Strategy<Value = StateVec> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 3usize.pow(n as u32)).prop_filter_map(
        "nonzero",
        move |v| {
            let amps: Vec<Complex64> = v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
            let s = StateVec::from_amplitudes(n, amps).unwrap();
            (s.norm_sqr() > 1e-3).then(|| s.normalized())
        },
    )
}

fn close(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> bool {
    (a - b).iter().all(|z| z.norm() < ALGEBRA_TOL)
}

proptest! {
    #[test]
    fn multiply_matches_matrices((a, b) in word_pair()) {
        let ab = a.multiply(&b).unwrap();
        let lhs = ab.to_matrix().unwrap();
        let rhs = a.to_matrix().unwrap() * b.to_matrix().unwrap();
        prop_assert!(close(&lhs, &rhs));
    }

    #[test]
    fn commutation_phase_matches_matrices((a, b) in word_pair()) {
        let c = a.commutation_phase(&b).unwrap();
        let ab = a.to_matrix().unwrap() * b.to_matrix().unwrap();
        let ba = b.to_matrix().unwrap() * a.to_matrix().unwrap();
        prop_assert!(close(&ab, &(ba * c.to_complex())));
    }

    #[test]
    fn commutation_antisymmetric((a, b) in word_pair()) {
        prop_assert_eq!(a.commutation_phase(&b).unwrap(), -b.commutation_phase(&a).unwrap());
    }

    #[test]
    fn cube_is_scalar(o in op()) {
        let w = PauliWord::new(vec![o]);
        prop_assert!(w.pow(3).is_identity());
    }

    #[test]
    fn inverse_cancels(w in (1..=7usize).prop_flat_map(word)) {
        let p = w.multiply(&w.inverse()).unwrap();
        prop_assert!(p.is_identity());
        prop_assert!(p.phase().is_one());
    }

    #[test]
    fn display_round_trip(w in (1..=7usize).prop_flat_map(word)) {
        let back: PauliWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn apply_word_matches_matrix((w, s) in (1..=3usize).prop_flat_map(|n| (word(n), state(n)))) {
        let got = s.apply_word(&w).unwrap();
        let v = nalgebra::DVector::from_vec(s.amps().to_vec());
        let want = w.to_matrix().unwrap() * v;
        for (x, y) in got.amps().iter().zip(want.iter()) {
            prop_assert!((x - y).norm() < ALGEBRA_TOL);
        }
    }

    #[test]
    fn chrestenson_round_trip(s in state(2), q in 0..2usize) {
        let t = s
            .apply_chrestenson(q, Chrestenson::One).unwrap()
            .apply_chrestenson(q, Chrestenson::Two).unwrap();
        prop_assert!(t.max_abs_diff(&s) < ALGEBRA_TOL);
    }

    #[test]
    fn cplus_preserves_norm(s in state(3), c in 0..3usize, d in 1..3usize) {
        let t = s.apply_cplus(c, (c + d) % 3).unwrap();
        prop_assert!((t.norm_sqr() - s.norm_sqr()).abs() < ALGEBRA_TOL);
    }

    #[test]
    fn syndrome_paths_agree(k in 0..56usize, seed in any::<u64>(), steane in any::<bool>()) {
        let code = if steane { build_steane_ternary() } else { build_proposed_code() };
        let e = &single_qutrit_errors(7)[k];
        let psi = &code.random_logical_states(1, seed)[0];
        let sv = code.syndrome_statevector(&psi.apply_word(e).unwrap()).unwrap();
        prop_assert_eq!(sv, code.syndrome_symplectic(e).unwrap());
    }

    #[test]
    fn css_separation(x in prop::collection::vec(0..3u8, 7), z in prop::collection::vec(0..3u8, 7)) {
        let code = build_proposed_code();
        let sx = code.syndrome_symplectic(&PauliWord::from_x_powers(&x)).unwrap();
        let sz = code.syndrome_symplectic(&PauliWord::from_z_powers(&z)).unwrap();
        prop_assert!(sx.select(code.x_type_indices()).iter().all(|&k| k == 0));
        prop_assert!(sz.select(code.z_type_indices()).iter().all(|&k| k == 0));
    }

    #[test]
    fn disjoint_group_phase_errors_decompose(
        gi in 0..4usize, gj in 0..3usize, a in 1..=2u8, b in 1..=2u8,
    ) {
        let code = build_proposed_code();
        let (qi, qj) = (code.g1()[gi], code.g2()[gj]);
        let mut p = vec![0u8; 7];
        p[qi] = a;
        p[qj] = b;
        let both = code.syndrome_symplectic(&PauliWord::from_z_powers(&p)).unwrap();
        let ei = PauliWord::single(7, qi, QutritOp::new(0, a as i64));
        let ej = PauliWord::single(7, qj, QutritOp::new(0, b as i64));
        let si = code.syndrome_symplectic(&ei).unwrap();
        let sj = code.syndrome_symplectic(&ej).unwrap();
        let xs = code.x_type_indices();
        prop_assert_eq!(both.select(xs), vec![si.select(xs)[0], sj.select(xs)[1]]);
        prop_assert_eq!(si.select(xs)[1], 0);
        prop_assert_eq!(sj.select(xs)[0], 0);
    }

    #[test]
    fn global_phase_is_recovered(s in state(2), k in 0..3i64) {
        let c = PhaseExp::new(k);
        let m = equal_up_to_global_phase(&s, &s.scaled(c.to_complex()), 1e-10);
        prop_assert!(m.equal);
        prop_assert_eq!(m.omega_exp, Some(c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// A set passing the pair check lets the decoder undo every pair error.
    #[test]
    fn separable_pairs_are_corrected(i in 0..7usize, d in 1..7usize, seed in any::<u64>()) {
        let j = (i + d) % 7;
        let code = build_proposed_code();
        let Ok(sol) = solve(&code, (i, j), false, Exec::Sequential) else {
            return Ok(());
        };
        let (i, j) = sol.pair;
        let registered = code.with_bit_stabilizers(sol.set.words(), Some((i, j))).unwrap();
        let psi = &registered.random_logical_states(1, seed)[0];
        for e in pair_errors(7, i, j) {
            let out = registered.correct(&psi.apply_word(&e).unwrap()).unwrap();
            prop_assert!(equal_up_to_global_phase(psi, &out, KL_TOL).fidelity >= 1.0 - KL_TOL);
        }
    }
}

#[test]
fn pair_statuses_are_stable() {
    let code = build_proposed_code();
    let a = qutrit_qec::stabgen::pair_support_summary(&code, Exec::Sequential).unwrap();
    let b = qutrit_qec::stabgen::pair_support_summary(&code, Exec::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 21);
    assert_eq!(
        a.iter()
            .filter(|p| p.status == PairStatus::Unsupported)
            .count(),
        3
    );
}
