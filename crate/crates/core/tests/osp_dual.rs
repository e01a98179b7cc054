use nalgebra::DMatrix;
use qcov::field::{kappa1, kappa2, parse_scalar, QScalar};
use qcov::osp_dual::*;
use qcov::reps::{AlgebraKind, UGen};
use qcov::ring::Ring;

/// Classical osp(1|2) spin-ell matrices of v± at q = 1, from `{v+, v-} = -H/4` with
/// `H e_m = m e_m`, split the same way as the quantum construction.
fn classical_v(ell: i32) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = (2 * ell + 1) as usize;
    let mut p = vec![0.0; n + 1];
    // p[i] pairs with weight m = ell - i + 1 .. ; p[0] is m = ell + 1
    for i in 1..=n {
        let m = ell - (i as i32 - 1);
        p[i] = -(m as f64) / 4.0 - p[i - 1];
    }
    let mut vp = DMatrix::zeros(n, n);
    let mut vm = DMatrix::zeros(n, n);
    for i in 1..n {
        let m = ell - (i as i32 - 1);
        let eps = if (ell - m) % 2 == 0 { -1.0 } else { 1.0 };
        let x = (eps * p[i]).sqrt();
        vp[(i - 1, i)] = x;
        vm[(i, i - 1)] = eps * x;
    }
    (vp, vm)
}

#[test]
fn classical_recursion_closes() {
    for ell in 0..=3 {
        let (vp, vm) = classical_v(ell);
        let anti = &vp * &vm + &vm * &vp;
        for i in 0..(2 * ell + 1) as usize {
            let m = ell - i as i32;
            assert!((anti[(i, i)] + m as f64 / 4.0).abs() < 1e-12);
        }
    }
}

#[test]
fn p_r_kernel_matches_classical_svd() {
    let report = solve_annihilated(&TwistedPrimitive::p_r(), 2, 0).unwrap();
    assert_eq!(report.kernel.len(), 1);
    for (g1, g3) in [(2.0, 3.0), (5.0, 0.5), (1.0, 1.0)] {
        let (vp, vm) = classical_v(2);
        let u = vp * (-f64::sqrt(g3)) + vm * f64::sqrt(g1);
        // left kernel of u is the right kernel of u^T
        let svd = u.transpose().svd(true, true);
        let v_t = svd.v_t.unwrap();
        let sv = &svd.singular_values;
        let (idx, smallest) = sv
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap();
        assert!(*smallest < 1e-10);
        assert_eq!(sv.iter().filter(|s| **s < 1e-10).count(), 1);
        let oracle: Vec<f64> = v_t.row(idx).iter().copied().collect();
        let ours: Vec<f64> = report.kernel[0]
            .iter()
            .map(|c| c.eval_classical(g1, g3).unwrap())
            .collect();
        let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let dot: f64 = oracle.iter().zip(&ours).map(|(a, b)| a * b).sum();
        let cos = dot / (norm(&oracle) * norm(&ours));
        assert!((cos.abs() - 1.0).abs() < 1e-10, "cos = {}", cos);
    }
}

#[test]
fn t2_duality_up_to_four_and_stable_at_six() {
    let r4 = verify_t2_duality(4).unwrap();
    assert_eq!(r4.words_checked, 341);
    let r6 = verify_t2_duality(6).unwrap();
    assert_eq!(r6.words_checked, 5461);
}

#[test]
fn t1_fixtures_reproduce_pairing() {
    for lambda in [0, 1] {
        let f = SuperCorepFixture::t1(lambda).unwrap();
        verify_fixture_duality(&f, 4, FROZEN_CONVENTION).unwrap();
    }
}

#[test]
fn unsigned_product_pairing_fails() {
    let f = SuperCorepFixture::t2().unwrap();
    assert!(verify_fixture_duality(&f, 2, KoszulConvention::Unsigned).is_err());
    let scan = convention_scan().unwrap();
    assert!(scan.iter().any(|(c, ok)| *c == FROZEN_CONVENTION && *ok));
    assert!(scan.iter().any(|(c, ok)| *c == KoszulConvention::Unsigned && !*ok));
}

#[test]
fn t2_k_and_v_plus_examples() {
    let pairing = LetterPairing::new(FROZEN_CONVENTION).unwrap();
    let t2 = SuperCorepFixture::t2().unwrap();
    let k = pairing.fixture(&[UGen::K], &t2);
    let diag: Vec<QScalar> = ["q", "q^(1/2)", "1", "q^(-1/2)", "q^(-1)"]
        .iter()
        .map(|s| parse_scalar(s).unwrap())
        .collect();
    for (i, d) in diag.iter().enumerate() {
        assert_eq!(k.get(i, i), d);
    }
    let vp = pairing.fixture(&[UGen::Vp], &t2);
    assert_eq!(vp, pairing_matrix(&[UGen::Vp], 2, 0).unwrap());
    // <v+, a alpha> = <K, a><v+, alpha> = q^(1/2) <v+, alpha>
    let one = pairing_matrix(&[UGen::Vp], 1, 0).unwrap();
    assert_eq!(vp.get(0, 1), &(kappa1() * QScalar::t_pow(1) * one.get(0, 1)));
    // <v+, kappa2 (a beta + q^-1 gamma b)> = kappa2 q^(1/2) <v+, beta>
    assert_eq!(vp.get(1, 2), &(kappa2() * QScalar::t_pow(1) * one.get(1, 2)));
}

#[test]
fn sign_rule_holds() {
    for (ell, lambda) in [(1, 0), (1, 1), (2, 0), (2, 1)] {
        assert_eq!(sign_rule_violation(ell, lambda, 4).unwrap(), None);
    }
}

#[test]
fn closure_premise_examples() {
    for u in [
        TwistedPrimitive::v_plus(),
        TwistedPrimitive::v_minus(),
        TwistedPrimitive::k_minus_k_inv(AlgebraKind::Osp),
        TwistedPrimitive::p_r(),
    ] {
        let r = check_subalgebra_closure_premise(&u).unwrap();
        assert!(r.premise_holds, "{}", r.element);
        assert_eq!(r.conclusion, "out of scope, premise verified");
    }
    let sl = check_subalgebra_closure_premise(&TwistedPrimitive::k_minus_k_inv(AlgebraKind::Sl2)).unwrap();
    assert!(sl.premise_holds);
    let ef = check_subalgebra_closure_premise(&TwistedPrimitive::e_f()).unwrap();
    assert!(!ef.premise_holds);
}

#[test]
fn annihilator_trivial_cases() {
    assert_eq!(solve_annihilated(&TwistedPrimitive::zero(), 2, 0).unwrap().kernel.len(), 5);
    let v = solve_annihilated(&TwistedPrimitive::v_plus(), 1, 0).unwrap();
    assert_eq!((v.rank, v.kernel.len()), (2, 1));
    let k = solve_annihilated(&TwistedPrimitive::k_minus_k_inv(AlgebraKind::Osp), 2, 0).unwrap();
    // K - K^-1 vanishes only on m = 0
    assert_eq!(k.kernel.len(), 1);
    assert!(k.kernel[0][2] == SymScalar::one());
}
