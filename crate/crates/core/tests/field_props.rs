//! Randomized field axioms for `QScalar`, with evaluation at a numeric `t` as an
//! independent check of every exact operation.

use proptest::prelude::*;
use qcov::error::FieldError;
use qcov::field::{parse_scalar, LaurentRat, Poly, QScalar};

fn radicands() -> Vec<LaurentRat> {
    vec![
        LaurentRat::one(),
        LaurentRat::from_int(2),
        LaurentRat::from_int(3),
        // [2] in q, written in t
        LaurentRat::from_poly(Poly::from_i64s(&[1, 0, 0, 0, 1])),
        LaurentRat::from_poly(Poly::from_i64s(&[1, 0, -1, 0, 1])),
        LaurentRat::from_poly(Poly::from_i64s(&[1, 0, 1, 0, 1])),
    ]
}

fn laurent() -> impl Strategy<Value = LaurentRat> {
    (
        prop::collection::vec(-3i64..=3, 1..4),
        prop::collection::vec(-2i64..=2, 0..3),
        -3i64..=3,
    )
        .prop_map(|(num, den_tail, shift)| {
            let mut den = vec![1i64];
            den.extend(den_tail);
            let n = Poly::from_i64s(&num);
            let d = Poly::from_i64s(&den);
            if d.is_zero() {
                LaurentRat::from_poly(n).mul(&LaurentRat::t_pow(shift))
            } else {
                LaurentRat::new(n, d).mul(&LaurentRat::t_pow(shift))
            }
        })
}

fn scalar() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((laurent(), 0usize..6), 1..3).prop_map(|terms| {
        let rads = radicands();
        terms.iter().fold(QScalar::zero(), |acc, (c, r)| {
            acc + QScalar::from_laurent(c.clone()) * QScalar::sqrt_of(&rads[*r])
        })
    })
}

const T: f64 = 1.37;

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-8 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert_eq!(&a + QScalar::zero(), a.clone());
        prop_assert_eq!(&a * QScalar::one(), a.clone());
        prop_assert!((&a - &b).add_ref(&b) == a);
        prop_assert!((&a + (-&a)).is_zero());
    }

    #[test]
    fn inverses(a in scalar()) {
        // sums over several radicands are outside the invertible fragment
        match a.num_terms() {
            0 => prop_assert_eq!(a.invert(), Err(FieldError::ZeroDivision)),
            1 => prop_assert!((&a * a.invert().unwrap()).is_one()),
            n => prop_assert_eq!(a.invert(), Err(FieldError::MultiTermInverse { terms: n })),
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar()) {
        let (x, y) = (a.eval_f64(T), b.eval_f64(T));
        prop_assert!(close((&a + &b).eval_f64(T), x + y));
        prop_assert!(close((&a * &b).eval_f64(T), x * y));
        if b.num_terms() == 1 && y.abs() > 1e-6 {
            prop_assert!(close(a.div(&b).unwrap().eval_f64(T), x / y));
        }
    }

    #[test]
    fn text_round_trip(a in scalar()) {
        let back = parse_scalar(&a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn super_brackets_match_numeric_definition() {
    for n in -4i64..=6 {
        let q = T * T;
        let expect = ((-1f64).powi(n as i32 + 1) * q.powf(n as f64 / 2.0) + q.powf(-(n as f64) / 2.0))
            / (q.powf(0.5) + q.powf(-0.5));
        assert!(close(QScalar::qint_super(n).eval_f64(T), expect), "[{}]", n);
    }
}
