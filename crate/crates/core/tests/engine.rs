use proptest::prelude::*;
use qcov::cgc::compute_cgc;
use qcov::covariant::{derive, CovariantSetup};
use qcov::freealg::text::parse_relations;
use qcov::freealg::{FreeAlgebra, GradedPoly, Mono, RelationSet};
use qcov::reps::{HalfInt, Label};
use qcov::QScalar;
use std::sync::OnceLock;

fn plane() -> RelationSet {
    parse_relations(&FreeAlgebra::even(&["x", "y"]), "x*y = q*y*x").unwrap()
}

fn all_words(n: u16, d: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| (0..n).map(move |g| [w.clone(), vec![g]].concat()))
            .collect();
    }
    out
}

#[test]
fn plane_normal_words_up_to_degree_four() {
    let set = plane();
    let total: usize = (0..=4).map(|d| set.normal_words(d).len()).sum();
    assert_eq!(total, 15);
    // brute force: words avoiding the leading word x*y as a factor
    let x_y = [0u16, 1];
    let brute: usize = (0..=4)
        .map(|d| all_words(2, d).iter().filter(|w| !w.windows(2).any(|p| p == x_y)).count())
        .sum();
    assert_eq!(brute, 15);
}

fn podles() -> &'static RelationSet {
    static SET: OnceLock<RelationSet> = OnceLock::new();
    SET.get_or_init(|| derive(&Label::sl2(2)).unwrap().set)
}

fn random_poly(terms: &[(Vec<u16>, i64, i64)]) -> GradedPoly {
    let mut p = GradedPoly::zero();
    for (w, c, k) in terms {
        p.add_term(Mono::word(w.clone()), QScalar::from_int(*c) * QScalar::t_pow(*k));
    }
    p
}

fn terms(n: u16) -> impl Strategy<Value = Vec<(Vec<u16>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0..n, 0..4), -3i64..=3, -2i64..=2), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_form_is_idempotent_and_linear(a in terms(3), b in terms(3), c in -3i64..=3) {
        let set = podles();
        let (p, s) = (random_poly(&a), random_poly(&b));
        let nf = set.normal_form(&p);
        prop_assert_eq!(set.normal_form(&nf), nf.clone());
        let k = QScalar::from_int(c) * QScalar::q_pow(1);
        let lhs = set.normal_form(&p.scale(&k).add(&s));
        prop_assert_eq!(lhs, nf.scale(&k).add(&set.normal_form(&s)));
        prop_assert!(set.contains(&p.sub(&nf)));
    }
}

/// Perturb the first scalar coefficient of a rule by `q`.
fn perturbed(set: &RelationSet, rule: usize) -> Vec<GradedPoly> {
    let mut polys: Vec<GradedPoly> = set.rules().iter().map(|r| r.poly()).collect();
    let p = &polys[rule];
    let lead = p.leading().map(|(m, _)| m.clone());
    let mut out = GradedPoly::zero();
    let mut done = false;
    for (m, c) in &p.terms {
        let c = if !done && !m.word.is_empty() && Some(m) != lead.as_ref() {
            done = true;
            c * QScalar::q_pow(1)
        } else {
            c.clone()
        };
        out.add_term(m.clone(), c);
    }
    polys[rule] = out;
    polys
}

#[test]
fn perturbed_relation_sets_are_detected() {
    for label in [Label::sl2(1), Label::sl2(2), Label::osp(1, 0), Label::osp(2, 0)] {
        let d = derive(&label).unwrap();
        let setup = CovariantSetup::new(&label).unwrap();
        let mut tried = 0;
        for i in 0..d.set.rules().len() {
            let polys = perturbed(&d.set, i);
            if polys == d.set.rules().iter().map(|r| r.poly()).collect::<Vec<_>>() {
                continue;
            }
            let covariant = setup.verify_span_covariance(&polys).is_ok();
            let relations = polys
                .iter()
                .map(|p| qcov::freealg::Relation::new(p.clone(), "perturbed"))
                .collect();
            let consistent = RelationSet::new(d.set.alg.clone(), relations)
                .map(|s| s.check_consistency().passed())
                .unwrap_or(false);
            assert!(!(covariant && consistent), "{} rule {} perturbation undetected", label, i);
            tried += 1;
        }
        assert!(tried > 0, "{}", label);
    }
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Classical Clebsch-Gordan coefficient from the Racah formula, arguments doubled.
fn racah(j1: i64, m1: i64, j2: i64, m2: i64, j: i64, m: i64) -> f64 {
    if m1 + m2 != m {
        return 0.0;
    }
    let f = |x: i64| factorial(x / 2);
    let pre = ((j + 1) as f64 * f(j1 + j2 - j) * f(j1 - j2 + j) * f(-j1 + j2 + j) / f(j1 + j2 + j + 2))
        .sqrt()
        * (f(j + m) * f(j - m) * f(j1 - m1) * f(j1 + m1) * f(j2 - m2) * f(j2 + m2)).sqrt();
    let mut sum = 0.0;
    for k in 0..=(j1 + j2 + j) / 2 {
        let args = [
            k,
            (j1 + j2 - j) / 2 - k,
            (j1 - m1) / 2 - k,
            (j2 + m2) / 2 - k,
            (j - j2 + m1) / 2 + k,
            (j - j1 - m2) / 2 + k,
        ];
        if args.iter().any(|&a| a < 0) {
            continue;
        }
        let den: f64 = args.iter().map(|&a| factorial(a)).product();
        sum += if k % 2 == 0 { 1.0 } else { -1.0 } / den;
    }
    pre * sum
}

#[test]
fn sl2_cgc_classical_limit_matches_racah() {
    for tj1 in 0..=4i32 {
        for tj2 in 0..=4i32 {
            let t = compute_cgc(&Label::sl2(tj1), &Label::sl2(tj2)).unwrap();
            let mut j = (tj1 - tj2).abs();
            while j <= tj1 + tj2 {
                // blocks are fixed up to an overall sign
                let mut sign = 0.0;
                for m1 in (-tj1..=tj1).step_by(2) {
                    for m2 in (-tj2..=tj2).step_by(2) {
                        let m = m1 + m2;
                        if m.abs() > j {
                            continue;
                        }
                        let c = t.coeff(HalfInt(j), HalfInt(m), HalfInt(m1), HalfInt(m2));
                        let got = c.classical_limit().unwrap().eval_f64(1.0);
                        let want = racah(tj1 as i64, m1 as i64, tj2 as i64, m2 as i64, j as i64, m as i64);
                        if sign == 0.0 && want.abs() > 1e-9 {
                            sign = (got / want).signum();
                        }
                        assert!(
                            (got - sign * want).abs() < 1e-10,
                            "j1={} j2={} J={} m1={} m2={}: {} vs {}",
                            tj1, tj2, j, m1, m2, got, want
                        );
                    }
                }
                j += 2;
            }
        }
    }
}
