//! Oriented rewrite rules, normal forms and the two consistency checks
//! (centrality of parameter-bearing relations, overlap resolution).

use super::{FreeAlgebra, GradedPoly, Mono};
use crate::error::{Error, FieldError, Result};
use crate::linalg::{Echelon, SparseRow};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// A relation `poly = 0` with a free-form provenance tag (family, member).
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub poly: GradedPoly,
    pub tag: String,
}

impl Relation {
    pub fn new(poly: GradedPoly, tag: impl Into<String>) -> Self {
        Relation {
            poly,
            tag: tag.into(),
        }
    }
}

/// `lead -> rhs`, with `rhs` strictly smaller than `lead`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lead: Vec<u16>,
    pub rhs: GradedPoly,
    pub tag: String,
}

impl Rule {
    /// The relation `lead - rhs`.
    pub fn poly(&self) -> GradedPoly {
        GradedPoly::from_mono(Mono::word(self.lead.clone()), crate::QScalar::one()).sub(&self.rhs)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OverlapFailure {
    pub witness: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CentralityFailure {
    pub generator: String,
    pub relation: String,
    pub residue: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct ConsistencyReport {
    pub centrality_checked: usize,
    pub centrality_failures: Vec<CentralityFailure>,
    pub overlaps_checked: usize,
    pub overlap_failures: Vec<OverlapFailure>,
    /// Relations whose leading term carries a parameter and does not reduce to zero.
    pub unresolved: Vec<String>,
}

impl ConsistencyReport {
    pub fn centrality_ok(&self) -> bool {
        self.centrality_failures.is_empty()
    }

    pub fn overlaps_ok(&self) -> bool {
        self.overlap_failures.is_empty() && self.unresolved.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.centrality_ok() && self.overlaps_ok()
    }
}

/// Relations together with their interreduced rewrite system.
#[derive(Clone, Debug)]
pub struct RelationSet {
    pub alg: FreeAlgebra,
    pub relations: Vec<Relation>,
    rules: Vec<Rule>,
    /// Echelon rows whose pivot carries a parameter (cannot serve as word rules).
    residual: Vec<Relation>,
    index: HashMap<Vec<u16>, usize>,
    lead_lens: BTreeSet<usize>,
}

fn to_row(p: &GradedPoly) -> SparseRow<Mono> {
    p.terms.clone()
}

impl RelationSet {
    /// Orient the relations by fully reducing their span (pivot = leading monomial).
    pub fn new(alg: FreeAlgebra, relations: Vec<Relation>) -> Result<Self> {
        let mut ech: Echelon<Mono> = Echelon::new();
        let mut tags: HashMap<Mono, String> = HashMap::new();
        for rel in &relations {
            let before: BTreeSet<Mono> = ech.rows().keys().cloned().collect();
            ech.insert(&to_row(&rel.poly)).map_err(|e| match e {
                Error::Field(FieldError::MultiTermInverse { .. }) => Error::NonOrientable(rel.tag.clone()),
                other => other,
            })?;
            for k in ech.rows().keys() {
                if !before.contains(k) {
                    tags.insert(k.clone(), rel.tag.clone());
                }
            }
        }
        let mut rules = Vec::new();
        let mut residual = Vec::new();
        for (pivot, row) in ech.into_rows() {
            let mut poly = GradedPoly { terms: row };
            let tag = tags.get(&pivot).cloned().unwrap_or_default();
            if pivot.has_params() {
                residual.push(Relation::new(poly, tag));
                continue;
            }
            poly.terms.remove(&pivot);
            rules.push(Rule {
                lead: pivot.word,
                rhs: poly.neg(),
                tag,
            });
        }
        rules.sort_by(|a, b| super::cmp_words(&b.lead, &a.lead));
        let index = rules
            .iter()
            .enumerate()
            .map(|(i, r)| (r.lead.clone(), i))
            .collect();
        let lead_lens = rules.iter().map(|r| r.lead.len()).collect();
        Ok(RelationSet {
            alg,
            relations,
            rules,
            residual,
            index,
            lead_lens,
        })
    }

    /// No relations at all.
    pub fn free(alg: FreeAlgebra) -> Self {
        RelationSet::new(alg, Vec::new()).expect("empty set is orientable")
    }

    /// Rules sorted by leading word, greatest first.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn residual(&self) -> &[Relation] {
        &self.residual
    }

    /// Same relations with `xi` set to zero.
    pub fn with_xi_zero(&self) -> Result<RelationSet> {
        let rels = self
            .relations
            .iter()
            .map(|r| Relation::new(r.poly.drop_xi(), r.tag.clone()))
            .filter(|r| !r.poly.is_zero())
            .collect();
        RelationSet::new(self.alg.clone(), rels)
    }

    fn find_rule(&self, word: &[u16]) -> Option<(usize, usize)> {
        for pos in 0..word.len() {
            for &len in &self.lead_lens {
                if pos + len > word.len() {
                    break;
                }
                if let Some(&i) = self.index.get(&word[pos..pos + len]) {
                    return Some((pos, i));
                }
            }
        }
        None
    }

    /// Reduce until no leading word occurs in any monomial.
    pub fn normal_form(&self, p: &GradedPoly) -> GradedPoly {
        let mut work = p.clone();
        let mut out = GradedPoly::zero();
        while let Some((m, c)) = work.terms.pop_last() {
            let Some((pos, ri)) = self.find_rule(&m.word) else {
                out.terms.insert(m, c);
                continue;
            };
            let rule = &self.rules[ri];
            let prefix = Mono {
                word: m.word[..pos].to_vec(),
                r: m.r,
                xi: m.xi,
            };
            let suffix = Mono::word(m.word[pos + rule.lead.len()..].to_vec());
            for (rm, rc) in &rule.rhs.terms {
                let Some((m1, n1)) = self.alg.mul_mono(&prefix, rm) else {
                    continue;
                };
                let Some((m2, n2)) = self.alg.mul_mono(&m1, &suffix) else {
                    continue;
                };
                let v = &c * rc;
                work.add_term(m2, if n1 ^ n2 { v.neg_ref() } else { v });
            }
        }
        out
    }

    pub fn is_normal_word(&self, w: &[u16]) -> bool {
        self.find_rule(w).is_none()
    }

    /// All normal words of length exactly `d`.
    pub fn normal_words(&self, d: usize) -> Vec<Vec<u16>> {
        let n = self.alg.gens.len() as u16;
        let mut layer: Vec<Vec<u16>> = vec![Vec::new()];
        for _ in 0..d {
            let mut next = Vec::new();
            for w in &layer {
                for g in 0..n {
                    let mut v = w.clone();
                    v.push(g);
                    if self.is_normal_word(&v) {
                        next.push(v);
                    }
                }
            }
            layer = next;
        }
        layer
    }

    pub fn poly_str(&self, p: &GradedPoly) -> String {
        super::text::poly_to_string(&self.alg, p)
    }

    fn word_poly(&self, w: &[u16]) -> GradedPoly {
        GradedPoly::from_mono(Mono::word(w.to_vec()), crate::QScalar::one())
    }

    /// Resolve every overlap and inclusion ambiguity between leading words.
    pub fn check_overlaps_into(&self, report: &mut ConsistencyReport) {
        self.scan_overlaps(report, &mut Vec::new());
    }

    fn record_overlap(
        &self,
        witness: &[u16],
        left: GradedPoly,
        right: GradedPoly,
        report: &mut ConsistencyReport,
        obstructions: &mut Vec<GradedPoly>,
    ) {
        report.overlaps_checked += 1;
        if left != right {
            obstructions.push(left.sub(&right));
            report.overlap_failures.push(OverlapFailure {
                witness: self.alg.word_str(witness),
                left: self.poly_str(&left),
                right: self.poly_str(&right),
            });
        }
    }

    fn scan_overlaps(&self, report: &mut ConsistencyReport, obstructions: &mut Vec<GradedPoly>) {
        for a in &self.rules {
            for b in &self.rules {
                let (la, lb) = (a.lead.len(), b.lead.len());
                for k in 1..la.min(lb) {
                    if a.lead[la - k..] != b.lead[..k] {
                        continue;
                    }
                    let mut witness = a.lead.clone();
                    witness.extend_from_slice(&b.lead[k..]);
                    let left = self.normal_form(&self.alg.mul(&a.rhs, &self.word_poly(&b.lead[k..])));
                    let right = self.normal_form(&self.alg.mul(&self.word_poly(&a.lead[..la - k]), &b.rhs));
                    self.record_overlap(&witness, left, right, report, obstructions);
                }
                if lb < la && !std::ptr::eq(a, b) {
                    for pos in 0..=(la - lb) {
                        if a.lead[pos..pos + lb] != b.lead[..] {
                            continue;
                        }
                        let left = self.normal_form(&a.rhs);
                        let pre = self.word_poly(&a.lead[..pos]);
                        let post = self.word_poly(&a.lead[pos + lb..]);
                        let right = self.normal_form(&self.alg.mul(&self.alg.mul(&pre, &b.rhs), &post));
                        self.record_overlap(&a.lead, left, right, report, obstructions);
                    }
                }
            }
        }
        for rel in &self.residual {
            let nf = self.normal_form(&rel.poly);
            if !nf.is_zero() {
                report.unresolved.push(format!("{} = 0", self.poly_str(&nf)));
                obstructions.push(nf);
            }
        }
    }

    /// Every parameter-bearing relation must supercommute with all generators modulo the set.
    pub fn check_centrality_into(&self, report: &mut ConsistencyReport) {
        self.scan_centrality(report, &mut Vec::new());
    }

    fn scan_centrality(&self, report: &mut ConsistencyReport, obstructions: &mut Vec<GradedPoly>) {
        for rule in self.rules.iter().filter(|r| r.rhs.has_param()) {
            let rho = rule.poly();
            for g in 0..self.alg.gens.len() as u16 {
                let gp = self.alg.gen(g);
                let c = self.normal_form(&self.alg.supercommutator(&gp, &rho));
                report.centrality_checked += 1;
                if !c.is_zero() {
                    report.centrality_failures.push(CentralityFailure {
                        generator: self.alg.gens[g as usize].name.clone(),
                        relation: format!("{} = 0", self.poly_str(&rho)),
                        residue: self.poly_str(&c),
                    });
                    obstructions.push(c);
                }
            }
        }
    }

    /// Both checks, also returning the nonzero residues as polynomials.
    pub fn consistency_with_obstructions(&self) -> (ConsistencyReport, Vec<GradedPoly>) {
        let mut r = ConsistencyReport::default();
        let mut obs = Vec::new();
        self.scan_centrality(&mut r, &mut obs);
        self.scan_overlaps(&mut r, &mut obs);
        (r, obs)
    }

    pub fn check_overlaps(&self) -> ConsistencyReport {
        let mut r = ConsistencyReport::default();
        self.check_overlaps_into(&mut r);
        r
    }

    pub fn check_centrality(&self) -> ConsistencyReport {
        let mut r = ConsistencyReport::default();
        self.check_centrality_into(&mut r);
        r
    }

    pub fn check_consistency(&self) -> ConsistencyReport {
        let mut r = ConsistencyReport::default();
        self.check_centrality_into(&mut r);
        self.check_overlaps_into(&mut r);
        r
    }

    /// Ideal membership of a polynomial (reduces to zero).
    pub fn contains(&self, p: &GradedPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Same linear span of relations (not only the same ideal).
    pub fn same_span(&self, other: &RelationSet) -> bool {
        let a: Vec<GradedPoly> = self.rules.iter().map(|r| r.poly()).chain(self.residual.iter().map(|r| r.poly.clone())).collect();
        let b: Vec<GradedPoly> = other.rules.iter().map(|r| r.poly()).chain(other.residual.iter().map(|r| r.poly.clone())).collect();
        a.len() == b.len() && {
            let mut ech: Echelon<Mono> = Echelon::new();
            for p in &a {
                let _ = ech.insert(&to_row(p));
            }
            b.iter().all(|p| ech.contains(&to_row(p)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::text::parse_relations;

    fn plane(r: bool) -> RelationSet {
        let alg = FreeAlgebra::even(&["x", "y"]);
        let src = if r { "x*y - q*y*x = r" } else { "x*y - q*y*x = 0" };
        parse_relations(&alg, src).unwrap()
    }

    #[test]
    fn plane_normal_form_and_counts() {
        let set = plane(true);
        let alg = &set.alg;
        let xy = alg.mul(&alg.gen(0), &alg.gen(1));
        assert_eq!(set.poly_str(&set.normal_form(&xy)), "q*y*x + r");
        assert_eq!(set.normal_form(&GradedPoly::one()), GradedPoly::one());
        let plain = plane(false);
        let total: usize = (0..=4).map(|d| plain.normal_words(d).len()).sum();
        assert_eq!(total, 15);
        assert!(set.check_consistency().passed());
    }

    #[test]
    fn free_algebra_is_vacuously_consistent() {
        let set = RelationSet::free(FreeAlgebra::even(&["a", "b", "c"]));
        let rep = set.check_consistency();
        assert!(rep.passed());
        assert_eq!(rep.overlaps_checked, 0);
    }

    #[test]
    fn nf_idempotent_and_linear() {
        let set = plane(true);
        let alg = &set.alg;
        let x = alg.gen(0);
        let y = alg.gen(1);
        let p = alg.mul(&alg.mul(&x, &y), &alg.mul(&x, &x));
        let s = alg.mul(&alg.mul(&y, &x), &alg.mul(&y, &x)).add(&x);
        let a = crate::QScalar::q_pow(3);
        let b = crate::QScalar::from_int(-2);
        let nf = set.normal_form(&p);
        assert_eq!(set.normal_form(&nf), nf);
        let lhs = set.normal_form(&p.scale(&a).add(&s.scale(&b)));
        let rhs = nf.scale(&a).add(&set.normal_form(&s).scale(&b));
        assert_eq!(lhs, rhs);
        // NF(pq) = NF(NF(p) NF(q)) for a confluent set
        assert_eq!(
            set.normal_form(&alg.mul(&p, &s)),
            set.normal_form(&alg.mul(&set.normal_form(&p), &set.normal_form(&s)))
        );
    }

    #[test]
    fn overlap_failure_is_detected() {
        // x y = y x, y z = z y, x z = q z x  with r on one side: ambiguity on x y z
        let alg = FreeAlgebra::even(&["x", "y", "z"]);
        let set = parse_relations(&alg, "x*y = y*x + r\ny*z = z*y\nx*z = q*z*x").unwrap();
        let rep = set.check_consistency();
        assert!(!rep.overlaps_ok());
        assert_eq!(rep.overlap_failures[0].witness, "x*y*z");
    }
}
