//! Z2-graded free algebra over the coefficient field with central parameters
//! `r` (even) and `xi` (even or odd; odd `xi` squares to zero).
//!
//! A term is stored as `c * xi^k * r^a * w` with parameters to the left of the word.

pub mod classical;
pub mod rewrite;
pub mod text;

pub use classical::{classical_limit_set, ClassicalLimit, LimitKind};
pub use rewrite::{CentralityFailure, ConsistencyReport, OverlapFailure, Relation, RelationSet, Rule};

use crate::field::QScalar;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub odd: bool,
}

/// Generators in declared order; index 0 is the greatest letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreeAlgebra {
    pub gens: Vec<Generator>,
    pub xi_odd: bool,
}

impl FreeAlgebra {
    pub fn new(gens: Vec<Generator>, xi_odd: bool) -> Self {
        FreeAlgebra { gens, xi_odd }
    }

    pub fn even(names: &[&str]) -> Self {
        FreeAlgebra {
            gens: names
                .iter()
                .map(|n| Generator {
                    name: n.to_string(),
                    odd: false,
                })
                .collect(),
            xi_odd: false,
        }
    }

    pub fn index(&self, name: &str) -> Option<u16> {
        self.gens.iter().position(|g| g.name == name).map(|i| i as u16)
    }

    pub fn is_odd(&self, g: u16) -> bool {
        self.gens[g as usize].odd
    }

    pub fn word_parity(&self, w: &[u16]) -> u8 {
        (w.iter().filter(|&&g| self.is_odd(g)).count() % 2) as u8
    }

    pub fn mono_parity(&self, m: &Mono) -> u8 {
        (self.word_parity(&m.word) + if self.xi_odd { (m.xi % 2) as u8 } else { 0 }) % 2
    }

    pub fn word_str(&self, w: &[u16]) -> String {
        w.iter()
            .map(|&g| self.gens[g as usize].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn gen(&self, i: u16) -> GradedPoly {
        GradedPoly::from_mono(Mono::word(vec![i]), QScalar::one())
    }

    /// Product of two polynomials with parameter Koszul signs.
    pub fn mul(&self, a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((m, neg)) = self.mul_mono(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { c.neg_ref() } else { c });
                }
            }
        }
        out
    }

    /// `(xi^k1 r^a1 w1)(xi^k2 r^a2 w2) = ± xi^{k1+k2} r^{a1+a2} w1 w2`; `None` if it vanishes.
    pub fn mul_mono(&self, a: &Mono, b: &Mono) -> Option<(Mono, bool)> {
        let xi = a.xi + b.xi;
        if self.xi_odd && xi >= 2 {
            return None;
        }
        let neg = self.xi_odd && b.xi % 2 == 1 && self.word_parity(&a.word) == 1;
        let mut word = a.word.clone();
        word.extend_from_slice(&b.word);
        Some((
            Mono {
                word,
                r: a.r + b.r,
                xi,
            },
            neg,
        ))
    }

    /// Graded commutator `a b - (-1)^{|a||b|} b a` for homogeneous inputs.
    pub fn supercommutator(&self, a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
        let pa = a.parity(self).unwrap_or(0);
        let pb = b.parity(self).unwrap_or(0);
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        if pa * pb == 1 {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }
}

/// Monomial `xi^xi r^r word`, ordered degree-lexicographically on the word
/// (smaller generator index = greater letter), then by parameter exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub word: Vec<u16>,
    pub r: u16,
    pub xi: u16,
}

impl Mono {
    pub fn word(word: Vec<u16>) -> Self {
        Mono { word, r: 0, xi: 0 }
    }

    pub fn one() -> Self {
        Mono::word(Vec::new())
    }

    pub fn has_params(&self) -> bool {
        self.r > 0 || self.xi > 0
    }
}

pub fn cmp_words(a: &[u16], b: &[u16]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_words(&self.word, &other.word)
            .then_with(|| self.r.cmp(&other.r))
            .then_with(|| self.xi.cmp(&other.xi))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial as an ordered map from monomials to nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GradedPoly {
    pub terms: BTreeMap<Mono, QScalar>,
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    pub fn one() -> Self {
        GradedPoly::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        GradedPoly::from_mono(Mono::one(), c)
    }

    pub fn from_mono(m: Mono, c: QScalar) -> Self {
        let mut p = GradedPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn param_r() -> Self {
        GradedPoly::from_mono(Mono { word: vec![], r: 1, xi: 0 }, QScalar::one())
    }

    pub fn param_xi() -> Self {
        GradedPoly::from_mono(Mono { word: vec![], r: 0, xi: 1 }, QScalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GradedPoly) -> GradedPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg_ref());
        }
        out
    }

    pub fn neg(&self) -> GradedPoly {
        GradedPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg_ref())).collect(),
        }
    }

    pub fn scale(&self, c: &QScalar) -> GradedPoly {
        if c.is_zero() {
            return GradedPoly::zero();
        }
        GradedPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Leading (greatest) monomial.
    pub fn leading(&self) -> Option<(&Mono, &QScalar)> {
        self.terms.iter().next_back()
    }

    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m == &Mono::one()).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Parity if all terms agree.
    pub fn parity(&self, alg: &FreeAlgebra) -> Option<u8> {
        let mut p = None;
        for m in self.terms.keys() {
            let x = alg.mono_parity(m);
            match p {
                None => p = Some(x),
                Some(y) if y != x => return None,
                _ => {}
            }
        }
        p
    }

    pub fn has_param(&self) -> bool {
        self.terms.keys().any(|m| m.has_params())
    }

    pub fn has_xi(&self) -> bool {
        self.terms.keys().any(|m| m.xi > 0)
    }

    /// Set `xi = 0`.
    pub fn drop_xi(&self) -> GradedPoly {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.xi == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|m| m.word.len()).max().unwrap_or(0)
    }

    /// Terms of word length `d`, parameters included.
    pub fn degree_part(&self, d: usize) -> GradedPoly {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.word.len() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs(&self, f: impl Fn(&QScalar) -> QScalar) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Rename generators through an index map.
    pub fn relabel(&self, map: &[u16]) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(
                Mono {
                    word: m.word.iter().map(|&g| map[g as usize]).collect(),
                    r: m.r,
                    xi: m.xi,
                },
                c.clone(),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> FreeAlgebra {
        FreeAlgebra::new(
            vec![
                Generator { name: "a".into(), odd: true },
                Generator { name: "b".into(), odd: false },
            ],
            true,
        )
    }

    #[test]
    fn odd_xi_signs_and_nilpotency() {
        let alg = toy();
        let a = alg.gen(0);
        let b = alg.gen(1);
        let xi = GradedPoly::param_xi();
        // a * xi = - xi * a for odd a and odd xi
        assert_eq!(alg.mul(&a, &xi), alg.mul(&xi, &a).neg());
        // b * xi = xi * b
        assert_eq!(alg.mul(&b, &xi), alg.mul(&xi, &b));
        assert!(alg.mul(&xi, &xi).is_zero());
        let axi = alg.mul(&a, &xi);
        assert!(alg.mul(&axi, &alg.mul(&xi, &b)).is_zero());
    }

    #[test]
    fn deglex_order() {
        // a > b as letters; longer words are greater
        assert_eq!(cmp_words(&[0, 1], &[1, 0]), Ordering::Greater);
        assert_eq!(cmp_words(&[1, 1, 1], &[0, 0]), Ordering::Greater);
        assert_eq!(cmp_words(&[1], &[0]), Ordering::Less);
    }
}
