//! The quantum group SL_q(2) with exact normal forms.
//!
//! Relations: `ab = qba, ac = qca, bd = qdb, cd = qdc, bc = cb`,
//! `ad - qbc = da - q^-1 bc = 1`. Normal basis `a^i b^j c^k` (i >= 0) and
//! `d^i b^j c^k` (i >= 1).

pub mod corep;

use crate::error::{FieldError, Result};
use crate::field::text::{parse_with, ExprContext};
use crate::field::QScalar;
use crate::ring::Ring;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub use corep::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SlGen {
    A,
    B,
    C,
    D,
}

impl SlGen {
    pub const ALL: [SlGen; 4] = [SlGen::A, SlGen::B, SlGen::C, SlGen::D];

    /// Position in `T^(1/2) = [[a, b], [c, d]]`.
    pub fn entry(self) -> (usize, usize) {
        match self {
            SlGen::A => (0, 0),
            SlGen::B => (0, 1),
            SlGen::C => (1, 0),
            SlGen::D => (1, 1),
        }
    }

    pub fn from_entry(i: usize, j: usize) -> SlGen {
        match (i, j) {
            (0, 0) => SlGen::A,
            (0, 1) => SlGen::B,
            (1, 0) => SlGen::C,
            _ => SlGen::D,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SlGen::A => "a",
            SlGen::B => "b",
            SlGen::C => "c",
            SlGen::D => "d",
        }
    }
}

/// `a^ad b^b c^c` for `ad >= 0`, `d^(-ad) b^b c^c` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SlMono {
    pub ad: i32,
    pub b: u32,
    pub c: u32,
}

impl SlMono {
    pub const ONE: SlMono = SlMono { ad: 0, b: 0, c: 0 };

    pub fn gen(g: SlGen) -> SlMono {
        match g {
            SlGen::A => SlMono { ad: 1, b: 0, c: 0 },
            SlGen::B => SlMono { ad: 0, b: 1, c: 0 },
            SlGen::C => SlMono { ad: 0, b: 0, c: 1 },
            SlGen::D => SlMono { ad: -1, b: 0, c: 0 },
        }
    }

    pub fn degree(&self) -> u32 {
        self.ad.unsigned_abs() + self.b + self.c
    }

    /// Letters of the monomial in order.
    pub fn letters(&self) -> Vec<SlGen> {
        let lead = if self.ad >= 0 { SlGen::A } else { SlGen::D };
        let mut out = vec![lead; self.ad.unsigned_abs() as usize];
        out.extend(std::iter::repeat_n(SlGen::B, self.b as usize));
        out.extend(std::iter::repeat_n(SlGen::C, self.c as usize));
        out
    }
}

impl Ord for SlMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.ad.cmp(&other.ad))
            .then_with(|| self.b.cmp(&other.b))
            .then_with(|| self.c.cmp(&other.c))
    }
}

impl PartialOrd for SlMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Expansion of `x^|m| y^|n|` for an `a`-power against a `d`-power as
/// `Σ coeff (a|d)^z (bc)^s`.
fn ad_product(x: i32, y: i32) -> Vec<(i32, u32, QScalar)> {
    if x == 0 || y == 0 || (x > 0) == (y > 0) {
        return vec![(x + y, 0, QScalar::one())];
    }
    // a^m d^n = a^{m-1} d^{n-1} (1 + q^{2n-1} bc),  d^m a^n = d^{m-1} a^{n-1} (1 + q^{-(2n-1)} bc)
    let (m, n) = (x.unsigned_abs() as i64, y.unsigned_abs() as i64);
    let sign = if x > 0 { 1 } else { -1 };
    let k = m.min(n);
    let mut poly: Vec<QScalar> = vec![QScalar::one()];
    for i in 0..k {
        let f = QScalar::q_pow(sign * (2 * (n - i) - 1));
        let mut next = vec![QScalar::zero(); poly.len() + 1];
        for (s, c) in poly.iter().enumerate() {
            next[s] = &next[s] + c;
            next[s + 1] = &next[s + 1] + &(c * &f);
        }
        poly = next;
    }
    let z = sign as i32 * (m - k) as i32 - sign as i32 * (n - k) as i32;
    poly.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| (z, s as u32, c))
        .collect()
}

fn mul_mono(x: &SlMono, y: &SlMono) -> Vec<(SlMono, QScalar)> {
    // b^j c^k (a|d)^y = q^{-(j+k) y} (a|d)^y b^j c^k
    let pass = QScalar::q_pow(-((x.b + x.c) as i64) * y.ad as i64);
    ad_product(x.ad, y.ad)
        .into_iter()
        .map(|(z, s, c)| {
            (
                SlMono {
                    ad: z,
                    b: x.b + y.b + s,
                    c: x.c + y.c + s,
                },
                &c * &pass,
            )
        })
        .collect()
}

/// Element of SL_q(2) in normal form.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct HopfElement {
    pub terms: BTreeMap<SlMono, QScalar>,
}

impl HopfElement {
    pub fn zero() -> Self {
        HopfElement::default()
    }

    pub fn one() -> Self {
        HopfElement::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        HopfElement::from_mono(SlMono::ONE, c)
    }

    pub fn from_mono(m: SlMono, c: QScalar) -> Self {
        let mut e = HopfElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn gen(g: SlGen) -> Self {
        HopfElement::from_mono(SlMono::gen(g), QScalar::one())
    }

    /// Normal form of a product of letters.
    pub fn word(letters: &[SlGen]) -> Self {
        letters
            .iter()
            .fold(HopfElement::one(), |acc, &g| acc.mul(&HopfElement::gen(g)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: SlMono, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(cur) => {
                let s = &cur + &c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &HopfElement) -> HopfElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> HopfElement {
        HopfElement {
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect(),
        }
    }

    pub fn sub(&self, other: &HopfElement) -> HopfElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &QScalar) -> HopfElement {
        let mut out = HopfElement::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c * s);
        }
        out
    }

    pub fn mul(&self, other: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (x, cx) in &self.terms {
            for (y, cy) in &other.terms {
                let c = cx * cy;
                for (m, k) in mul_mono(x, y) {
                    out.add_term(m, &c * &k);
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> HopfElement {
        (0..n).fold(HopfElement::one(), |acc, _| acc.mul(self))
    }

    pub fn counit(&self) -> QScalar {
        self.terms
            .iter()
            .filter(|(m, _)| m.b == 0 && m.c == 0)
            .fold(QScalar::zero(), |acc, (_, c)| &acc + c)
    }

    /// Antipode, an anti-homomorphism: `S(a) = d, S(b) = -q^-1 b, S(c) = -q c, S(d) = a`.
    pub fn antipode(&self) -> HopfElement {
        let s_gen = |g: SlGen| match g {
            SlGen::A => HopfElement::gen(SlGen::D),
            SlGen::B => HopfElement::gen(SlGen::B).scale(&QScalar::q_pow(-1).neg_ref()),
            SlGen::C => HopfElement::gen(SlGen::C).scale(&QScalar::q_pow(1).neg_ref()),
            SlGen::D => HopfElement::gen(SlGen::A),
        };
        let mut out = HopfElement::zero();
        for (m, c) in &self.terms {
            let img = m
                .letters()
                .iter()
                .rev()
                .fold(HopfElement::one(), |acc, &g| acc.mul(&s_gen(g)));
            out = out.add(&img.scale(c));
        }
        out
    }

    /// `Δ(T_ij) = Σ_k T_ik ⊗ T_kj`, extended multiplicatively.
    pub fn coproduct(&self) -> HopfTensor {
        let mut out = HopfTensor::zero();
        for (m, c) in &self.terms {
            let img = m
                .letters()
                .iter()
                .fold(HopfTensor::one(), |acc, &g| acc.mul(&HopfTensor::coproduct_gen(g)));
            out = out.add(&img.scale(c));
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Lowest-order specialization `q -> 1` of every coefficient.
    pub fn classical_limit(&self) -> Result<HopfElement> {
        let mut out = HopfElement::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.classical_limit()?);
        }
        Ok(out)
    }
}

fn mono_str(m: &SlMono) -> String {
    let mut parts = Vec::new();
    let mut push = |name: &str, k: u32| match k {
        0 => {}
        1 => parts.push(name.to_string()),
        k => parts.push(format!("{}^{}", name, k)),
    };
    if m.ad >= 0 {
        push("a", m.ad as u32);
    } else {
        push("d", m.ad.unsigned_abs());
    }
    push("b", m.b);
    push("c", m.c);
    parts.join("*")
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = mono_str(m);
            let cs = c.to_string();
            let body = cs.strip_prefix('-').unwrap_or(&cs);
            let neg = cs.starts_with('-') && !body.contains(" + ") && !body.contains(" - ");
            let t = if mono.is_empty() {
                cs.clone()
            } else if c.is_one() {
                mono
            } else if c.neg_ref().is_one() {
                format!("-{}", mono)
            } else if body.contains(" + ") || body.contains(" - ") {
                format!("({})*{}", cs, mono)
            } else if neg {
                format!("-{}*{}", body, mono)
            } else {
                format!("{}*{}", cs, mono)
            };
            if i == 0 {
                write!(f, "{}", t)?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {}", rest)?;
            } else {
                write!(f, " + {}", t)?;
            }
        }
        Ok(())
    }
}

impl Ring for HopfElement {
    fn zero() -> Self {
        HopfElement::zero()
    }
    fn one() -> Self {
        HopfElement::one()
    }
    fn is_zero(&self) -> bool {
        HopfElement::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn from_scalar(s: QScalar) -> Self {
        HopfElement::scalar(s)
    }
}

/// Element of SL_q(2) ⊗ SL_q(2).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct HopfTensor {
    pub terms: BTreeMap<(SlMono, SlMono), QScalar>,
}

impl HopfTensor {
    pub fn zero() -> Self {
        HopfTensor::default()
    }

    pub fn one() -> Self {
        HopfTensor::pure(&HopfElement::one(), &HopfElement::one())
    }

    pub fn pure(x: &HopfElement, y: &HopfElement) -> Self {
        let mut out = HopfTensor::zero();
        for (mx, cx) in &x.terms {
            for (my, cy) in &y.terms {
                out.add_term(*mx, *my, cx * cy);
            }
        }
        out
    }

    pub fn coproduct_gen(g: SlGen) -> Self {
        let (i, j) = g.entry();
        (0..2).fold(HopfTensor::zero(), |acc, k| {
            acc.add(&HopfTensor::pure(
                &HopfElement::gen(SlGen::from_entry(i, k)),
                &HopfElement::gen(SlGen::from_entry(k, j)),
            ))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, x: SlMono, y: SlMono, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let key = (x, y);
        match self.terms.remove(&key) {
            Some(cur) => {
                let s = &cur + &c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &HopfTensor) -> HopfTensor {
        let mut out = self.clone();
        for ((x, y), c) in &other.terms {
            out.add_term(*x, *y, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &QScalar) -> HopfTensor {
        let mut out = HopfTensor::zero();
        for ((x, y), c) in &self.terms {
            out.add_term(*x, *y, c * s);
        }
        out
    }

    pub fn mul(&self, other: &HopfTensor) -> HopfTensor {
        let mut out = HopfTensor::zero();
        for ((x1, y1), c1) in &self.terms {
            for ((x2, y2), c2) in &other.terms {
                let c = c1 * c2;
                for (mx, kx) in mul_mono(x1, x2) {
                    for (my, ky) in mul_mono(y1, y2) {
                        out.add_term(mx, my, &(&c * &kx) * &ky);
                    }
                }
            }
        }
        out
    }

    /// `m ∘ (f ⊗ g)`.
    pub fn contract(
        &self,
        f: impl Fn(&HopfElement) -> HopfElement,
        g: impl Fn(&HopfElement) -> HopfElement,
    ) -> HopfElement {
        let mut out = HopfElement::zero();
        for ((x, y), c) in &self.terms {
            let l = f(&HopfElement::from_mono(*x, QScalar::one()));
            let r = g(&HopfElement::from_mono(*y, QScalar::one()));
            out = out.add(&l.mul(&r).scale(c));
        }
        out
    }

    /// Apply a linear map to each tensor factor.
    pub fn map(
        &self,
        f: impl Fn(&HopfElement) -> HopfElement,
        g: impl Fn(&HopfElement) -> HopfElement,
    ) -> HopfTensor {
        let mut out = HopfTensor::zero();
        for ((x, y), c) in &self.terms {
            let l = f(&HopfElement::from_mono(*x, QScalar::one()));
            let r = g(&HopfElement::from_mono(*y, QScalar::one()));
            out = out.add(&HopfTensor::pure(&l, &r).scale(c));
        }
        out
    }
}

/// Parsing context for SL_q(2) expressions in `a, b, c, d`.
pub struct HopfContext;

impl ExprContext for HopfContext {
    type Value = HopfElement;
    fn scalar(&self, s: QScalar) -> HopfElement {
        HopfElement::scalar(s)
    }
    fn ident(&self, name: &str) -> std::result::Result<HopfElement, String> {
        SlGen::ALL
            .iter()
            .find(|g| g.name() == name)
            .map(|&g| HopfElement::gen(g))
            .ok_or_else(|| format!("unknown SL_q(2) generator `{}`", name))
    }
    fn add(&self, a: &HopfElement, b: &HopfElement) -> HopfElement {
        a.add(b)
    }
    fn mul(&self, a: &HopfElement, b: &HopfElement) -> std::result::Result<HopfElement, String> {
        Ok(a.mul(b))
    }
    fn neg(&self, a: &HopfElement) -> HopfElement {
        a.neg()
    }
    fn as_scalar(&self, a: &HopfElement) -> Option<QScalar> {
        match a.terms.len() {
            0 => Some(QScalar::zero()),
            1 => a.terms.get(&SlMono::ONE).cloned(),
            _ => None,
        }
    }
}

pub fn parse_hopf(s: &str) -> std::result::Result<HopfElement, FieldError> {
    parse_with(&HopfContext, s)
}

/// Number of normal monomials of degree exactly `n`.
pub fn normal_monomials(n: u32) -> Vec<SlMono> {
    let mut out = Vec::new();
    for ad in -(n as i32)..=(n as i32) {
        let rest = n - ad.unsigned_abs();
        for b in 0..=rest {
            out.push(SlMono { ad, b, c: rest - b });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use SlGen::*;

    fn w(s: &str) -> HopfElement {
        parse_hopf(s).unwrap()
    }

    #[test]
    fn defining_relations_reduce() {
        assert_eq!(HopfElement::word(&[D, A]), w("a*d - (q - q^(-1))*b*c"));
        assert_eq!(HopfElement::word(&[A, D]), w("1 + q*b*c"));
        assert_eq!(HopfElement::word(&[C, B]), HopfElement::word(&[B, C]));
        assert_eq!(HopfElement::word(&[B, A]), w("q^(-1)*a*b"));
        for (x, y) in [(A, B), (A, C), (B, D), (C, D)] {
            let lhs = HopfElement::word(&[x, y]);
            let rhs = HopfElement::word(&[y, x]).scale(&QScalar::q_pow(1));
            assert_eq!(lhs, rhs, "{:?}{:?}", x, y);
        }
        let det = HopfElement::word(&[A, D]).sub(&HopfElement::word(&[B, C]).scale(&QScalar::q_pow(1)));
        assert_eq!(det, HopfElement::one());
        let det2 = HopfElement::word(&[D, A]).sub(&HopfElement::word(&[B, C]).scale(&QScalar::q_pow(-1)));
        assert_eq!(det2, HopfElement::one());
    }

    #[test]
    fn multiplication_is_associative_on_letters() {
        let letters = [A, B, C, D];
        for &x in &letters {
            for &y in &letters {
                for &z in &letters {
                    let l = HopfElement::word(&[x, y]).mul(&HopfElement::gen(z));
                    let r = HopfElement::gen(x).mul(&HopfElement::word(&[y, z]));
                    assert_eq!(l, r);
                }
            }
        }
        let p = w("a^2*d + b");
        let q = w("d^2*c - q*a");
        let r = w("a*d^3 + c*b");
        assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
    }

    #[test]
    fn hopf_axioms_on_generators() {
        assert_eq!(HopfElement::gen(B).antipode(), w("-q^(-1)*b"));
        assert_eq!(HopfElement::gen(A).counit(), QScalar::one());
        assert_eq!(HopfElement::gen(B).counit(), QScalar::zero());
        for g in SlGen::ALL {
            let x = HopfElement::gen(g);
            let d = x.coproduct();
            let eps = HopfElement::scalar(x.counit());
            assert_eq!(d.contract(|u| u.antipode(), |v| v.clone()), eps);
            assert_eq!(d.contract(|u| u.clone(), |v| v.antipode()), eps);
        }
    }

    #[test]
    fn hopf_axioms_on_products() {
        for s in ["a*b", "d*c^2", "a^2*d", "b*c + a"] {
            let x = w(s);
            let eps = HopfElement::scalar(x.counit());
            let d = x.coproduct();
            assert_eq!(d.contract(|u| u.antipode(), |v| v.clone()), eps, "{}", s);
            assert_eq!(d.contract(|u| HopfElement::scalar(u.counit()), |v| v.clone()), x);
        }
        let x = w("a*b");
        let y = w("c*d");
        assert_eq!(x.mul(&y).coproduct(), x.coproduct().mul(&y.coproduct()));
        assert_eq!(x.mul(&y).antipode(), y.antipode().mul(&x.antipode()));
    }

    #[test]
    fn normal_basis_counts_match_classical_dimension() {
        // degree-n part of C[a,b,c,d]/(ad - bc) has dimension (n+1)^2
        for n in 1..=4u32 {
            assert_eq!(normal_monomials(n).len() as u32, (n + 1) * (n + 1));
        }
        // words of length n span exactly the normal monomials of degree <= n (same parity)
        let mut ech: crate::linalg::Echelon<SlMono> = crate::linalg::Echelon::new();
        let mut layer = vec![Vec::new()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &layer {
                for g in SlGen::ALL {
                    let mut v: Vec<SlGen> = w.clone();
                    v.push(g);
                    next.push(v);
                }
            }
            layer = next;
        }
        for w in &layer {
            ech.insert(&HopfElement::word(w).terms).unwrap();
        }
        assert_eq!(ech.rank(), 25 + 9 + 1);
    }
}
