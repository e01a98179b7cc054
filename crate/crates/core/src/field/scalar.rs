//! Exact scalars: finite sums of rational functions in `t` times formal square roots.

use super::poly::Poly;
use super::ratfunc::LaurentRat;
use crate::error::FieldError;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Canonical square-free radicand `(-1)^neg * n * P(t)`.
///
/// `n` is a positive square-free integer and `P` a square-free primitive
/// integer polynomial with positive leading coefficient (stored over the rationals).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radicand {
    neg: bool,
    n: BigInt,
    poly: Poly,
}

impl Radicand {
    pub fn one() -> Self {
        Radicand {
            neg: false,
            n: BigInt::one(),
            poly: Poly::one(),
        }
    }

    pub fn is_one(&self) -> bool {
        !self.neg && self.n.is_one() && self.poly.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn integer(&self) -> &BigInt {
        &self.n
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// The radicand as a rational function.
    pub fn value(&self) -> LaurentRat {
        let mut c = BigRational::from_integer(self.n.clone());
        if self.neg {
            c = -c;
        }
        LaurentRat::from_poly(self.poly.scale(&c))
    }

    /// `sqrt(self) * sqrt(other) = factor * sqrt(result)`.
    pub fn mul(&self, other: &Radicand) -> (LaurentRat, Radicand) {
        if self.is_one() {
            return (LaurentRat::one(), other.clone());
        }
        if other.is_one() {
            return (LaurentRat::one(), self.clone());
        }
        let mut factor = BigRational::one();
        if self.neg && other.neg {
            factor = -factor;
        }
        let g = self.n.gcd(&other.n);
        factor *= BigRational::from_integer(g.clone());
        let n = (&self.n / &g) * (&other.n / &g);
        let gp = primitive_part(&self.poly.gcd(&other.poly));
        let poly = self
            .poly
            .exact_div(&gp)
            .mul(&other.poly.exact_div(&gp));
        let f = LaurentRat::from_poly(gp).scale(&factor);
        (
            f,
            Radicand {
                neg: self.neg ^ other.neg,
                n,
                poly,
            },
        )
    }
}

/// Primitive integral form of a nonzero polynomial, positive leading coefficient.
fn primitive_part(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::one();
    }
    let (_, prim) = p.integer_primitive();
    Poly::from_coeffs(prim.into_iter().map(BigRational::from_integer).collect())
}

/// Split a positive integer as `root^2 * core` with `core` square-free.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut root = BigInt::one();
    let mut core = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit_steps = 2_000_000u64;
    let mut steps = 0u64;
    while &p * &p <= rest && steps < limit_steps {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            root *= num_traits::pow(p.clone(), (e / 2) as usize);
            if e % 2 == 1 {
                core *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
        steps += 1;
    }
    if rest > BigInt::one() {
        let s = rest.sqrt();
        if &s * &s == rest {
            root *= s;
        } else {
            core *= rest;
        }
    }
    (root, core)
}

/// Element of the coefficient field.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct QScalar {
    terms: BTreeMap<Radicand, LaurentRat>,
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({})", self)
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar::default()
    }

    pub fn one() -> Self {
        QScalar::from_laurent(LaurentRat::one())
    }

    pub fn from_laurent(c: LaurentRat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Radicand::one(), c);
        }
        QScalar { terms }
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_laurent(LaurentRat::from_int(n))
    }

    pub fn from_rational(c: BigRational) -> Self {
        QScalar::from_laurent(LaurentRat::from_rational(c))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        QScalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `q^(k/2)`.
    pub fn t_pow(k: i64) -> Self {
        QScalar::from_laurent(LaurentRat::t_pow(k))
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        QScalar::t_pow(2 * n)
    }

    pub fn term(coeff: LaurentRat, radicand: Radicand) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(radicand, coeff);
        }
        QScalar { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Radicand, &LaurentRat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(r, c)| r.is_one() && c.is_one())
    }

    /// The value as a rational function when no radical is present.
    pub fn as_laurent(&self) -> Option<LaurentRat> {
        match self.terms.len() {
            0 => Some(LaurentRat::zero()),
            1 => {
                let (r, c) = self.terms.iter().next().unwrap();
                r.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_laurent()?.as_rational()
    }

    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// Re-normalize after construction from raw parts; idempotent.
    pub fn canonicalize(&self) -> QScalar {
        let mut out = QScalar::zero();
        for (r, c) in &self.terms {
            out.add_term(r.clone(), c.clone());
        }
        out
    }

    fn add_term(&mut self, r: Radicand, c: LaurentRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&r) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&r);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(r, c);
            }
        }
    }

    pub fn add_ref(&self, other: &QScalar) -> QScalar {
        if self.is_zero() {
            return other.clone();
        }
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.add_term(r.clone(), c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> QScalar {
        QScalar {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c.neg())).collect(),
        }
    }

    pub fn sub_ref(&self, other: &QScalar) -> QScalar {
        let mut out = self.clone();
        for (r, c) in &other.terms {
            out.add_term(r.clone(), c.neg());
        }
        out
    }

    pub fn mul_ref(&self, other: &QScalar) -> QScalar {
        if self.is_zero() || other.is_zero() {
            return QScalar::zero();
        }
        let mut out = QScalar::zero();
        for (r1, c1) in &self.terms {
            for (r2, c2) in &other.terms {
                let (f, r) = r1.mul(r2);
                let c = c1.mul(c2);
                let c = if f.is_one() { c } else { c.mul(&f) };
                out.add_term(r, c);
            }
        }
        out
    }

    pub fn scale_laurent(&self, f: &LaurentRat) -> QScalar {
        if f.is_zero() {
            return QScalar::zero();
        }
        QScalar {
            terms: self.terms.iter().map(|(r, c)| (r.clone(), c.mul(f))).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> QScalar {
        let mut out = QScalar::one();
        for _ in 0..e {
            out = out.mul_ref(self);
        }
        out
    }

    /// Inverse of a single-term element.
    pub fn invert(&self) -> Result<QScalar, FieldError> {
        match self.terms.len() {
            0 => Err(FieldError::ZeroDivision),
            1 => {
                let (r, c) = self.terms.iter().next().unwrap();
                // 1/(c sqrt R) = sqrt R / (c R)
                let denom = c.mul(&r.value());
                let inv = denom.inv().ok_or(FieldError::ZeroDivision)?;
                Ok(QScalar::term(inv, r.clone()))
            }
            n => Err(FieldError::MultiTermInverse { terms: n }),
        }
    }

    pub fn div(&self, other: &QScalar) -> Result<QScalar, FieldError> {
        Ok(self.mul_ref(&other.invert()?))
    }

    /// Formal square root with canonical radicand. For values positive near
    /// `q = 1` the root is the one that is positive there.
    pub fn sqrt_of(a: &LaurentRat) -> QScalar {
        if a.is_zero() {
            return QScalar::zero();
        }
        // sqrt(N/D) = sqrt(N D) / D
        let p = a.num().mul(a.den());
        let (content, prim) = p.integer_primitive();
        let prim = Poly::from_coeffs(prim.into_iter().map(BigRational::from_integer).collect());
        // content = u/v; sqrt(u/v) = sqrt(u v)/v
        let u = content.numer().clone();
        let v = content.denom().clone();
        let (iroot, icore) = split_square(&(&u * &v));
        let neg = u.is_negative();
        let mut root_poly = Poly::one();
        let mut rad_poly = Poly::one();
        for (i, f) in prim.squarefree_decomposition() {
            let g = primitive_part(&f);
            if i / 2 > 0 {
                root_poly = root_poly.mul(&g.pow(i / 2));
            }
            if i % 2 == 1 {
                rad_poly = rad_poly.mul(&g);
            }
        }
        let coeff = LaurentRat::new(root_poly, a.den().clone())
            .scale(&BigRational::new(iroot, v));
        let coeff = if coeff.sign_near_one() == Ordering::Less {
            coeff.neg()
        } else {
            coeff
        };
        QScalar::term(
            coeff,
            Radicand {
                neg,
                n: icore,
                poly: rad_poly,
            },
        )
    }

    /// Square root of an element without radicals.
    pub fn sqrt(&self) -> Result<QScalar, FieldError> {
        let l = self.as_laurent().ok_or(FieldError::NestedRadical)?;
        Ok(QScalar::sqrt_of(&l))
    }

    /// Super q-bracket `[n] = (q^{-n/2} - (-1)^n q^{n/2}) / (q^{-1/2} + q^{1/2})`.
    pub fn qint_super(n: i64) -> QScalar {
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        let num = LaurentRat::t_pow(-n).sub(&LaurentRat::t_pow(n).scale(&BigRational::from_integer(BigInt::from(sign))));
        let den = LaurentRat::t_pow(-1).add(&LaurentRat::t_pow(1));
        QScalar::from_laurent(num.mul(&den.inv().expect("nonzero")))
    }

    /// Symmetric q-integer `(q^n - q^{-n}) / (q - q^{-1})`.
    pub fn qint_sl2(n: i64) -> QScalar {
        if n == 0 {
            return QScalar::zero();
        }
        let num = LaurentRat::q_pow(n).sub(&LaurentRat::q_pow(-n));
        let den = LaurentRat::q_pow(1).sub(&LaurentRat::q_pow(-1));
        QScalar::from_laurent(num.mul(&den.inv().expect("nonzero")))
    }

    /// Exact value at `q = 1`, as a scalar with constant coefficients.
    pub fn classical_limit(&self) -> Result<QScalar, FieldError> {
        let mut out = QScalar::zero();
        for (r, c) in &self.terms {
            let cv = c.at_one().ok_or(FieldError::PoleAtOne)?;
            if cv.is_zero() {
                continue;
            }
            let rv = r.value().at_one().expect("polynomial");
            let root = QScalar::sqrt_of(&LaurentRat::from_rational(rv));
            out = out.add_ref(&root.scale_laurent(&LaurentRat::from_rational(cv)));
        }
        Ok(out)
    }

    /// Twice the order of vanishing at `q = 1` (negative for a pole); `None` for zero.
    pub fn order_at_one_twice(&self) -> Option<i64> {
        self.terms
            .iter()
            .map(|(r, c)| {
                let ord = |p: &Poly| p.order_at_one().map(|(k, _)| k as i64).unwrap_or(0);
                2 * (ord(c.num()) - ord(c.den())) + ord(r.poly())
            })
            .min()
    }

    /// Rational value at `q = 1` when the limit has no surviving radical.
    pub fn classical_rational(&self) -> Result<Option<BigRational>, FieldError> {
        Ok(self.classical_limit()?.as_rational())
    }

    /// Sign for `q` slightly above 1 of a single-term element with a positive radicand.
    pub fn sign_near_one(&self) -> Option<Ordering> {
        if self.is_zero() {
            return Some(Ordering::Equal);
        }
        if self.terms.len() != 1 {
            return None;
        }
        let (r, c) = self.terms.iter().next().unwrap();
        if r.value().sign_near_one() != Ordering::Greater {
            return None;
        }
        Some(c.sign_near_one())
    }

    /// Numerical value at `t = q^(1/2)`.
    pub fn eval_complex(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, c) in &self.terms {
            let rv = r.value().eval_f64(t);
            let root = Complex64::new(rv, 0.0).sqrt();
            acc += root * c.eval_f64(t);
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.eval_complex(t).re
    }

    /// Exact value at a rational `t` when all radicands become perfect squares.
    pub fn eval_exact(&self, t: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (r, c) in &self.terms {
            let rv = r.value().eval(t)?;
            let cv = c.eval(t)?;
            let root = rational_sqrt(&rv)?;
            acc += cv * root;
        }
        Some(acc)
    }
}

fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| BigRational::new(n, d))
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl From<LaurentRat> for QScalar {
    fn from(c: LaurentRat) -> Self {
        QScalar::from_laurent(c)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                self.$f(rhs)
            }
        }
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                self.$f(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                self.$f(rhs)
            }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                self.$f(&rhs)
            }
        }
    };
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radical_squares_back() {
        let x = LaurentRat::q_pow(-1).mul(&QScalar::qint_super(3).as_laurent().unwrap());
        let s = QScalar::sqrt_of(&x);
        assert_eq!(&s * &s, QScalar::from_laurent(x));
    }

    #[test]
    fn perfect_squares_leave_no_radical() {
        assert_eq!(QScalar::sqrt_of(&LaurentRat::q_pow(2)), QScalar::q_pow(1));
        assert_eq!(QScalar::sqrt_of(&LaurentRat::q_pow(1)), QScalar::t_pow(1));
        assert_eq!(QScalar::sqrt_of(&LaurentRat::from_int(12)).num_terms(), 1);
    }

    #[test]
    fn negative_radicands_multiply_to_negative() {
        let i = QScalar::sqrt_of(&LaurentRat::from_int(-1));
        assert_eq!(&i * &i, QScalar::from_int(-1));
        let a = QScalar::sqrt_of(&LaurentRat::from_int(-6));
        let b = QScalar::sqrt_of(&LaurentRat::from_int(-10));
        assert_eq!(&a * &b, QScalar::from_int(-2) * QScalar::sqrt_of(&LaurentRat::from_int(15)));
    }

    #[test]
    fn brackets() {
        assert_eq!(QScalar::qint_super(1), QScalar::one());
        assert_eq!(QScalar::qint_super(0), QScalar::zero());
        assert_eq!(QScalar::qint_super(2), QScalar::t_pow(-1) - QScalar::t_pow(1));
        assert_eq!(QScalar::qint_sl2(2), QScalar::q_pow(1) + QScalar::q_pow(-1));
    }

    #[test]
    fn inversion() {
        let x = QScalar::from_int(2) * QScalar::sqrt_of(&LaurentRat::q_pow(1).add(&LaurentRat::one()));
        assert_eq!(&x * &x.invert().unwrap(), QScalar::one());
        assert!(matches!(QScalar::zero().invert(), Err(FieldError::ZeroDivision)));
        let y = QScalar::one() + QScalar::sqrt_of(&LaurentRat::from_int(2));
        assert!(matches!(y.invert(), Err(FieldError::MultiTermInverse { terms: 2 })));
    }

    #[test]
    fn classical_limits() {
        assert!(QScalar::qint_super(2).classical_limit().unwrap().is_zero());
        let pole = QScalar::one()
            .div(&(QScalar::q_pow(1) - QScalar::one()))
            .unwrap();
        assert!(matches!(pole.classical_limit(), Err(FieldError::PoleAtOne)));
    }
}
