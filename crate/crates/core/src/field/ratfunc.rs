//! Rational functions in `t = q^(1/2)` kept in lowest terms with a monic denominator.

use super::poly::{rat_to_f64, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentRat {
    num: Poly,
    den: Poly,
}

fn gcd_fast(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        return Poly::t_pow(a.low_order().min(b.low_order()));
    }
    a.gcd(b)
}

fn div_fast(a: &Poly, g: &Poly) -> Poly {
    if g.is_one() {
        return a.clone();
    }
    if g.num_terms() == 1 && g.leading().is_one() {
        return a.unshift(g.degree().unwrap_or(0));
    }
    a.exact_div(g)
}

impl Default for LaurentRat {
    fn default() -> Self {
        LaurentRat::zero()
    }
}

impl LaurentRat {
    pub fn zero() -> Self {
        LaurentRat {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        LaurentRat {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn from_rational(c: BigRational) -> Self {
        LaurentRat {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        LaurentRat::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `c * t^k` for any integer `k`.
    pub fn monomial(c: BigRational, k: i64) -> Self {
        if k >= 0 {
            LaurentRat::from_poly(Poly::monomial(c, k as usize))
        } else {
            LaurentRat::new(Poly::constant(c), Poly::t_pow((-k) as usize))
        }
    }

    /// `t^k`, i.e. `q^(k/2)`.
    pub fn t_pow(k: i64) -> Self {
        LaurentRat::monomial(BigRational::one(), k)
    }

    /// `q^n`.
    pub fn q_pow(n: i64) -> Self {
        LaurentRat::t_pow(2 * n)
    }

    pub fn from_poly(p: Poly) -> Self {
        LaurentRat {
            num: p,
            den: Poly::one(),
        }
    }

    /// Build from a Laurent polynomial given as `sum c_k t^k` with `k` possibly negative.
    pub fn from_laurent_terms(terms: &[(i64, BigRational)]) -> Self {
        let min = terms.iter().map(|(k, _)| *k).min().unwrap_or(0).min(0);
        let mut p = Poly::zero();
        for (k, c) in terms {
            p = p.add(&Poly::monomial(c.clone(), (k - min) as usize));
        }
        LaurentRat::new(p, Poly::t_pow((-min) as usize))
    }

    /// Canonicalize `num/den`; panics on a zero denominator.
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return LaurentRat::zero();
        }
        let g = gcd_fast(&num, &den);
        let mut n = div_fast(&num, &g);
        let mut d = div_fast(&den, &g);
        let lc = d.leading();
        if !lc.is_one() {
            let inv = lc.recip();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        LaurentRat { num: n, den: d }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Constant value when the function is a rational number.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// True when the denominator is a power of `t` (a Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.num_terms() == 1
    }

    /// Laurent terms `(k, c)` for `c t^k`, when the denominator is a power of `t`.
    pub fn laurent_terms(&self) -> Option<Vec<(i64, BigRational)>> {
        if !self.is_laurent() {
            return None;
        }
        let shift = self.den.degree().unwrap_or(0) as i64;
        Some(
            self.num
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 - shift, c.clone()))
                .collect(),
        )
    }

    pub fn add(&self, other: &LaurentRat) -> LaurentRat {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return LaurentRat::new(self.num.add(&other.num), self.den.clone());
        }
        let g = gcd_fast(&self.den, &other.den);
        let b1 = div_fast(&self.den, &g);
        let d1 = div_fast(&other.den, &g);
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        LaurentRat::new(num, self.den.mul(&d1))
    }

    pub fn neg(&self) -> LaurentRat {
        LaurentRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &LaurentRat) -> LaurentRat {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentRat) -> LaurentRat {
        if self.is_zero() || other.is_zero() {
            return LaurentRat::zero();
        }
        let g1 = gcd_fast(&self.num, &other.den);
        let g2 = gcd_fast(&other.num, &self.den);
        let n = div_fast(&self.num, &g1).mul(&div_fast(&other.num, &g2));
        let d = div_fast(&self.den, &g2).mul(&div_fast(&other.den, &g1));
        LaurentRat::new(n, d)
    }

    pub fn scale(&self, c: &BigRational) -> LaurentRat {
        if c.is_zero() {
            return LaurentRat::zero();
        }
        LaurentRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<LaurentRat> {
        if self.is_zero() {
            return None;
        }
        Some(LaurentRat::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Option<LaurentRat> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Some(LaurentRat {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Value at `t = x`; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.num.eval_f64(t) / self.den.eval_f64(t)
    }

    /// Value at `q = 1`; `None` when `t = 1` is a pole.
    pub fn at_one(&self) -> Option<BigRational> {
        self.eval(&BigRational::one())
    }

    /// Sign of the function for `q` slightly larger than 1: the sign of the first
    /// nonvanishing Taylor coefficient at `t = 1`.
    pub fn sign_near_one(&self) -> Ordering {
        if self.is_zero() {
            return Ordering::Equal;
        }
        let (_, n) = self.num.order_at_one().expect("nonzero");
        let (_, d) = self.den.order_at_one().expect("nonzero");
        let s = n.is_positive() == d.is_positive();
        if s {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Substitute `q -> q^{-1}`, i.e. `t -> 1/t`.
    pub fn invert_q(&self) -> LaurentRat {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let rev = |p: &Poly, d: usize| {
            let mut c: Vec<BigRational> = p.coeffs().to_vec();
            c.resize(d + 1, BigRational::zero());
            c.reverse();
            Poly::from_coeffs(c)
        };
        let n = rev(&self.num, dn);
        let d = rev(&self.den, dd);
        // p(1/t) = rev(p)(t) / t^deg p
        let (n, d) = if dn >= dd {
            (n, d.shift(dn - dd))
        } else {
            (n.shift(dd - dn), d)
        };
        LaurentRat::new(n, d)
    }

    pub fn num_terms(&self) -> usize {
        self.num.num_terms()
    }

    pub fn to_f64_at(&self, t: f64) -> f64 {
        self.eval_f64(t)
    }

    pub fn rat_f64(c: &BigRational) -> f64 {
        rat_to_f64(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::poly::rat;

    #[test]
    fn canonical_form() {
        let a = LaurentRat::new(Poly::from_i64s(&[-1, 0, 1]), Poly::from_i64s(&[2, 2]));
        assert_eq!(a, LaurentRat::new(Poly::from_i64s(&[-1, 1]), Poly::from_i64s(&[2])));
        assert_eq!(a.den().coeffs(), &[rat(1, 1)]);
    }

    #[test]
    fn laurent_roundtrip_and_inversion() {
        let x = LaurentRat::from_laurent_terms(&[(2, rat(1, 1)), (-2, rat(1, 1))]);
        assert_eq!(x.invert_q(), x);
        let y = LaurentRat::t_pow(3);
        assert_eq!(y.invert_q(), LaurentRat::t_pow(-3));
        assert_eq!(y.mul(&y.invert_q()), LaurentRat::one());
    }

    #[test]
    fn sign_near_one_uses_lowest_taylor_term() {
        // q - 1 is positive for q slightly above 1
        let x = LaurentRat::q_pow(1).sub(&LaurentRat::one());
        assert_eq!(x.sign_near_one(), Ordering::Greater);
        assert_eq!(x.neg().sign_near_one(), Ordering::Less);
    }
}
