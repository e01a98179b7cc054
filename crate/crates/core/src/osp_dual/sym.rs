//! Laurent polynomials in `s1 = sqrt(g1)` and `s3 = sqrt(g3)` over QScalar.

use crate::error::{FieldError, Result};
use crate::field::QScalar;
use crate::ring::Ring;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymScalar {
    /// `(e1, e3) -> c` for `c * s1^e1 * s3^e3`.
    terms: BTreeMap<(i32, i32), QScalar>,
}

impl SymScalar {
    pub fn monomial(c: QScalar, e1: i32, e3: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e3), c);
        }
        SymScalar { terms }
    }

    pub fn sqrt_g1() -> Self {
        Self::monomial(QScalar::one(), 1, 0)
    }

    pub fn sqrt_g3() -> Self {
        Self::monomial(QScalar::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &QScalar)> {
        self.terms.iter()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Inverse of a single term; sums are not invertible here.
    pub fn invert(&self) -> Result<SymScalar> {
        match self.terms.iter().next() {
            Some((&(e1, e3), c)) if self.terms.len() == 1 => {
                Ok(Self::monomial(c.invert()?, -e1, -e3))
            }
            Some(_) => Err(FieldError::MultiTermInverse { terms: self.terms.len() }.into()),
            None => Err(FieldError::ZeroDivision.into()),
        }
    }

    /// Value at `q = 1` for numeric `g1, g3 > 0`.
    pub fn eval_classical(&self, g1: f64, g3: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (&(e1, e3), c) in &self.terms {
            let c = c.classical_limit()?.eval_f64(1.0);
            acc += c * g1.sqrt().powi(e1) * g3.sqrt().powi(e3);
        }
        Ok(acc)
    }

    /// Specialize `g1, g3` to exact positive rationals with rational square roots,
    /// given as those roots.
    pub fn specialize(&self, s1: &QScalar, s3: &QScalar) -> Result<QScalar> {
        let pow = |s: &QScalar, e: i32| -> Result<QScalar> {
            let p = s.pow(e.unsigned_abs());
            if e < 0 {
                Ok(p.invert()?)
            } else {
                Ok(p)
            }
        };
        let mut acc = QScalar::zero();
        for (&(e1, e3), c) in &self.terms {
            acc = acc + c * &pow(s1, e1)? * pow(s3, e3)?;
        }
        Ok(acc)
    }
}

fn factor_str(name: &str, e: i32) -> Option<String> {
    match e {
        0 => None,
        1 => Some(format!("sqrt({})", name)),
        2 => Some(name.to_string()),
        e if e % 2 == 0 => Some(format!("{}^({})", name, e / 2)),
        e => Some(format!("{}^({}/2)", name, e)),
    }
}

impl fmt::Display for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(e1, e3), c) in self.terms.iter().rev() {
            let factors: Vec<String> =
                [factor_str("g1", e1), factor_str("g3", e3)].into_iter().flatten().collect();
            let mut coeff = c.to_string();
            let neg = coeff.starts_with('-') && c.is_single_term();
            if neg {
                coeff.remove(0);
            }
            let body = if factors.is_empty() {
                coeff
            } else if coeff == "1" {
                factors.join("*")
            } else if c.is_single_term() && !coeff.contains(' ') {
                format!("{}*{}", coeff, factors.join("*"))
            } else {
                format!("({})*{}", coeff, factors.join("*"))
            };
            match (first, neg) {
                (true, true) => write!(f, "-{}", body)?,
                (true, false) => write!(f, "{}", body)?,
                (false, true) => write!(f, " - {}", body)?,
                (false, false) => write!(f, " + {}", body)?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for SymScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Ring for SymScalar {
    fn zero() -> Self {
        SymScalar::default()
    }
    fn one() -> Self {
        Self::monomial(QScalar::one(), 0, 0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let v = out.terms.get(k).map_or_else(|| c.clone(), |x| x.add_ref(c));
            if v.is_zero() {
                out.terms.remove(k);
            } else {
                out.terms.insert(*k, v);
            }
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = SymScalar::default();
        for (&(a1, a3), x) in &self.terms {
            for (&(b1, b3), y) in &other.terms {
                out = out.plus(&Self::monomial(x.mul_ref(y), a1 + b1, a3 + b3));
            }
        }
        out
    }
    fn negate(&self) -> Self {
        SymScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg_ref())).collect(),
        }
    }
    fn from_scalar(s: QScalar) -> Self {
        Self::monomial(s, 0, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_basics() {
        let s1 = SymScalar::sqrt_g1();
        let s3 = SymScalar::sqrt_g3();
        let u = s3.negate().plus(&s1);
        assert_eq!(u.to_string(), "sqrt(g1) - sqrt(g3)");
        assert_eq!(s1.times(&s1).to_string(), "g1");
        let inv = s1.times(&s3).invert().unwrap();
        assert_eq!(inv.times(&s1).times(&s3), SymScalar::one());
        assert!(u.invert().is_err());
        assert!((u.eval_classical(4.0, 9.0).unwrap() + 1.0).abs() < 1e-12);
    }
}
