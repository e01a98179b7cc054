//! Canonical text form for scalars and a small expression parser shared with
//! the relation grammar.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor (('*'|'/') factor)*
//! factor  := '-' factor | power
//! power   := atom ['^' exponent]
//! exponent:= int | '(' ['-'] int ['/' int] ')'
//! atom    := int | ident | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! `q` is the deformation parameter and accepts half-integer exponents,
//! `sqrt(e)` is the formal square root, `sbr(n)` the super bracket `[n]` and
//! `qbr(n)` the symmetric q-integer. Other identifiers are resolved by the caller.

use super::ratfunc::LaurentRat;
use super::scalar::QScalar;
use crate::error::FieldError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

fn rational_str(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// `q^(k/2)` in reduced form; empty for `k = 0`.
pub fn monomial_str(k: i64) -> String {
    match k {
        0 => String::new(),
        2 => "q".to_string(),
        k if k % 2 == 0 && k > 0 => format!("q^{}", k / 2),
        k if k % 2 == 0 => format!("q^({})", k / 2),
        k => format!("q^({}/2)", k),
    }
}

/// Laurent polynomial `sum c_k t^k`, highest power first.
pub fn laurent_terms_str(terms: &[(i64, BigRational)]) -> String {
    let mut sorted: Vec<&(i64, BigRational)> = terms.iter().filter(|(_, c)| !c.is_zero()).collect();
    sorted.sort_by_key(|t| std::cmp::Reverse(t.0));
    if sorted.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in sorted.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        let mono = monomial_str(*k);
        let body = if mono.is_empty() {
            rational_str(&a)
        } else if a.is_one() {
            mono
        } else {
            format!("{}*{}", rational_str(&a), mono)
        };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for LaurentRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(terms) = self.laurent_terms() {
            return write!(f, "{}", laurent_terms_str(&terms));
        }
        let k = self.den().low_order();
        let dprime = self.den().unshift(k);
        let num: Vec<(i64, BigRational)> = self
            .num()
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (i as i64 - k as i64, c.clone()))
            .collect();
        let den: Vec<(i64, BigRational)> = dprime
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| (i as i64, c.clone()))
            .collect();
        write!(f, "({})/({})", laurent_terms_str(&num), laurent_terms_str(&den))
    }
}

fn is_monomial(c: &LaurentRat) -> bool {
    c.laurent_terms().is_some_and(|t| t.len() == 1)
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (r, c)) in self.terms().enumerate() {
            let s = if r.is_one() {
                c.to_string()
            } else {
                let root = format!("sqrt({})", r.value());
                if c.is_one() {
                    root
                } else if c.neg().is_one() {
                    format!("-{}", root)
                } else if is_monomial(c) {
                    format!("{}*{}", c, root)
                } else {
                    format!("({})*{}", c, root)
                }
            };
            if i == 0 {
                out.push_str(&s);
            } else if let Some(rest) = s.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&s);
            }
        }
        write!(f, "{}", out)
    }
}

/// Values that can be built by the expression parser.
pub trait ExprContext {
    type Value: Clone;
    fn scalar(&self, s: QScalar) -> Self::Value;
    fn ident(&self, name: &str) -> Result<Self::Value, String>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value, String>;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn as_scalar(&self, a: &Self::Value) -> Option<QScalar>;
}

/// Plain scalar context with optional named constants.
#[derive(Default)]
pub struct ScalarContext {
    pub constants: Vec<(String, QScalar)>,
}

impl ExprContext for ScalarContext {
    type Value = QScalar;
    fn scalar(&self, s: QScalar) -> QScalar {
        s
    }
    fn ident(&self, name: &str) -> Result<QScalar, String> {
        self.constants
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| format!("unknown identifier `{}`", name))
    }
    fn add(&self, a: &QScalar, b: &QScalar) -> QScalar {
        a + b
    }
    fn mul(&self, a: &QScalar, b: &QScalar) -> Result<QScalar, String> {
        Ok(a * b)
    }
    fn neg(&self, a: &QScalar) -> QScalar {
        -a
    }
    fn as_scalar(&self, a: &QScalar) -> Option<QScalar> {
        Some(a.clone())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, FieldError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push((start, Tok::Int(text.parse().expect("digits"))));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(FieldError::Parse {
                pos: i,
                message: format!("unexpected character `{}`", c),
            });
        }
    }
    Ok(out)
}

struct Parser<'a, C: ExprContext> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ctx: &'a C,
    len: usize,
}

impl<'a, C: ExprContext> Parser<'a, C> {
    fn err(&self, message: impl Into<String>) -> FieldError {
        let pos = self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len);
        FieldError::Parse {
            pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FieldError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{}`", c)))
        }
    }

    fn expr(&mut self) -> Result<C::Value, FieldError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = self.ctx.neg(&acc);
        }
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.ctx.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.ctx.add(&acc, &self.ctx.neg(&t));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<C::Value, FieldError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                acc = self.ctx.mul(&acc, &f).map_err(|m| self.err(m))?;
            } else if self.eat('/') {
                let f = self.factor()?;
                let s = self
                    .ctx
                    .as_scalar(&f)
                    .ok_or_else(|| self.err("division by a non-scalar"))?;
                let inv = match s.as_laurent() {
                    Some(l) => QScalar::from_laurent(l.inv().ok_or(FieldError::ZeroDivision)?),
                    None => s.invert()?,
                };
                acc = self
                    .ctx
                    .mul(&acc, &self.ctx.scalar(inv))
                    .map_err(|m| self.err(m))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<C::Value, FieldError> {
        if self.eat('-') {
            let f = self.factor()?;
            return Ok(self.ctx.neg(&f));
        }
        self.power()
    }

    fn signed_int(&mut self) -> Result<BigInt, FieldError> {
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(if neg { -n } else { n })
            }
            _ => Err(self.err("expected integer")),
        }
    }

    /// Exponent as a fraction `num/den` with `den` in {1, 2}.
    fn exponent(&mut self) -> Result<BigRational, FieldError> {
        if self.eat('(') {
            let n = self.signed_int()?;
            let d = if self.eat('/') {
                match self.peek().cloned() {
                    Some(Tok::Int(d)) => {
                        self.pos += 1;
                        d
                    }
                    _ => return Err(self.err("expected denominator")),
                }
            } else {
                BigInt::one()
            };
            self.expect(')')?;
            if d.is_zero() {
                return Err(FieldError::ZeroDivision);
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(self.signed_int()?))
        }
    }

    fn small_int_arg(&mut self) -> Result<i64, FieldError> {
        self.expect('(')?;
        let n = self.signed_int()?;
        self.expect(')')?;
        i64::try_from(n).map_err(|_| self.err("integer argument too large"))
    }

    fn power(&mut self) -> Result<C::Value, FieldError> {
        let is_q = self.peek() == Some(&Tok::Ident("q".to_string()));
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if is_q {
            let twice = &e * BigRational::from_integer(BigInt::from(2));
            if !twice.is_integer() {
                return Err(self.err("exponent of q must be a multiple of 1/2"));
            }
            let k = i64::try_from(twice.to_integer()).map_err(|_| self.err("exponent too large"))?;
            return Ok(self.ctx.scalar(QScalar::t_pow(k)));
        }
        if !e.is_integer() {
            return Err(self.err("fractional exponent only allowed on q"));
        }
        let n = i64::try_from(e.to_integer()).map_err(|_| self.err("exponent too large"))?;
        if n < 0 {
            let s = self
                .ctx
                .as_scalar(&base)
                .ok_or_else(|| self.err("negative power of a non-scalar"))?;
            let inv = match s.as_laurent() {
                Some(l) => QScalar::from_laurent(l.inv().ok_or(FieldError::ZeroDivision)?),
                None => s.invert()?,
            };
            let mut acc = QScalar::one();
            for _ in 0..(-n) {
                acc = &acc * &inv;
            }
            return Ok(self.ctx.scalar(acc));
        }
        let mut acc = self.ctx.scalar(QScalar::one());
        for _ in 0..n {
            acc = self.ctx.mul(&acc, &base).map_err(|m| self.err(m))?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<C::Value, FieldError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self
                    .ctx
                    .scalar(QScalar::from_rational(BigRational::from_integer(n))))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match name.as_str() {
                    "q" => Ok(self.ctx.scalar(QScalar::q_pow(1))),
                    "sqrt" => {
                        self.expect('(')?;
                        let v = self.expr()?;
                        self.expect(')')?;
                        let s = self
                            .ctx
                            .as_scalar(&v)
                            .ok_or_else(|| self.err("sqrt of a non-scalar"))?;
                        Ok(self.ctx.scalar(s.sqrt()?))
                    }
                    "sbr" => {
                        let n = self.small_int_arg()?;
                        Ok(self.ctx.scalar(QScalar::qint_super(n)))
                    }
                    "qbr" => {
                        let n = self.small_int_arg()?;
                        Ok(self.ctx.scalar(QScalar::qint_sl2(n)))
                    }
                    _ => self.ctx.ident(&name).map_err(|m| {
                        self.pos -= 1;
                        self.err(m)
                    }),
                }
            }
            _ => Err(self.err("unexpected end of input or token")),
        }
    }
}

/// Parse an expression in the given context.
pub fn parse_with<C: ExprContext>(ctx: &C, s: &str) -> Result<C::Value, FieldError> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ctx,
        len: s.len(),
    };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parse a scalar expression.
pub fn parse_scalar(s: &str) -> Result<QScalar, FieldError> {
    parse_with(&ScalarContext::default(), s)
}

impl std::str::FromStr for QScalar {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_reduced_monomials() {
        assert_eq!(QScalar::q_pow(1).to_string(), "q");
        assert_eq!(QScalar::q_pow(2).to_string(), "q^2");
        assert_eq!(QScalar::t_pow(1).to_string(), "q^(1/2)");
        assert_eq!(QScalar::t_pow(-1).to_string(), "q^(-1/2)");
        assert_eq!(QScalar::q_pow(-1).to_string(), "q^(-1)");
        assert_eq!(QScalar::qint_super(2).to_string(), "-q^(1/2) + q^(-1/2)");
    }

    #[test]
    fn roundtrip_examples() {
        for s in [
            "q + q^(-1)",
            "sqrt(q^2 + 1)",
            "2*q^(1/2) - 3/4",
            "(q^(1/2))*sqrt(q^2 - q + 1) - 5*sqrt(2)",
            "(q + 1)/(q^2 + q + 1)",
            "sqrt(-1)",
        ] {
            let x = parse_scalar(s).unwrap();
            let y = parse_scalar(&x.to_string()).unwrap();
            assert_eq!(x, y, "{} printed as {}", s, x);
        }
    }

    #[test]
    fn bracket_helpers() {
        assert_eq!(parse_scalar("sbr(3)").unwrap(), parse_scalar("q - 1 + q^(-1)").unwrap());
        assert_eq!(parse_scalar("qbr(2)").unwrap(), parse_scalar("q + 1/q").unwrap());
        assert!(parse_scalar("sqrt(1 + sqrt(2))").is_err());
    }
}
