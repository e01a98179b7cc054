//! Text and JSON forms of polynomials and relation sets.
//!
//! Terms print highest first, e.g. `x1*x0 - q^2*x0*x1 - xi*x1`. Relations are
//! lines `lhs = rhs` (or a bare expression meaning `= 0`); `#` starts a comment.

use super::{FreeAlgebra, Generator, GradedPoly, Mono, Relation, RelationSet};
use crate::error::{Error, FieldError, Result};
use crate::field::text::{parse_with, ExprContext};
use crate::field::QScalar;
use serde::{Deserialize, Serialize};

fn mono_pieces(alg: &FreeAlgebra, m: &Mono) -> Vec<String> {
    let mut out = Vec::new();
    match m.xi {
        0 => {}
        1 => out.push("xi".to_string()),
        k => out.push(format!("xi^{}", k)),
    }
    match m.r {
        0 => {}
        1 => out.push("r".to_string()),
        k => out.push(format!("r^{}", k)),
    }
    out.extend(m.word.iter().map(|&g| alg.gens[g as usize].name.clone()));
    out
}

fn term_string(alg: &FreeAlgebra, m: &Mono, c: &QScalar) -> String {
    let pieces = mono_pieces(alg, m).join("*");
    let cs = c.to_string();
    if pieces.is_empty() {
        return cs;
    }
    if c.is_one() {
        return pieces;
    }
    if c.neg_ref().is_one() {
        return format!("-{}", pieces);
    }
    let body = cs.strip_prefix('-').unwrap_or(&cs);
    let multi = body.contains(" + ") || body.contains(" - ");
    if multi {
        format!("({})*{}", cs, pieces)
    } else {
        format!("{}*{}", cs, pieces)
    }
}

pub fn poly_to_string(alg: &FreeAlgebra, p: &GradedPoly) -> String {
    let mut s = String::new();
    for (i, (m, c)) in p.terms.iter().rev().enumerate() {
        let t = term_string(alg, m, c);
        if i == 0 {
            s.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(&t);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Parsing context: generator names, `r`, `xi`.
pub struct PolyContext<'a> {
    pub alg: &'a FreeAlgebra,
}

impl ExprContext for PolyContext<'_> {
    type Value = GradedPoly;

    fn scalar(&self, s: QScalar) -> GradedPoly {
        GradedPoly::scalar(s)
    }

    fn ident(&self, name: &str) -> std::result::Result<GradedPoly, String> {
        match name {
            "r" => Ok(GradedPoly::param_r()),
            "xi" => Ok(GradedPoly::param_xi()),
            _ => self
                .alg
                .index(name)
                .map(|i| self.alg.gen(i))
                .ok_or_else(|| format!("unknown generator `{}`", name)),
        }
    }

    fn add(&self, a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
        a.add(b)
    }

    fn mul(&self, a: &GradedPoly, b: &GradedPoly) -> std::result::Result<GradedPoly, String> {
        Ok(self.alg.mul(a, b))
    }

    fn neg(&self, a: &GradedPoly) -> GradedPoly {
        a.neg()
    }

    fn as_scalar(&self, a: &GradedPoly) -> Option<QScalar> {
        a.as_scalar()
    }
}

pub fn parse_poly(alg: &FreeAlgebra, s: &str) -> std::result::Result<GradedPoly, FieldError> {
    parse_with(&PolyContext { alg }, s)
}

/// Parse one relation `lhs = rhs` into `lhs - rhs`.
pub fn parse_relation(alg: &FreeAlgebra, s: &str) -> Result<GradedPoly> {
    let parts: Vec<&str> = s.split('=').collect();
    match parts.as_slice() {
        [e] => Ok(parse_poly(alg, e)?),
        [l, r] => Ok(parse_poly(alg, l)?.sub(&parse_poly(alg, r)?)),
        _ => Err(Error::Input(format!("more than one `=` in `{}`", s.trim()))),
    }
}

pub fn parse_relation_list(alg: &FreeAlgebra, src: &str) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for (i, line) in src.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let p = parse_relation(alg, body).map_err(|e| Error::Input(format!("line {}: {}", i + 1, e)))?;
        out.push(Relation::new(p, format!("line {}", i + 1)));
    }
    Ok(out)
}

pub fn parse_relations(alg: &FreeAlgebra, src: &str) -> Result<RelationSet> {
    RelationSet::new(alg.clone(), parse_relation_list(alg, src)?)
}

/// Relation in the form `poly = 0`.
pub fn relation_to_string(alg: &FreeAlgebra, p: &GradedPoly) -> String {
    format!("{} = 0", poly_to_string(alg, p))
}

/// Rule `lead = rhs`.
pub fn rule_to_string(alg: &FreeAlgebra, rule: &super::Rule) -> String {
    format!("{} = {}", alg.word_str(&rule.lead), poly_to_string(alg, &rule.rhs))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RelationJson {
    pub text: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
}

/// Serializable relation set; relations are stored in solved (rule) form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RelationSetJson {
    pub generators: Vec<Generator>,
    pub xi_odd: bool,
    pub relations: Vec<RelationJson>,
}

impl RelationSetJson {
    pub fn from_set(set: &RelationSet) -> Self {
        let mut relations: Vec<RelationJson> = set
            .rules()
            .iter()
            .map(|r| RelationJson {
                text: rule_to_string(&set.alg, r),
                tag: r.tag.clone(),
                category: None,
            })
            .collect();
        relations.extend(set.residual().iter().map(|r| RelationJson {
            text: relation_to_string(&set.alg, &r.poly),
            tag: r.tag.clone(),
            category: None,
        }));
        RelationSetJson {
            generators: set.alg.gens.clone(),
            xi_odd: set.alg.xi_odd,
            relations,
        }
    }

    pub fn algebra(&self) -> FreeAlgebra {
        FreeAlgebra::new(self.generators.clone(), self.xi_odd)
    }

    pub fn to_set(&self) -> Result<RelationSet> {
        let alg = self.algebra();
        let rels = self
            .relations
            .iter()
            .map(|r| Ok(Relation::new(parse_relation(&alg, &r.text)?, r.tag.clone())))
            .collect::<Result<Vec<_>>>()?;
        RelationSet::new(alg, rels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn print_parse_round_trip() {
        let alg = FreeAlgebra::new(
            vec![
                Generator { name: "z1".into(), odd: false },
                Generator { name: "z0".into(), odd: true },
                Generator { name: "zm1".into(), odd: false },
            ],
            true,
        );
        for src in [
            "z1*z0 - q*z0*z1",
            "z0*z0 + (q^(-1/2) + q^(1/2))*z1*zm1 - q^(-1)*r",
            "-xi*z0 + 1/2*zm1*zm1",
            "sqrt(q + q^(-1))*z1*zm1 - sqrt(3)*r",
        ] {
            let p = parse_poly(&alg, src).unwrap();
            let s = poly_to_string(&alg, &p);
            assert_eq!(parse_poly(&alg, &s).unwrap(), p, "{}", s);
        }
        assert_eq!(
            poly_to_string(&alg, &parse_poly(&alg, "z1*z0 - q*z0*z1").unwrap()),
            "z1*z0 - q*z0*z1"
        );
    }

    #[test]
    fn json_round_trip() {
        let alg = FreeAlgebra::even(&["x", "y"]);
        let set = parse_relations(&alg, "x*y - q*y*x = r").unwrap();
        let js = serde_json::to_string(&RelationSetJson::from_set(&set)).unwrap();
        let back: RelationSetJson = serde_json::from_str(&js).unwrap();
        assert!(back.to_set().unwrap().same_span(&set));
    }
}
