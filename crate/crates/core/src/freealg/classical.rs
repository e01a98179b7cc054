//! Classical limit `q -> 1`, `xi -> 0` of a relation set, reduced into the
//! free supercommutative algebra on the same generators.

use super::{FreeAlgebra, GradedPoly, Relation};
use crate::error::Result;
use crate::field::{LaurentRat, Poly, QScalar};
use crate::linalg::{Echelon, SparseRow};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Supercommutative monomial: sorted letters (ascending index) and the power of `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalMono {
    pub word: Vec<u16>,
    pub r: u16,
}

impl Ord for ClassicalMono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        super::cmp_words(&self.word, &other.word).then_with(|| self.r.cmp(&other.r))
    }
}

impl PartialOrd for ClassicalMono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    /// Every relation is implied by supercommutativity.
    Commutative,
    /// Involves `r`: a scalar (radius-type) relation.
    Scalar,
    /// Nontrivial relations that force no monomial to vanish.
    Constraint,
    /// Forces a nonzero supercommutative monomial to vanish.
    Unacceptable,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ClassicalLimit {
    pub kind: LimitKind,
    /// Reduced classical relations, each `... = 0`.
    pub relations: Vec<String>,
    /// Monomials forced to vanish.
    pub vanishing: Vec<String>,
    #[serde(skip)]
    pub rows: Vec<BTreeMap<ClassicalMono, QScalar>>,
}

impl ClassicalLimit {
    pub fn acceptable(&self) -> bool {
        self.kind != LimitKind::Unacceptable
    }

    /// Short reason naming the vanishing squares, e.g. `x^2 = y^2 = 0`.
    pub fn reason(&self) -> Option<String> {
        if self.acceptable() {
            return None;
        }
        let squares: Vec<&String> = self
            .vanishing
            .iter()
            .filter(|s| s.ends_with("^2") && !s.contains('*'))
            .collect();
        let list: Vec<&String> = if squares.is_empty() {
            self.vanishing.iter().collect()
        } else {
            squares
        };
        Some(format!(
            "{} = 0",
            list.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" = ")
        ))
    }
}

/// Sort a word into supercommutative order; `None` if an odd letter repeats.
pub fn supercommute(alg: &FreeAlgebra, word: &[u16]) -> Option<(Vec<u16>, bool)> {
    let mut w = word.to_vec();
    let mut neg = false;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            if alg.is_odd(w[j - 1]) && alg.is_odd(w[j]) {
                neg = !neg;
            }
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && alg.is_odd(p[0])) {
        return None;
    }
    Some((w, neg))
}

pub fn classical_mono_str(alg: &FreeAlgebra, m: &ClassicalMono) -> String {
    let mut parts = Vec::new();
    match m.r {
        0 => {}
        1 => parts.push("r".to_string()),
        k => parts.push(format!("r^{}", k)),
    }
    let mut i = 0;
    while i < m.word.len() {
        let g = m.word[i];
        let mut k = 1;
        while i + k < m.word.len() && m.word[i + k] == g {
            k += 1;
        }
        let name = &alg.gens[g as usize].name;
        parts.push(if k == 1 { name.clone() } else { format!("{}^{}", name, k) });
        i += k;
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn row_str(alg: &FreeAlgebra, row: &BTreeMap<ClassicalMono, QScalar>) -> String {
    let mut s = String::new();
    for (i, (m, c)) in row.iter().rev().enumerate() {
        let mono = classical_mono_str(alg, m);
        let cs = c.to_string();
        let t = if c.is_one() {
            mono
        } else if c.neg_ref().is_one() {
            format!("-{}", mono)
        } else if cs.trim_start_matches('-').contains(' ') {
            format!("({})*{}", cs, mono)
        } else {
            format!("{}*{}", cs, mono)
        };
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
    format!("{} = 0", s)
}

/// Leading-order specialization at `q = 1` of one relation (an overall power of
/// `q^(1/2) - 1` is divided out first).
pub fn classical_row(alg: &FreeAlgebra, p: &GradedPoly) -> Result<SparseRow<ClassicalMono>> {
    let p = p.drop_xi();
    let min = p.terms.values().filter_map(|c| c.order_at_one_twice()).min().unwrap_or(0);
    let k = min.div_euclid(2);
    let base = Poly::from_i64s(&[-1, 1]);
    let factor = if k >= 0 {
        LaurentRat::from_poly(base.pow(k as u32)).inv().expect("nonzero")
    } else {
        LaurentRat::from_poly(base.pow((-k) as u32))
    };
    let mut row: SparseRow<ClassicalMono> = BTreeMap::new();
    for (m, c) in &p.terms {
        let v = c.scale_laurent(&factor).classical_limit()?;
        if v.is_zero() {
            continue;
        }
        let Some((w, neg)) = supercommute(alg, &m.word) else {
            continue;
        };
        let key = ClassicalMono { word: w, r: m.r };
        let add = if neg { v.neg_ref() } else { v };
        let cur = row.remove(&key).unwrap_or_else(QScalar::zero);
        let s = &cur + &add;
        if !s.is_zero() {
            row.insert(key, s);
        }
    }
    Ok(row)
}

/// Classical limit of a list of relations with its acceptability verdict.
pub fn classical_limit_of(alg: &FreeAlgebra, relations: &[Relation]) -> Result<ClassicalLimit> {
    let mut ech: Echelon<ClassicalMono> = Echelon::new();
    for rel in relations {
        ech.insert(&classical_row(alg, &rel.poly)?)?;
    }
    let rows: Vec<BTreeMap<ClassicalMono, QScalar>> = ech.into_rows().into_values().rev().collect();
    let vanishing: Vec<String> = rows
        .iter()
        .filter(|r| r.len() == 1)
        .filter_map(|r| r.keys().next())
        .filter(|m| m.r == 0 && !m.word.is_empty())
        .map(|m| classical_mono_str(alg, m))
        .collect();
    let kind = if rows.is_empty() {
        LimitKind::Commutative
    } else if !vanishing.is_empty() {
        LimitKind::Unacceptable
    } else if rows.iter().any(|r| r.keys().any(|m| m.r > 0)) {
        LimitKind::Scalar
    } else {
        LimitKind::Constraint
    };
    Ok(ClassicalLimit {
        kind,
        relations: rows.iter().map(|r| row_str(alg, r)).collect(),
        vanishing,
        rows,
    })
}

pub fn classical_limit_set(set: &super::RelationSet) -> Result<ClassicalLimit> {
    classical_limit_of(&set.alg, &set.relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::text::parse_relations;
    use crate::freealg::Generator;

    #[test]
    fn squares_of_even_generators_are_unacceptable() {
        let alg = FreeAlgebra::even(&["x", "y"]);
        let set = parse_relations(&alg, "x*x\nx*y + q^(-1)*y*x\ny*y").unwrap();
        let lim = classical_limit_set(&set).unwrap();
        assert_eq!(lim.kind, LimitKind::Unacceptable);
        assert_eq!(lim.reason().unwrap(), "x^2 = y^2 = 0");
    }

    #[test]
    fn odd_squares_and_q_commutators_are_fine() {
        let alg = FreeAlgebra::new(
            vec![
                Generator { name: "a".into(), odd: true },
                Generator { name: "b".into(), odd: true },
            ],
            false,
        );
        let set = parse_relations(&alg, "a*a\na*b + q*b*a\nb*b").unwrap();
        assert_eq!(classical_limit_set(&set).unwrap().kind, LimitKind::Commutative);
        let set = parse_relations(&alg, "a*b - b*a = r").unwrap();
        let lim = classical_limit_set(&set).unwrap();
        assert_eq!(lim.kind, LimitKind::Scalar);
        assert_eq!(lim.relations, vec!["a*b - 1/2*r = 0"]);
    }

    #[test]
    fn overall_vanishing_factor_is_removed() {
        let alg = FreeAlgebra::even(&["x", "y"]);
        let set = parse_relations(&alg, "(q - 1)*x*y + (q^2 - 1)*y*y").unwrap();
        let lim = classical_limit_set(&set).unwrap();
        assert_eq!(lim.relations, vec!["x*y + 2*y^2 = 0"]);
    }
}
