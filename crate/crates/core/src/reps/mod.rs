//! Quantum (super)algebras, their irreducible representations and coproducts.

pub mod coproduct;
pub mod irrep;

pub use coproduct::{coproduct_word, tensor_matrix, CoproductTerm};
pub use irrep::{build_irrep, build_osp_irrep, build_sl2_irrep, Irrep, Normalization, RelationReport};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A half-integer stored as twice its value. Serialized as text, e.g. `"3/2"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct HalfInt(pub i32);

impl From<HalfInt> for String {
    fn from(h: HalfInt) -> String {
        h.to_string()
    }
}

impl TryFrom<String> for HalfInt {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl HalfInt {
    pub fn from_int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// Integer value; panics on a proper half-integer.
    pub fn int(self) -> i32 {
        assert!(self.is_integer(), "{} is not an integer", self);
        self.0 / 2
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::str::FromStr for HalfInt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidLabel(format!("`{}` is not an integer or half-integer", s));
        if let Some((n, d)) = s.split_once('/') {
            let n: i32 = n.trim().parse().map_err(|_| bad())?;
            let d: i32 = d.trim().parse().map_err(|_| bad())?;
            match d {
                1 => Ok(HalfInt(2 * n)),
                2 => Ok(HalfInt(n)),
                _ => Err(bad()),
            }
        } else {
            let n: i32 = s.parse().map_err(|_| bad())?;
            Ok(HalfInt(2 * n))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraKind {
    Sl2,
    Osp,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Sl2 => write!(f, "sl2"),
            AlgebraKind::Osp => write!(f, "osp"),
        }
    }
}

/// Irrep label: spin `j` for sl(2), `(ell, lambda)` for osp(1|2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Sl2 { j: HalfInt },
    Osp { ell: u32, lambda: u8 },
}

impl Label {
    pub fn sl2(twice_j: i32) -> Self {
        Label::Sl2 { j: HalfInt(twice_j) }
    }

    pub fn osp(ell: u32, lambda: u8) -> Self {
        Label::Osp { ell, lambda: lambda % 2 }
    }

    pub fn algebra(&self) -> AlgebraKind {
        match self {
            Label::Sl2 { .. } => AlgebraKind::Sl2,
            Label::Osp { .. } => AlgebraKind::Osp,
        }
    }

    /// Highest weight as a half-integer (`j` or `ell`).
    pub fn top(&self) -> HalfInt {
        match *self {
            Label::Sl2 { j } => j,
            Label::Osp { ell, .. } => HalfInt::from_int(ell as i32),
        }
    }

    pub fn dim(&self) -> usize {
        (self.top().twice() + 1) as usize
    }

    /// Weights from the top down.
    pub fn weights(&self) -> Vec<HalfInt> {
        let t = self.top().twice();
        (0..=t).map(|k| HalfInt(t - 2 * k)).collect()
    }

    pub fn lambda(&self) -> u8 {
        match *self {
            Label::Sl2 { .. } => 0,
            Label::Osp { lambda, .. } => lambda,
        }
    }

    /// Parity of the basis vector of weight `m`: `ell - m + lambda` for osp, even for sl2.
    pub fn parity_of(&self, m: HalfInt) -> u8 {
        match *self {
            Label::Sl2 { .. } => 0,
            Label::Osp { ell, lambda } => ((ell as i32 - m.int() + lambda as i32).rem_euclid(2)) as u8,
        }
    }

    /// Same algebra, new top weight; `lambda` is the block parity for osp.
    pub fn with_top(&self, top: HalfInt, lambda: u8) -> Label {
        match self {
            Label::Sl2 { .. } => Label::Sl2 { j: top },
            Label::Osp { .. } => Label::osp(top.int() as u32, lambda),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Sl2 { j } => write!(f, "j={}", j),
            Label::Osp { ell, lambda } => write!(f, "ell={},lambda={}", ell, lambda),
        }
    }
}

/// Generators of the quantum (super)algebras.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum UGen {
    E,
    F,
    K,
    KInv,
    Vp,
    Vm,
}

impl UGen {
    pub fn is_odd(self) -> bool {
        matches!(self, UGen::Vp | UGen::Vm)
    }

    pub fn parity(self) -> u8 {
        self.is_odd() as u8
    }

    pub fn generators(algebra: AlgebraKind) -> [UGen; 4] {
        match algebra {
            AlgebraKind::Sl2 => [UGen::E, UGen::F, UGen::K, UGen::KInv],
            AlgebraKind::Osp => [UGen::Vp, UGen::Vm, UGen::K, UGen::KInv],
        }
    }

    pub fn raising(algebra: AlgebraKind) -> UGen {
        match algebra {
            AlgebraKind::Sl2 => UGen::E,
            AlgebraKind::Osp => UGen::Vp,
        }
    }

    pub fn lowering(algebra: AlgebraKind) -> UGen {
        match algebra {
            AlgebraKind::Sl2 => UGen::F,
            AlgebraKind::Osp => UGen::Vm,
        }
    }
}

impl fmt::Display for UGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            UGen::E => "E",
            UGen::F => "F",
            UGen::K => "K",
            UGen::KInv => "K^-1",
            UGen::Vp => "v+",
            UGen::Vm => "v-",
        };
        write!(f, "{}", s)
    }
}

pub fn word_str(w: &[UGen]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn word_parity(w: &[UGen]) -> u8 {
    w.iter().map(|g| g.parity()).sum::<u8>() % 2
}

/// All words of length `0..=max_len` over the given generators, shortest first.
pub fn all_words(gens: &[UGen], max_len: usize) -> Vec<Vec<UGen>> {
    let mut out = vec![Vec::new()];
    let mut layer: Vec<Vec<UGen>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &g in gens {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Tensor decomposition `l1 ⊗ l2 = (l1+l2) ⊕ ... ⊕ |l1-l2|`, each block once, with the
/// block label (for osp the block parity is `lambda1 + lambda2 + ell1 + ell2 + L`).
pub fn decompose(l1: &Label, l2: &Label) -> Result<Vec<Label>> {
    if l1.algebra() != l2.algebra() {
        return Err(Error::InvalidLabel("labels of different algebras".into()));
    }
    let (a, b) = (l1.top().twice(), l2.top().twice());
    let mut out = Vec::new();
    let mut top = a + b;
    while top >= (a - b).abs() {
        let lab = match (l1, l2) {
            (Label::Osp { ell: e1, lambda: la1 }, Label::Osp { ell: e2, lambda: la2 }) => {
                let big_l = top / 2;
                let par = (*e1 as i32 + *e2 as i32 + big_l + *la1 as i32 + *la2 as i32).rem_euclid(2);
                Label::osp(big_l as u32, par as u8)
            }
            _ => Label::Sl2 { j: HalfInt(top) },
        };
        out.push(lab);
        top -= 2;
    }
    Ok(out)
}
