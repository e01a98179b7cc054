//! Corepresentations of OSp_q(1|2) reached through the pairing with U_q[osp(1|2)].
//!
//! Matrix entries are formal expressions in nine letters `a, b, c, d, e` (even) and
//! `alpha, beta, gamma, delta` (odd). Nothing here multiplies two such letters as
//! elements of the quantum supergroup: every check evaluates pairings.

mod annihilate;
mod sym;

pub use annihilate::{
    check_subalgebra_closure_premise, nullspace, solve_annihilated, AnnihilatorReport,
    ClosureReport, TwistedPrimitive,
};
pub use sym::SymScalar;

use crate::error::{Error, Result};
use crate::field::{kappa1, kappa2, kappa3, parse_with, ExprContext, QScalar};
use crate::freealg::text::{poly_to_string, PolyContext};
use crate::freealg::{FreeAlgebra, Generator, GradedPoly};
use crate::reps::{
    all_words, build_osp_irrep, coproduct_word, word_parity, word_str, CoproductTerm, Irrep,
    UGen,
};
use crate::ring::Matrix;
use serde::Serialize;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

const T1_LAMBDA0: &str = include_str!("../../data/osp/t1_lambda0.txt");
const T1_LAMBDA1: &str = include_str!("../../data/osp/t1_lambda1.txt");
const T2_LAMBDA0: &str = include_str!("../../data/osp/t2_lambda0.txt");

pub const LETTERS: [&str; 9] = ["a", "b", "c", "d", "e", "alpha", "beta", "gamma", "delta"];

/// Position of each letter in `T^(1)(0)`, indices `0, 1, 2` for `m = 1, 0, -1`.
const LETTER_POS: [(usize, usize); 9] = [
    (0, 0),
    (0, 2),
    (2, 0),
    (2, 2),
    (1, 1),
    (0, 1),
    (1, 2),
    (1, 0),
    (2, 1),
];

pub fn letter_algebra() -> FreeAlgebra {
    FreeAlgebra::new(
        LETTERS
            .iter()
            .enumerate()
            .map(|(i, n)| Generator {
                name: n.to_string(),
                odd: i >= 5,
            })
            .collect(),
        false,
    )
}

/// Letter expressions plus the constants `kappa1`, `kappa2`, `kappa3`.
struct LetterContext<'a> {
    inner: PolyContext<'a>,
}

impl ExprContext for LetterContext<'_> {
    type Value = GradedPoly;

    fn scalar(&self, s: QScalar) -> GradedPoly {
        self.inner.scalar(s)
    }
    fn ident(&self, name: &str) -> std::result::Result<GradedPoly, String> {
        match name {
            "kappa1" => Ok(GradedPoly::scalar(kappa1())),
            "kappa2" => Ok(GradedPoly::scalar(kappa2())),
            "kappa3" => Ok(GradedPoly::scalar(kappa3())),
            "r" | "xi" => Err(format!("unknown letter `{}`", name)),
            _ => self.inner.ident(name),
        }
    }
    fn add(&self, a: &GradedPoly, b: &GradedPoly) -> GradedPoly {
        self.inner.add(a, b)
    }
    fn mul(&self, a: &GradedPoly, b: &GradedPoly) -> std::result::Result<GradedPoly, String> {
        self.inner.mul(a, b)
    }
    fn neg(&self, a: &GradedPoly) -> GradedPoly {
        self.inner.neg(a)
    }
    fn as_scalar(&self, a: &GradedPoly) -> Option<QScalar> {
        self.inner.as_scalar(a)
    }
}

/// A stored corepresentation matrix `T^(ell)(lambda)`.
#[derive(Clone, Debug)]
pub struct SuperCorepFixture {
    pub ell: u32,
    pub lambda: u8,
    /// Entries as written in the data file.
    pub source: Vec<Vec<String>>,
    pub entries: Vec<Vec<GradedPoly>>,
}

impl SuperCorepFixture {
    pub fn parse(ell: u32, lambda: u8, src: &str) -> Result<Self> {
        let alg = letter_algebra();
        let ctx = LetterContext {
            inner: PolyContext { alg: &alg },
        };
        let mut source = Vec::new();
        for line in src.lines() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            source.push(body.split(';').map(|s| s.trim().to_string()).collect::<Vec<_>>());
        }
        let n = 2 * ell as usize + 1;
        if source.len() != n || source.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: source.len(),
            });
        }
        let entries = source
            .iter()
            .map(|row| row.iter().map(|s| parse_with(&ctx, s)).collect())
            .collect::<std::result::Result<Vec<Vec<_>>, _>>()?;
        Ok(SuperCorepFixture {
            ell,
            lambda,
            source,
            entries,
        })
    }

    pub fn t1(lambda: u8) -> Result<Self> {
        match lambda {
            0 => Self::parse(1, 0, T1_LAMBDA0),
            1 => Self::parse(1, 1, T1_LAMBDA1),
            _ => Err(Error::InvalidLabel(format!("lambda = {}", lambda))),
        }
    }

    pub fn t2() -> Result<Self> {
        Self::parse(2, 0, T2_LAMBDA0)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &GradedPoly {
        &self.entries[i][j]
    }

    /// Entries with constants expanded, in the canonical printer.
    pub fn expanded_strings(&self) -> Vec<Vec<String>> {
        let alg = letter_algebra();
        (0..self.dim())
            .map(|i| {
                (0..self.dim())
                    .map(|j| poly_to_string(&alg, self.entry(i, j)))
                    .collect()
            })
            .collect()
    }

    /// Every entry is homogeneous of parity `m' + m mod 2`; returns the first violation.
    pub fn parity_violation(&self) -> Option<(usize, usize)> {
        let alg = letter_algebra();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let p = self.entry(i, j);
                if p.is_zero() {
                    continue;
                }
                if p.parity(&alg) != Some(((i + j) % 2) as u8) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// `(-1)^{X̂ (ell - m' + lambda)} D^ell_{m'm}(X; lambda)`, row index `i` has `m' = ell - i`.
pub fn pairing_matrix_in(rep: &Irrep, x: &[UGen]) -> Matrix<QScalar> {
    let lambda = rep.label.lambda() as usize;
    let odd = word_parity(x) == 1;
    let d = rep.word_matrix(x);
    Matrix::from_fn(d.rows(), d.cols(), |i, j| {
        let v = d.get(i, j).clone();
        if odd && (i + lambda) % 2 == 1 {
            v.neg_ref()
        } else {
            v
        }
    })
}

/// `⟨X, T^(ell)_{m'm}(lambda)⟩` for every entry.
pub fn pairing_matrix(x: &[UGen], ell: u32, lambda: u8) -> Result<Matrix<QScalar>> {
    Ok(pairing_matrix_in(&build_osp_irrep(ell, lambda)?, x))
}

/// Sign attached to `⟨X_(1), u⟩⟨X_(2), v⟩` when pairing `X` with a product `uv`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KoszulConvention {
    /// `(-1)^{|X_(2)| |u|}`
    InnerPassesLeft,
    /// `(-1)^{|X_(1)| |v|}`
    OuterPassesRight,
    Unsigned,
}

impl KoszulConvention {
    pub const ALL: [KoszulConvention; 3] = [
        KoszulConvention::InnerPassesLeft,
        KoszulConvention::OuterPassesRight,
        KoszulConvention::Unsigned,
    ];
}

/// The convention used by every product pairing below.
pub const FROZEN_CONVENTION: KoszulConvention = KoszulConvention::InnerPassesLeft;

/// Pairing of U-words with letter expressions, built from the `ell = 1, lambda = 0`
/// representation.
pub struct LetterPairing {
    rep: Irrep,
    pub convention: KoszulConvention,
    atoms: RefCell<HashMap<Vec<UGen>, Rc<Matrix<QScalar>>>>,
    splits: RefCell<HashMap<Vec<UGen>, Rc<Vec<CoproductTerm>>>>,
}

impl LetterPairing {
    pub fn new(convention: KoszulConvention) -> Result<Self> {
        Ok(LetterPairing {
            rep: build_osp_irrep(1, 0)?,
            convention,
            atoms: RefCell::new(HashMap::new()),
            splits: RefCell::new(HashMap::new()),
        })
    }

    fn atoms(&self, x: &[UGen]) -> Rc<Matrix<QScalar>> {
        if let Some(m) = self.atoms.borrow().get(x) {
            return m.clone();
        }
        let m = Rc::new(pairing_matrix_in(&self.rep, x));
        self.atoms.borrow_mut().insert(x.to_vec(), m.clone());
        m
    }

    fn split(&self, x: &[UGen]) -> Rc<Vec<CoproductTerm>> {
        if let Some(t) = self.splits.borrow().get(x) {
            return t.clone();
        }
        let t = Rc::new(coproduct_word(x));
        self.splits.borrow_mut().insert(x.to_vec(), t.clone());
        t
    }

    pub fn letter(&self, x: &[UGen], letter: u16) -> QScalar {
        let (i, j) = LETTER_POS[letter as usize];
        self.atoms(x).get(i, j).clone()
    }

    fn counit(x: &[UGen]) -> QScalar {
        if x.iter().all(|g| matches!(g, UGen::K | UGen::KInv)) {
            QScalar::one()
        } else {
            QScalar::zero()
        }
    }

    /// `⟨X, l_1 l_2 ... l_n⟩` by splitting off the first letter.
    pub fn word(&self, x: &[UGen], letters: &[u16]) -> QScalar {
        match letters {
            [] => Self::counit(x),
            [l] => self.letter(x, *l),
            [l, rest @ ..] => {
                let l_odd = *l >= 5;
                let rest_odd = rest.iter().filter(|&&g| g >= 5).count() % 2 == 1;
                let mut acc = QScalar::zero();
                for t in self.split(x).iter() {
                    let a = self.letter(&t.left, *l);
                    if a.is_zero() {
                        continue;
                    }
                    let b = self.word(&t.right, rest);
                    if b.is_zero() {
                        continue;
                    }
                    let flip = match self.convention {
                        KoszulConvention::InnerPassesLeft => l_odd && word_parity(&t.right) == 1,
                        KoszulConvention::OuterPassesRight => {
                            rest_odd && word_parity(&t.left) == 1
                        }
                        KoszulConvention::Unsigned => false,
                    };
                    let mut v = a * b * QScalar::from_int(t.coeff);
                    if flip {
                        v = v.neg_ref();
                    }
                    acc = acc + v;
                }
                acc
            }
        }
    }

    pub fn poly(&self, x: &[UGen], p: &GradedPoly) -> QScalar {
        let mut acc = QScalar::zero();
        for (m, c) in &p.terms {
            if m.r != 0 || m.xi != 0 {
                continue;
            }
            acc = acc + c * self.word(x, &m.word);
        }
        acc
    }

    pub fn fixture(&self, x: &[UGen], f: &SuperCorepFixture) -> Matrix<QScalar> {
        Matrix::from_fn(f.dim(), f.dim(), |i, j| self.poly(x, f.entry(i, j)))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub ell: u32,
    pub lambda: u8,
    pub max_word_len: usize,
    pub words_checked: usize,
    pub entries_checked: usize,
    pub convention: KoszulConvention,
}

/// Compare `⟨X, fixture⟩` with `pairing_matrix(X, ell, lambda)` for all words over
/// `v+, v-, K, K^-1` up to `max_len`.
pub fn verify_fixture_duality(
    f: &SuperCorepFixture,
    max_len: usize,
    convention: KoszulConvention,
) -> Result<DualityReport> {
    let pairing = LetterPairing::new(convention)?;
    let rep = build_osp_irrep(f.ell, f.lambda)?;
    let gens = [UGen::Vp, UGen::Vm, UGen::K, UGen::KInv];
    let words = all_words(&gens, max_len);
    let mut entries = 0;
    for w in &words {
        let lhs = pairing.fixture(w, f);
        let rhs = pairing_matrix_in(&rep, w);
        if let Some((row, col)) = lhs.first_difference(&rhs) {
            return Err(Error::DualityMismatch {
                word: word_str(w),
                row,
                col,
            });
        }
        entries += f.dim() * f.dim();
    }
    Ok(DualityReport {
        ell: f.ell,
        lambda: f.lambda,
        max_word_len: max_len,
        words_checked: words.len(),
        entries_checked: entries,
        convention,
    })
}

pub fn verify_t2_duality(max_len: usize) -> Result<DualityReport> {
    verify_fixture_duality(&SuperCorepFixture::t2()?, max_len, FROZEN_CONVENTION)
}

/// Which product sign conventions reproduce `T^(2)(0)` on all words up to length 3.
pub fn convention_scan() -> Result<Vec<(KoszulConvention, bool)>> {
    let t2 = SuperCorepFixture::t2()?;
    Ok(KoszulConvention::ALL
        .iter()
        .map(|&conv| (conv, verify_fixture_duality(&t2, 3, conv).is_ok()))
        .collect())
}

/// Words up to `max_len` whose pairing with an entry of the wrong parity is nonzero.
pub fn sign_rule_violation(ell: u32, lambda: u8, max_len: usize) -> Result<Option<(String, usize, usize)>> {
    let rep = build_osp_irrep(ell, lambda)?;
    for w in all_words(&[UGen::Vp, UGen::Vm, UGen::K, UGen::KInv], max_len) {
        let p = word_parity(&w) as usize;
        let m = pairing_matrix_in(&rep, &w);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if (i + j) % 2 != p && !m.get(i, j).is_zero() {
                    return Ok(Some((word_str(&w), i, j)));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_with_parity_rule() {
        for f in [
            SuperCorepFixture::t1(0).unwrap(),
            SuperCorepFixture::t1(1).unwrap(),
            SuperCorepFixture::t2().unwrap(),
        ] {
            assert_eq!(f.parity_violation(), None);
        }
    }

    #[test]
    fn pairing_of_unit_and_k() {
        for (ell, lambda) in [(1, 0), (1, 1), (2, 0)] {
            let n = 2 * ell as usize + 1;
            assert_eq!(pairing_matrix(&[], ell, lambda).unwrap(), Matrix::identity(n));
            let k = pairing_matrix(&[UGen::K], ell, lambda).unwrap();
            let expect = Matrix::diagonal(
                (0..n).map(|i| QScalar::t_pow(ell as i64 - i as i64)).collect(),
            );
            assert_eq!(k, expect);
        }
    }

    #[test]
    fn v_minus_flips_middle_row() {
        let rep = build_osp_irrep(1, 0).unwrap();
        let d = rep.matrix(UGen::Vm).clone();
        let p = pairing_matrix(&[UGen::Vm], 1, 0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let s = if i == 1 { d.get(i, j).neg_ref() } else { d.get(i, j).clone() };
                assert_eq!(p.get(i, j), &s);
            }
        }
    }
}
