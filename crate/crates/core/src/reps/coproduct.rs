//! Coproduct conventions, in one place:
//!
//! ```text
//! Δ(K)   = K ⊗ K            Δ(K^-1) = K^-1 ⊗ K^-1
//! Δ(E)   = E ⊗ K^-1 + K ⊗ E  Δ(F)    = F ⊗ K^-1 + K ⊗ F
//! Δ(v±)  = v± ⊗ K^-1 + K ⊗ v±
//! ```
//!
//! Tensor products are graded: `(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd` and
//! `(a ⊗ b)(x ⊗ y) = (-1)^{|b||x|} ax ⊗ by` on vectors.

use super::{word_parity, Irrep, UGen};
use crate::ring::Matrix;
use crate::field::QScalar;
use std::collections::BTreeMap;

/// One Sweedler term `sign * left ⊗ right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductTerm {
    pub coeff: i64,
    pub left: Vec<UGen>,
    pub right: Vec<UGen>,
}

/// `Δ(g)` as a list of `(left, right)` single-generator factors; `None` is the unit.
pub fn coproduct_gen(g: UGen) -> Vec<(Option<UGen>, Option<UGen>)> {
    match g {
        UGen::K => vec![(Some(UGen::K), Some(UGen::K))],
        UGen::KInv => vec![(Some(UGen::KInv), Some(UGen::KInv))],
        x => vec![(Some(x), Some(UGen::KInv)), (Some(UGen::K), Some(x))],
    }
}

/// Cancel adjacent `K K^-1` pairs.
fn reduce_word(w: Vec<UGen>) -> Vec<UGen> {
    let mut out: Vec<UGen> = Vec::with_capacity(w.len());
    for g in w {
        match (out.last(), g) {
            (Some(UGen::K), UGen::KInv) | (Some(UGen::KInv), UGen::K) => {
                out.pop();
            }
            _ => out.push(g),
        }
    }
    out
}

/// Sweedler expansion of `Δ(X_1 ... X_n) = Δ(X_1) ... Δ(X_n)` with Koszul signs.
pub fn coproduct_word(word: &[UGen]) -> Vec<CoproductTerm> {
    let mut acc: BTreeMap<(Vec<UGen>, Vec<UGen>), i64> = BTreeMap::new();
    acc.insert((Vec::new(), Vec::new()), 1);
    for &g in word {
        let mut next: BTreeMap<(Vec<UGen>, Vec<UGen>), i64> = BTreeMap::new();
        for ((l, r), c) in &acc {
            for (a, b) in coproduct_gen(g) {
                let a_par = a.map_or(0, |x| x.parity());
                // (l ⊗ r)(a ⊗ b) = (-1)^{|r||a|} la ⊗ rb
                let sign = if word_parity(r) == 1 && a_par == 1 { -1 } else { 1 };
                let mut nl = l.clone();
                nl.extend(a);
                let mut nr = r.clone();
                nr.extend(b);
                *next.entry((reduce_word(nl), reduce_word(nr))).or_insert(0) += sign * c;
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    acc.into_iter()
        .map(|((left, right), coeff)| CoproductTerm { coeff, left, right })
        .collect()
}

/// Matrix of `Δ(g)` on `rep1 ⊗ rep2`, basis ordered `(i1, i2)` lexicographically.
pub fn tensor_matrix(rep1: &Irrep, rep2: &Irrep, g: UGen) -> Matrix<QScalar> {
    let (n1, n2) = (rep1.dim(), rep2.dim());
    let mut out = Matrix::zeros(n1 * n2, n1 * n2);
    for (a, b) in coproduct_gen(g) {
        let ma = a.map_or_else(|| Matrix::identity(n1), |x| rep1.matrix(x).clone());
        let mb = b.map_or_else(|| Matrix::identity(n2), |x| rep2.matrix(x).clone());
        let b_odd = b.is_some_and(|x| x.is_odd());
        out = out.add(&ma.kron_graded(&mb, rep1.parities(), b_odd));
    }
    out
}

pub fn tensor_word_matrix(rep1: &Irrep, rep2: &Irrep, w: &[UGen]) -> Matrix<QScalar> {
    let n = rep1.dim() * rep2.dim();
    let mut m = Matrix::identity(n);
    for g in w {
        m = m.mul(&tensor_matrix(rep1, rep2, *g));
    }
    m
}

/// Matrix of a Sweedler expansion `Σ c left ⊗ right` on `rep1 ⊗ rep2`.
pub fn sweedler_matrix(rep1: &Irrep, rep2: &Irrep, terms: &[CoproductTerm]) -> Matrix<QScalar> {
    let n = rep1.dim() * rep2.dim();
    let mut out = Matrix::zeros(n, n);
    for t in terms {
        let ml = rep1.word_matrix(&t.left);
        let mr = rep2.word_matrix(&t.right);
        let m = ml
            .kron_graded(&mr, rep1.parities(), word_parity(&t.right) == 1)
            .scale(&QScalar::from_int(t.coeff));
        out = out.add(&m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{build_osp_irrep, build_sl2_irrep, Normalization};

    #[test]
    fn sweedler_expansion_matches_product_of_tensor_matrices() {
        let r1 = build_osp_irrep(1, 0).unwrap();
        let r2 = build_osp_irrep(1, 0).unwrap();
        let w = [UGen::Vp, UGen::Vm, UGen::K, UGen::Vp];
        assert_eq!(
            sweedler_matrix(&r1, &r2, &coproduct_word(&w)),
            tensor_word_matrix(&r1, &r2, &w)
        );
        let s1 = build_sl2_irrep(1, Normalization::Symmetric).unwrap();
        let s2 = build_sl2_irrep(2, Normalization::Symmetric).unwrap();
        let w = [UGen::E, UGen::F, UGen::F];
        assert_eq!(
            sweedler_matrix(&s1, &s2, &coproduct_word(&w)),
            tensor_word_matrix(&s1, &s2, &w)
        );
    }
}
