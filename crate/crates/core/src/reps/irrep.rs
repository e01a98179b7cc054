use super::{AlgebraKind, HalfInt, Label, UGen};
use crate::error::{Error, Result};
use crate::field::QScalar;
use crate::ring::{Matrix, Ring};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// Radical-bearing entries making the sl(2) raising and lowering matrices transposes.
    #[default]
    Symmetric,
    /// Radical-free entries.
    Rational,
}

/// Irreducible representation as a generator-to-matrix map; basis ordered `m = top, ..., -top`.
#[derive(Clone, Debug)]
pub struct Irrep {
    pub label: Label,
    pub normalization: Normalization,
    weights: Vec<HalfInt>,
    parities: Vec<u8>,
    mats: BTreeMap<UGen, Matrix<QScalar>>,
}

impl Irrep {
    pub fn algebra(&self) -> AlgebraKind {
        self.label.algebra()
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[HalfInt] {
        &self.weights
    }

    pub fn parities(&self) -> &[u8] {
        &self.parities
    }

    pub fn index_of(&self, m: HalfInt) -> Option<usize> {
        self.weights.iter().position(|&w| w == m)
    }

    pub fn matrix(&self, g: UGen) -> &Matrix<QScalar> {
        self.mats
            .get(&g)
            .unwrap_or_else(|| panic!("generator {} not in {}", g, self.label))
    }

    pub fn has_generator(&self, g: UGen) -> bool {
        self.mats.contains_key(&g)
    }

    pub fn word_matrix(&self, w: &[UGen]) -> Matrix<QScalar> {
        let mut m = Matrix::identity(self.dim());
        for g in w {
            m = m.mul(self.matrix(*g));
        }
        m
    }

    /// Replace a generator matrix (used to build perturbed negative controls).
    pub fn with_matrix(&self, g: UGen, m: Matrix<QScalar>) -> Irrep {
        let mut out = self.clone();
        out.mats.insert(g, m);
        out
    }

    /// Check every defining relation entrywise.
    pub fn verify_relations(&self) -> RelationReport {
        let n = self.dim();
        let id = Matrix::<QScalar>::identity(n);
        let k = self.matrix(UGen::K);
        let ki = self.matrix(UGen::KInv);
        let k2 = k.mul(k);
        let ki2 = ki.mul(ki);
        let mut checks = vec![
            ("K K^-1 = 1".to_string(), k.mul(ki) == id),
            ("K^-1 K = 1".to_string(), ki.mul(k) == id),
        ];
        match self.algebra() {
            AlgebraKind::Sl2 => {
                let e = self.matrix(UGen::E);
                let f = self.matrix(UGen::F);
                let q = QScalar::q_pow(1);
                checks.push((
                    "K E = q E K".to_string(),
                    k.mul(e) == e.mul(k).scale(&q),
                ));
                checks.push((
                    "K F = q^(-1) F K".to_string(),
                    k.mul(f) == f.mul(k).scale(&QScalar::q_pow(-1)),
                ));
                let rhs = k2
                    .sub(&ki2)
                    .scale(&(QScalar::q_pow(1) - QScalar::q_pow(-1)).invert().expect("nonzero"));
                checks.push((
                    "[E,F] = (K^2 - K^-2)/(q - q^-1)".to_string(),
                    e.mul(f).sub(&f.mul(e)) == rhs,
                ));
            }
            AlgebraKind::Osp => {
                let vp = self.matrix(UGen::Vp);
                let vm = self.matrix(UGen::Vm);
                checks.push((
                    "K v+ = q^(1/2) v+ K".to_string(),
                    k.mul(vp) == vp.mul(k).scale(&QScalar::t_pow(1)),
                ));
                checks.push((
                    "K v- = q^(-1/2) v- K".to_string(),
                    k.mul(vm) == vm.mul(k).scale(&QScalar::t_pow(-1)),
                ));
                let denom = QScalar::q_pow(4) - QScalar::q_pow(-4);
                let rhs = k2
                    .sub(&ki2)
                    .scale(&denom.invert().expect("nonzero").neg_ref());
                checks.push((
                    "{v+,v-} = -(K^2 - K^-2)/(q^4 - q^-4)".to_string(),
                    vp.mul(vm).add(&vm.mul(vp)) == rhs,
                ));
            }
        }
        RelationReport { checks }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub checks: Vec<(String, bool)>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

fn diag_k(weights: &[HalfInt], osp: bool, inverse: bool) -> Matrix<QScalar> {
    Matrix::diagonal(
        weights
            .iter()
            .map(|m| {
                // sl2: q^m = t^(2m); osp: q^(m/2) = t^m
                let k = if osp { m.int() as i64 } else { m.twice() as i64 };
                QScalar::t_pow(if inverse { -k } else { k })
            })
            .collect(),
    )
}

/// Spin-`j` representation of U_q[sl(2)] with `K e_m = q^m e_m`.
pub fn build_sl2_irrep(twice_j: i32, normalization: Normalization) -> Result<Irrep> {
    if twice_j < 0 {
        return Err(Error::InvalidLabel(format!("2j = {} is negative", twice_j)));
    }
    let label = Label::sl2(twice_j);
    let weights = label.weights();
    let n = weights.len();
    let mut e = Matrix::zeros(n, n);
    let mut f = Matrix::zeros(n, n);
    // E e_m -> e_{m+1}; column index i has weight m, row i-1 has weight m+1
    for (i, &m) in weights.iter().enumerate().skip(1) {
        let a = (twice_j - m.twice()) / 2; // j - m
        let b = (twice_j + m.twice()) / 2 + 1; // j + m + 1
        match normalization {
            Normalization::Symmetric => {
                let x = QScalar::qint_sl2(a as i64) * QScalar::qint_sl2(b as i64);
                let s = x.sqrt()?;
                e.set(i - 1, i, s.clone());
                f.set(i, i - 1, s);
            }
            Normalization::Rational => {
                // E e_m = [j+m+1] e_{m+1}, F e_{m+1} = [j-m] e_m
                e.set(i - 1, i, QScalar::qint_sl2(b as i64));
                f.set(i, i - 1, QScalar::qint_sl2(a as i64));
            }
        }
    }
    let mut mats = BTreeMap::new();
    mats.insert(UGen::E, e);
    mats.insert(UGen::F, f);
    mats.insert(UGen::K, diag_k(&weights, false, false));
    mats.insert(UGen::KInv, diag_k(&weights, false, true));
    Ok(Irrep {
        label,
        normalization,
        parities: vec![0; n],
        weights,
        mats,
    })
}

/// `[m]' = (q^m - q^-m)/(q^4 - q^-4)`, the eigenvalue of `-{v+,v-}` on weight `m`.
fn anticommutator_eigen(m: i32) -> QScalar {
    let num = QScalar::q_pow(m as i64) - QScalar::q_pow(-(m as i64));
    let den = QScalar::q_pow(4) - QScalar::q_pow(-4);
    num.div(&den).expect("nonzero")
}

/// Representation `(ell, lambda)` of U_q[osp(1|2)] with `K e_m = q^(m/2) e_m`.
///
/// The products `p_m = D(v+)_{m,m-1} D(v-)_{m-1,m}` are fixed by the anticommutator
/// recursion from `v+ e_ell = 0`. Entries are split as `sqrt(eps_m p_m)` on `v+` and
/// `eps_m sqrt(eps_m p_m)` on `v-` with `eps_m = -(-1)^(ell-m)`, which keeps every
/// radicand positive near `q = 1`.
pub fn build_osp_irrep(ell: u32, lambda: u8) -> Result<Irrep> {
    let label = Label::osp(ell, lambda);
    let weights = label.weights();
    let n = weights.len();
    let l = ell as i32;
    // p[m] for m = ell+1 down to -ell
    let mut p: BTreeMap<i32, QScalar> = BTreeMap::new();
    p.insert(l + 1, QScalar::zero());
    for m in (-l..=l).rev() {
        let v = anticommutator_eigen(m).neg_ref() - &p[&(m + 1)];
        p.insert(m, v);
    }
    if !p[&(-l)].is_zero() {
        return Err(Error::RecursionInconsistent(format!(
            "lowest weight of ell={} not annihilated: p = {}",
            ell,
            p[&(-l)]
        )));
    }
    let mut vp = Matrix::zeros(n, n);
    let mut vm = Matrix::zeros(n, n);
    for i in 1..n {
        // v+ : e_{m-1} (column i) -> e_m (row i-1) with m = weights[i-1]
        let m = weights[i - 1].int();
        let eps = if (l - m).rem_euclid(2) == 0 { -1 } else { 1 };
        let pm = &p[&m];
        let x = (pm * &QScalar::from_int(eps)).sqrt()?;
        if x.sign_near_one() != Some(std::cmp::Ordering::Greater) {
            return Err(Error::RecursionInconsistent(format!(
                "radicand for v+ at m={} is not positive near q=1",
                m
            )));
        }
        vp.set(i - 1, i, x.clone());
        vm.set(i, i - 1, x.times(&QScalar::from_int(eps)));
    }
    let mut mats = BTreeMap::new();
    mats.insert(UGen::Vp, vp);
    mats.insert(UGen::Vm, vm);
    mats.insert(UGen::K, diag_k(&weights, true, false));
    mats.insert(UGen::KInv, diag_k(&weights, true, true));
    let parities = weights.iter().map(|&m| label.parity_of(m)).collect();
    Ok(Irrep {
        label,
        normalization: Normalization::Symmetric,
        weights,
        parities,
        mats,
    })
}

pub fn build_irrep(label: &Label) -> Result<Irrep> {
    match *label {
        Label::Sl2 { j } => build_sl2_irrep(j.twice(), Normalization::Symmetric),
        Label::Osp { ell, lambda } => build_osp_irrep(ell, lambda),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_relations_hold() {
        for tj in 0..=4 {
            for norm in [Normalization::Symmetric, Normalization::Rational] {
                let r = build_sl2_irrep(tj, norm).unwrap();
                assert!(r.verify_relations().passed(), "2j={} {:?}", tj, norm);
            }
        }
    }

    #[test]
    fn osp_relations_and_parities() {
        for ell in 0..=3 {
            for lambda in 0..=1 {
                let r = build_osp_irrep(ell, lambda).unwrap();
                let rep = r.verify_relations();
                assert!(rep.passed(), "ell={} {:?}", ell, rep.failures());
            }
        }
        assert_eq!(build_osp_irrep(1, 0).unwrap().parities(), &[0, 1, 0]);
        assert_eq!(build_osp_irrep(2, 0).unwrap().parities(), &[0, 1, 0, 1, 0]);
    }

    #[test]
    fn perturbed_entry_breaks_anticommutator() {
        let r = build_osp_irrep(1, 0).unwrap();
        let mut vp = r.matrix(UGen::Vp).clone();
        vp.set(0, 1, vp.get(0, 1).plus(&QScalar::one()));
        let bad = r.with_matrix(UGen::Vp, vp);
        let rep = bad.verify_relations();
        assert_eq!(rep.failures(), vec!["{v+,v-} = -(K^2 - K^-2)/(q^4 - q^-4)"]);
    }
}
