//! Clebsch-Gordan coefficients by highest-weight construction.
//!
//! Each block vector `e^L_M = Σ C_{LM,(m1,m2)} e_{m1} ⊗ e_{m2}` is a row of the
//! table. For sl(2) the rows are orthonormal for the plain symmetric form. For
//! osp(1|2) the distinguished bases are orthonormal for the graded form
//! `g(e_{m1}⊗e_{m2}, e_{m1}⊗e_{m2}) = (-1)^{(ell1-m1)(ell2-m2)}`, with each block
//! vector normalized to `η_{LM} = ±1`:
//!
//! ```text
//! C G C^T = diag(η)        C^T diag(η) C = G
//! ```

use crate::error::{Error, Result};
use crate::field::QScalar;
use crate::linalg::nullspace;
use crate::reps::{build_irrep, decompose, tensor_matrix, HalfInt, Irrep, Label, UGen};
use crate::ring::Matrix;
use serde::Serialize;
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct CgcBlock {
    pub label: Label,
    pub irrep: Irrep,
    /// Norm sign of each block vector, ordered `M = L, ..., -L`.
    pub eta: Vec<i8>,
    /// Block vectors in the tensor basis, ordered `M = L, ..., -L`.
    pub vectors: Vec<Vec<QScalar>>,
}

#[derive(Clone, Debug)]
pub struct CgcTable {
    pub rep1: Irrep,
    pub rep2: Irrep,
    pub blocks: Vec<CgcBlock>,
    /// Graded metric on the tensor basis (all `+1` for sl(2)).
    pub metric: Vec<i8>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CgcEntry {
    pub block: String,
    pub block_parity: u8,
    pub m: String,
    pub m1: String,
    pub m2: String,
    pub value: String,
}

impl CgcTable {
    pub fn dim(&self) -> usize {
        self.rep1.dim() * self.rep2.dim()
    }

    /// Tensor-basis index of `(i1, i2)`.
    pub fn pair_index(&self, i1: usize, i2: usize) -> usize {
        i1 * self.rep2.dim() + i2
    }

    pub fn pair_weights(&self, idx: usize) -> (HalfInt, HalfInt) {
        let n2 = self.rep2.dim();
        (self.rep1.weights()[idx / n2], self.rep2.weights()[idx % n2])
    }

    pub fn block(&self, top: HalfInt) -> Option<&CgcBlock> {
        self.blocks.iter().find(|b| b.label.top() == top)
    }

    /// `C^{L}_{m1 m2 M}`, zero when any label is out of range.
    pub fn coeff(&self, big_l: HalfInt, big_m: HalfInt, m1: HalfInt, m2: HalfInt) -> QScalar {
        let Some(b) = self.block(big_l) else {
            return QScalar::zero();
        };
        let (Some(mi), Some(i1), Some(i2)) = (
            b.irrep.index_of(big_m),
            self.rep1.index_of(m1),
            self.rep2.index_of(m2),
        ) else {
            return QScalar::zero();
        };
        b.vectors[mi][self.pair_index(i1, i2)].clone()
    }

    /// Rows `(L, M)` in block order, columns the tensor basis.
    pub fn matrix(&self) -> Matrix<QScalar> {
        let rows: Vec<&Vec<QScalar>> = self.blocks.iter().flat_map(|b| b.vectors.iter()).collect();
        Matrix::from_fn(rows.len(), self.dim(), |i, j| rows[i][j].clone())
    }

    pub fn eta(&self) -> Vec<i8> {
        self.blocks.iter().flat_map(|b| b.eta.iter().copied()).collect()
    }

    fn sign_diag(signs: &[i8]) -> Matrix<QScalar> {
        Matrix::diagonal(signs.iter().map(|&s| QScalar::from_int(s as i64)).collect())
    }

    /// Both orthogonality relations as exact matrix identities.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let c = self.matrix();
        let g = Self::sign_diag(&self.metric);
        let eta = Self::sign_diag(&self.eta());
        if c.mul(&g).mul(&c.transpose()) != eta {
            return Err(Error::OrthogonalityFailure(format!(
                "row relation fails for {} x {}",
                self.rep1.label, self.rep2.label
            )));
        }
        if c.transpose().mul(&eta).mul(&c) != g {
            return Err(Error::OrthogonalityFailure(format!(
                "column relation fails for {} x {}",
                self.rep1.label, self.rep2.label
            )));
        }
        Ok(())
    }

    /// `C Δ(X) = (⊕ D^L(X)) C` for every generator.
    pub fn verify_equivariance(&self) -> Result<()> {
        let c = self.matrix();
        for g in UGen::generators(self.rep1.algebra()) {
            let lhs = tensor_matrix(&self.rep1, &self.rep2, g).mul(&c.transpose());
            let mut block = Matrix::zeros(c.rows(), c.rows());
            let mut off = 0;
            for b in &self.blocks {
                let d = b.irrep.matrix(g);
                for i in 0..d.rows() {
                    for j in 0..d.cols() {
                        block.set(off + i, off + j, d.get(i, j).clone());
                    }
                }
                off += d.rows();
            }
            // Δ(X) e^L_M = Σ_{M'} e^L_{M'} D^L(X)_{M'M}
            let rhs = c.transpose().mul(&block);
            if lhs != rhs {
                return Err(Error::OrthogonalityFailure(format!(
                    "equivariance fails for {} on {} x {}",
                    g, self.rep1.label, self.rep2.label
                )));
            }
        }
        Ok(())
    }

    /// Block coordinates of a tensor-basis vector.
    pub fn couple(&self, v: &[QScalar]) -> Result<Vec<QScalar>> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        let gv: Vec<QScalar> = v
            .iter()
            .zip(&self.metric)
            .map(|(x, &s)| if s < 0 { x.neg_ref() } else { x.clone() })
            .collect();
        let w = self.matrix().apply(&gv);
        Ok(w
            .into_iter()
            .zip(self.eta())
            .map(|(x, s)| if s < 0 { x.neg_ref() } else { x })
            .collect())
    }

    /// Tensor-basis vector from block coordinates.
    pub fn decouple(&self, w: &[QScalar]) -> Result<Vec<QScalar>> {
        if w.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: w.len(),
            });
        }
        Ok(self.matrix().transpose().apply(w))
    }

    pub fn entries(&self) -> Vec<CgcEntry> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for (mi, v) in b.vectors.iter().enumerate() {
                for (idx, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let (m1, m2) = self.pair_weights(idx);
                    out.push(CgcEntry {
                        block: b.label.top().to_string(),
                        block_parity: b.label.lambda(),
                        m: b.irrep.weights()[mi].to_string(),
                        m1: m1.to_string(),
                        m2: m2.to_string(),
                        value: c.to_string(),
                    });
                }
            }
        }
        out
    }
}

fn graded_norm(v: &[QScalar], metric: &[i8]) -> QScalar {
    let mut acc = QScalar::zero();
    for (x, &s) in v.iter().zip(metric) {
        if x.is_zero() {
            continue;
        }
        let sq = x * x;
        acc = if s < 0 { acc - sq } else { acc + sq };
    }
    acc
}

pub fn compute_cgc(l1: &Label, l2: &Label) -> Result<CgcTable> {
    let rep1 = build_irrep(l1)?;
    let rep2 = build_irrep(l2)?;
    compute_cgc_with(rep1, rep2)
}

/// Compute the table for two given irreps (of the same algebra).
pub fn compute_cgc_with(rep1: Irrep, rep2: Irrep) -> Result<CgcTable> {
    let alg = rep1.algebra();
    let n1 = rep1.dim();
    let n2 = rep2.dim();
    let n = n1 * n2;
    // the form uses the λ-independent grading ell - m, like the matrices themselves
    let intrinsic = |rep: &Irrep, i: usize| -> i32 {
        match rep.label {
            Label::Osp { ell, .. } => (ell as i32 - rep.weights()[i].int()).rem_euclid(2),
            Label::Sl2 { .. } => 0,
        }
    };
    let metric: Vec<i8> = (0..n)
        .map(|idx| {
            let (p1, p2) = (intrinsic(&rep1, idx / n2), intrinsic(&rep2, idx % n2));
            if p1 * p2 == 1 {
                -1
            } else {
                1
            }
        })
        .collect();
    let weight = |idx: usize| rep1.weights()[idx / n2].twice() + rep2.weights()[idx % n2].twice();
    let raise = tensor_matrix(&rep1, &rep2, UGen::raising(alg));
    let lower = tensor_matrix(&rep1, &rep2, UGen::lowering(alg));
    let mut blocks = Vec::new();
    for label in decompose(&rep1.label, &rep2.label)? {
        let top = label.top().twice();
        let sub: Vec<usize> = (0..n).filter(|&i| weight(i) == top).collect();
        let above: Vec<usize> = (0..n).filter(|&i| weight(i) == top + 2).collect();
        let restricted = Matrix::from_fn(above.len(), sub.len(), |i, j| raise.get(above[i], sub[j]).clone());
        let ker = if above.is_empty() {
            vec![vec![QScalar::one()]; sub.len().min(1)]
        } else {
            nullspace(&restricted)?
        };
        if ker.len() != 1 {
            return Err(Error::HighestWeightNotFound(format!(
                "{} in {} x {}: kernel dimension {}",
                label,
                rep1.label,
                rep2.label,
                ker.len()
            )));
        }
        let mut hw = vec![QScalar::zero(); n];
        for (j, &idx) in sub.iter().enumerate() {
            hw[idx] = ker[0][j].clone();
        }
        let norm2 = graded_norm(&hw, &metric);
        let s = norm2.sign_near_one().ok_or_else(|| {
            Error::OrthogonalityFailure(format!("norm of highest weight of {} is not definite", label))
        })?;
        let norm2 = if s == Ordering::Less { norm2.neg_ref() } else { norm2 };
        let inv = norm2.sqrt()?.invert()?;
        let mut v: Vec<QScalar> = hw.iter().map(|x| x * &inv).collect();
        // sign convention: first nonzero coefficient positive
        let first = v.iter().find(|x| !x.is_zero()).cloned().expect("nonzero");
        if first.sign_near_one() == Some(Ordering::Less) {
            v = v.iter().map(|x| x.neg_ref()).collect();
        }
        let irrep = build_irrep(&label)?;
        let low = irrep.matrix(UGen::lowering(alg));
        let mut vectors = vec![v];
        for k in 1..irrep.dim() {
            let prev = &vectors[k - 1];
            let d = low.get(k, k - 1);
            let dinv = d.invert()?;
            let next: Vec<QScalar> = lower.apply(prev).iter().map(|x| x * &dinv).collect();
            vectors.push(next);
        }
        let mut eta = Vec::new();
        for v in &vectors {
            let nv = graded_norm(v, &metric);
            if nv.is_one() {
                eta.push(1);
            } else if nv.neg_ref().is_one() {
                eta.push(-1);
            } else {
                return Err(Error::OrthogonalityFailure(format!(
                    "block vector of {} has norm {}",
                    label, nv
                )));
            }
        }
        blocks.push(CgcBlock {
            label,
            irrep,
            eta,
            vectors,
        });
    }
    let table = CgcTable {
        rep1,
        rep2,
        blocks,
        metric,
    };
    table.verify_orthogonality()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthogonal_and_equivariant_small_labels() {
        let mut labels: Vec<Label> = (0..=3).map(Label::sl2).collect();
        labels.extend([Label::osp(0, 0), Label::osp(1, 0), Label::osp(1, 1), Label::osp(2, 0)]);
        for a in &labels {
            for b in &labels {
                if a.algebra() != b.algebra() {
                    continue;
                }
                let t = compute_cgc(a, b).unwrap();
                t.verify_equivariance().unwrap();
            }
        }
    }

    #[test]
    fn spin_half_singlet_ratio() {
        let t = compute_cgc(&Label::sl2(1), &Label::sl2(1)).unwrap();
        let h = HalfInt(1);
        let a = t.coeff(HalfInt(0), HalfInt(0), h, HalfInt(-1));
        let b = t.coeff(HalfInt(0), HalfInt(0), HalfInt(-1), h);
        assert_eq!(b.div(&a).unwrap(), QScalar::q_pow(1).neg_ref());
    }

    #[test]
    fn osp_one_one_scalar_ratios() {
        let t = compute_cgc(&Label::osp(1, 0), &Label::osp(1, 0)).unwrap();
        let z = HalfInt(0);
        let c = |m1: i32, m2: i32| t.coeff(z, z, HalfInt::from_int(m1), HalfInt::from_int(m2));
        let mid = c(0, 0);
        assert_eq!(c(-1, 1).div(&mid).unwrap(), QScalar::t_pow(1));
        assert_eq!(c(1, -1).div(&mid).unwrap(), QScalar::t_pow(-1).neg_ref());
    }
}
