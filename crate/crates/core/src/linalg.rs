//! Exact row reduction over the coefficient field.
//!
//! Pivots must be single-term scalars; every elimination used by the engine
//! divides by coefficients of that shape.

use crate::error::Result;
use crate::field::QScalar;
use crate::ring::Matrix;
use std::collections::BTreeMap;

pub type SparseRow<K> = BTreeMap<K, QScalar>;

fn axpy<K: Ord + Clone>(row: &mut SparseRow<K>, c: &QScalar, other: &SparseRow<K>) {
    for (k, v) in other {
        let add = c * v;
        match row.get_mut(k) {
            Some(x) => {
                let s = &*x + &add;
                if s.is_zero() {
                    row.remove(k);
                } else {
                    *x = s;
                }
            }
            None => {
                if !add.is_zero() {
                    row.insert(k.clone(), add);
                }
            }
        }
    }
}

/// Incrementally maintained reduced echelon basis, pivoting on the greatest key of each row.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseRow<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduce a row against the current pivots.
    pub fn reduce(&self, row: &SparseRow<K>) -> SparseRow<K> {
        let mut r = row.clone();
        let keys: Vec<K> = r.keys().rev().cloned().collect();
        for k in keys {
            if let Some(p) = self.rows.get(&k) {
                if let Some(c) = r.get(&k).cloned() {
                    axpy(&mut r, &c.neg_ref(), p);
                }
            }
        }
        r
    }

    /// Insert a row; returns `false` when it was already in the span.
    pub fn insert(&mut self, row: &SparseRow<K>) -> Result<bool> {
        let mut r = self.reduce(row);
        let Some((lead, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return Ok(false);
        };
        let inv = c.invert()?;
        for v in r.values_mut() {
            *v = &*v * &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(c) = other.get(&lead).cloned() {
                axpy(other, &c.neg_ref(), &r);
            }
        }
        r.insert(lead.clone(), QScalar::one());
        self.rows.insert(lead, r);
        Ok(true)
    }

    pub fn contains(&self, row: &SparseRow<K>) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows keyed by pivot, greatest pivot last.
    pub fn rows(&self) -> &BTreeMap<K, SparseRow<K>> {
        &self.rows
    }

    pub fn into_rows(self) -> BTreeMap<K, SparseRow<K>> {
        self.rows
    }
}

/// Basis of `{x : A x = 0}`.
pub fn nullspace(a: &Matrix<QScalar>) -> Result<Vec<Vec<QScalar>>> {
    let mut ech: Echelon<usize> = Echelon::new();
    for i in 0..a.rows() {
        let row: SparseRow<usize> = (0..a.cols())
            .filter(|&j| !a.get(i, j).is_zero())
            .map(|j| (j, a.get(i, j).clone()))
            .collect();
        ech.insert(&row)?;
    }
    let pivots = ech.rows();
    let mut out = Vec::new();
    for f in (0..a.cols()).filter(|j| !pivots.contains_key(j)) {
        let mut v = vec![QScalar::zero(); a.cols()];
        v[f] = QScalar::one();
        for (p, row) in pivots {
            if let Some(c) = row.get(&f) {
                v[*p] = c.neg_ref();
            }
        }
        out.push(v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let a = Matrix::from_fn(2, 3, |i, j| QScalar::from_int(((i + 1) * (j + 1)) as i64));
        let ns = nullspace(&a).unwrap();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.apply(&v).iter().all(|x| x.is_zero()));
        }
    }
}
