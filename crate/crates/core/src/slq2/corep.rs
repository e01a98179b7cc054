//! Corepresentation matrices of SL_q(2), the duality pairing with U_q[sl(2)]
//! and coaction-side covariance checks.

use super::{parse_hopf, HopfElement, HopfTensor, SlGen, SlMono};
use crate::cgc::compute_cgc;
use crate::error::{Error, Result};
use crate::field::QScalar;
use crate::freealg::{GradedPoly, Mono, RelationSet};
use crate::reps::{build_sl2_irrep, Irrep, Label, Normalization, UGen};
use crate::ring::{Matrix, Ring};
use serde::Serialize;
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

pub type CorepMatrix = Matrix<HopfElement>;

/// `T^(j)` for `2j = twice_j`, indices ordered `m = j, ..., -j`, built by
/// coupling `T^(1/2)` with `T^(j-1/2)`.
pub fn build_corep(twice_j: i32) -> Result<CorepMatrix> {
    match twice_j {
        j if j < 0 => Err(Error::InvalidLabel(format!("2j = {}", j))),
        0 => Ok(Matrix::identity(1)),
        1 => Ok(Matrix::from_fn(2, 2, |i, j| HopfElement::gen(SlGen::from_entry(i, j)))),
        _ => {
            let half = build_corep(1)?;
            let prev = build_corep(twice_j - 1)?;
            let table = compute_cgc(&Label::sl2(1), &Label::sl2(twice_j - 1))?;
            let block = table
                .block(Label::sl2(twice_j).top())
                .ok_or_else(|| Error::HighestWeightNotFound(format!("2j={}", twice_j)))?;
            Ok(couple(&half, &prev, &block.vectors, &block.vectors))
        }
    }
}

/// `Σ C_{M,(m1 m2)} C'_{M',(m1' m2')} T1_{m1 m1'} T2_{m2 m2'}`.
fn couple(
    t1: &CorepMatrix,
    t2: &CorepMatrix,
    rows: &[Vec<QScalar>],
    cols: &[Vec<QScalar>],
) -> CorepMatrix {
    let n2 = t2.rows();
    let n = t1.rows() * n2;
    let mut prod: HashMap<(usize, usize), HopfElement> = HashMap::new();
    let mut entry = |i: usize, k: usize| -> HopfElement {
        prod.entry((i, k))
            .or_insert_with(|| t1.get(i / n2, k / n2).mul(t2.get(i % n2, k % n2)))
            .clone()
    };
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (a, ra) in rows.iter().enumerate() {
        for (b, cb) in cols.iter().enumerate() {
            let mut acc = HopfElement::zero();
            for i in (0..n).filter(|&i| !ra[i].is_zero()) {
                for k in (0..n).filter(|&k| !cb[k].is_zero()) {
                    acc = acc.add(&entry(i, k).scale(&(&ra[i] * &cb[k])));
                }
            }
            out.set(a, b, acc);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct WignerReport {
    pub twice_j1: i32,
    pub twice_j2: i32,
    pub entries_checked: usize,
}

/// Wigner product law: the coupled product of `T^(j1)` and `T^(j2)` is block
/// diagonal with blocks `T^(j)` (off-diagonal blocks vanish).
pub fn verify_wigner(twice_j1: i32, twice_j2: i32) -> Result<WignerReport> {
    let t1 = build_corep(twice_j1)?;
    let t2 = build_corep(twice_j2)?;
    let table = compute_cgc(&Label::sl2(twice_j1), &Label::sl2(twice_j2))?;
    let mut checked = 0;
    for bj in &table.blocks {
        let tj = build_corep(bj.label.top().twice())?;
        for bk in &table.blocks {
            let w = couple(&t1, &t2, &bj.vectors, &bk.vectors);
            let expect = if bj.label == bk.label {
                tj.clone()
            } else {
                Matrix::zeros(w.rows(), w.cols())
            };
            if let Some((r, c)) = w.first_difference(&expect) {
                return Err(Error::CovarianceBroken {
                    generator: "Wigner product law".into(),
                    m: format!("{} x {} -> ({}, {})", bj.label, bk.label, r, c),
                    difference: w.get(r, c).sub(expect.get(r, c)).to_string(),
                });
            }
            checked += w.rows() * w.cols();
        }
    }
    Ok(WignerReport {
        twice_j1,
        twice_j2,
        entries_checked: checked,
    })
}

/// `Δ(T) = T ⊗̇ T`, `ε(T) = 1`, `S(T) T = T S(T) = 1`.
pub fn verify_comodule_axioms(t: &CorepMatrix) -> Result<usize> {
    let n = t.rows();
    let fail = |what: &str, i: usize, j: usize, d: String| Error::CovarianceBroken {
        generator: what.to_string(),
        m: format!("({}, {})", i, j),
        difference: d,
    };
    for i in 0..n {
        for j in 0..n {
            let lhs = t.get(i, j).coproduct();
            let rhs = (0..n).fold(HopfTensor::zero(), |acc, k| {
                acc.add(&HopfTensor::pure(t.get(i, k), t.get(k, j)))
            });
            if lhs != rhs {
                return Err(fail("coproduct", i, j, "Δ(T) != T ⊗ T".into()));
            }
            let e = t.get(i, j).counit();
            let want = if i == j { QScalar::one() } else { QScalar::zero() };
            if e != want {
                return Err(fail("counit", i, j, e.to_string()));
            }
        }
    }
    let s = t.map(|x| x.antipode());
    let id = Matrix::identity(n);
    for (name, m) in [("antipode S(T)T", s.mul(t)), ("antipode T S(T)", t.mul(&s))] {
        if let Some((i, j)) = m.first_difference(&id) {
            return Err(fail(name, i, j, m.get(i, j).sub(id.get(i, j)).to_string()));
        }
    }
    Ok(3 * n * n)
}

/// Duality pairing `⟨X, u⟩` between words in `E, F, K, K^-1` and SL_q(2),
/// fixed by `⟨X, T^(1/2)_{m'm}⟩ = D^(1/2)(X)_{m'm}` and `⟨X, uv⟩ = Σ ⟨X_(1), u⟩⟨X_(2), v⟩`.
type PairCache = RefCell<HashMap<(Vec<UGen>, usize), Matrix<QScalar>>>;

pub struct Pairing {
    half: Irrep,
    cache: PairCache,
}

impl Pairing {
    pub fn new() -> Result<Self> {
        Ok(Pairing {
            half: build_sl2_irrep(1, Normalization::Symmetric)?,
            cache: RefCell::new(HashMap::new()),
        })
    }

    /// Matrix of `X` on the n-fold tensor power of the spin-1/2 module.
    fn power_matrix(&self, x: &[UGen], n: usize) -> Matrix<QScalar> {
        if let Some(m) = self.cache.borrow().get(&(x.to_vec(), n)) {
            return m.clone();
        }
        let d = |g: UGen| self.half.matrix(g).clone();
        let kron_all = |fs: Vec<Matrix<QScalar>>| {
            fs.into_iter()
                .reduce(|a, b| a.kron(&b))
                .unwrap_or_else(|| Matrix::identity(1))
        };
        let mut m = Matrix::identity(1 << n);
        for &g in x {
            let gm = match g {
                UGen::K | UGen::KInv => kron_all(vec![d(g); n]),
                _ => (0..n).fold(Matrix::zeros(1 << n, 1 << n), |acc, k| {
                    let mut fs = vec![d(UGen::K); k];
                    fs.push(d(g));
                    fs.extend(vec![d(UGen::KInv); n - k - 1]);
                    acc.add(&kron_all(fs))
                }),
            };
            m = m.mul(&gm);
        }
        self.cache.borrow_mut().insert((x.to_vec(), n), m.clone());
        m
    }

    /// Pairing with an unreduced product of letters.
    pub fn pair_letters(&self, x: &[UGen], letters: &[SlGen]) -> QScalar {
        let n = letters.len();
        let m = self.power_matrix(x, n);
        let (mut r, mut c) = (0, 0);
        for g in letters {
            let (i, j) = g.entry();
            r = 2 * r + i;
            c = 2 * c + j;
        }
        m.get(r, c).clone()
    }

    pub fn pair(&self, x: &[UGen], u: &HopfElement) -> QScalar {
        u.terms.iter().fold(QScalar::zero(), |acc, (m, c)| {
            &acc + &(c * &self.pair_letters(x, &m.letters()))
        })
    }

    /// `⟨XY, u⟩` evaluated as `Σ ⟨X, u_(1)⟩⟨Y, u_(2)⟩`.
    pub fn pair_via_coproduct(&self, x: &[UGen], y: &[UGen], u: &HopfElement) -> QScalar {
        u.coproduct().terms.iter().fold(QScalar::zero(), |acc, ((l, r), c)| {
            let pl = self.pair_letters(x, &l.letters());
            let pr = self.pair_letters(y, &r.letters());
            &acc + &(&(c * &pl) * &pr)
        })
    }

    pub fn pair_matrix(&self, x: &[UGen], t: &CorepMatrix) -> Matrix<QScalar> {
        Matrix::from_fn(t.rows(), t.cols(), |i, j| self.pair(x, t.get(i, j)))
    }
}

/// `⟨X, T^(j)⟩ = D^(j)(X)` for every word of length `<= max_len`.
pub fn verify_duality(twice_j: i32, max_len: usize) -> Result<usize> {
    let pairing = Pairing::new()?;
    let t = build_corep(twice_j)?;
    let irrep = build_sl2_irrep(twice_j, Normalization::Symmetric)?;
    let words = crate::reps::all_words(&[UGen::E, UGen::F, UGen::K, UGen::KInv], max_len);
    for w in &words {
        let lhs = pairing.pair_matrix(w, &t);
        let rhs = irrep.word_matrix(w);
        if let Some((row, col)) = lhs.first_difference(&rhs) {
            return Err(Error::DualityMismatch {
                word: crate::reps::word_str(w),
                row,
                col,
            });
        }
    }
    Ok(words.len())
}

#[derive(Clone, Debug, Serialize)]
pub struct CoactionReport {
    pub relations_checked: usize,
    pub components_checked: usize,
}

type Coaction = BTreeMap<SlMono, GradedPoly>;

/// `x_{w1} ... x_{wn} ↦ Σ x_{w'} ⊗ T_{w'1 w1} ... T_{w'n wn}`, grouped by the SL_q(2) monomial.
fn coact(p: &GradedPoly, t: &CorepMatrix) -> Coaction {
    let n = t.rows();
    let mut out: Coaction = BTreeMap::new();
    for (m, c) in &p.terms {
        let len = m.word.len();
        let mut stack: Vec<(Vec<u16>, HopfElement)> = vec![(Vec::new(), HopfElement::one())];
        for pos in 0..len {
            let mut next = Vec::new();
            for (w, a) in &stack {
                for row in 0..n {
                    let e = t.get(row, m.word[pos] as usize);
                    if e.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.push(row as u16);
                    next.push((w2, a.mul(e)));
                }
            }
            stack = next;
        }
        for (w, a) in stack {
            let vm = Mono { word: w, r: m.r, xi: m.xi };
            for (am, ac) in &a.terms {
                out.entry(*am).or_insert_with(GradedPoly::zero).add_term(vm.clone(), c * ac);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Apply the coaction of `T^(j)` to every relation and reduce the comodule
/// side by the set: each component must vanish. Generators are read as the
/// basis `x_m`, `m = j, ..., -j`, in order.
pub fn verify_coaction(twice_j: i32, set: &RelationSet) -> Result<CoactionReport> {
    let t = build_corep(twice_j)?;
    if set.alg.gens.len() != t.rows() {
        return Err(Error::DimensionMismatch {
            expected: t.rows(),
            got: set.alg.gens.len(),
        });
    }
    let polys: Vec<GradedPoly> = set
        .rules()
        .iter()
        .map(|r| r.poly())
        .chain(set.residual().iter().map(|r| r.poly.clone()))
        .collect();
    let mut components = 0;
    for p in &polys {
        for (am, v) in coact(p, &t) {
            let nf = set.normal_form(&v);
            components += 1;
            if !nf.is_zero() {
                return Err(Error::CovarianceBroken {
                    generator: "coaction".into(),
                    m: format!("{} = 0", set.poly_str(p)),
                    difference: format!(
                        "({}) ⊗ {}",
                        set.poly_str(&nf),
                        HopfElement::from_mono(am, QScalar::one())
                    ),
                });
            }
        }
    }
    Ok(CoactionReport {
        relations_checked: polys.len(),
        components_checked: components,
    })
}

/// `φ(μ(e^J_M)) = Σ_{M'} μ(e^J_{M'}) ⊗ T^(J)_{M'M}` as an identity in the free algebra.
pub fn verify_composite_coaction(twice_j: i32) -> Result<usize> {
    let t = build_corep(twice_j)?;
    let table = compute_cgc(&Label::sl2(twice_j), &Label::sl2(twice_j))?;
    let n = t.rows();
    let mut checked = 0;
    for block in &table.blocks {
        let tj = build_corep(block.label.top().twice())?;
        let composites: Vec<GradedPoly> = block
            .vectors
            .iter()
            .map(|v| {
                let mut p = GradedPoly::zero();
                for (i, c) in v.iter().enumerate() {
                    p.add_term(Mono::word(vec![(i / n) as u16, (i % n) as u16]), c.clone());
                }
                p
            })
            .collect();
        for (mi, comp) in composites.iter().enumerate() {
            let lhs = coact(comp, &t);
            let mut rhs: Coaction = BTreeMap::new();
            for (mj, other) in composites.iter().enumerate() {
                for (am, ac) in &tj.get(mj, mi).terms {
                    let e = rhs.entry(*am).or_insert_with(GradedPoly::zero);
                    *e = e.add(&other.scale(ac));
                }
            }
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Err(Error::CovarianceBroken {
                    generator: "coaction".into(),
                    m: format!("{}, M index {}", block.label, mi),
                    difference: "composite does not transform by T^(J)".into(),
                });
            }
            checked += 1;
        }
    }
    Ok(checked)
}

/// Parse a matrix fixture: one row per line, entries separated by `;`, `#` comments.
pub fn parse_hopf_matrix(src: &str) -> Result<CorepMatrix> {
    let rows: Vec<Vec<HopfElement>> = src
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split(';')
                .map(|e| parse_hopf(e.trim()).map_err(Error::from))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Input("matrix fixture is not square".into()));
    }
    Ok(Matrix::from_fn(n, n, |i, j| rows[i][j].clone()))
}

/// Signs `s_i = ±1` with `a_ij = s_i s_j b_ij`, if any exist.
pub fn equal_up_to_basis_signs<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Vec<i8>> {
    let n = a.rows();
    if b.rows() != n || a.cols() != n || b.cols() != n {
        return None;
    }
    let mut s: Vec<Option<i8>> = vec![None; n];
    s[0] = Some(1);
    for _ in 0..n {
        for i in 0..n {
            for j in 0..n {
                let (Some(si), None) = (s[i], s[j]) else { continue };
                let bij = b.get(i, j);
                if bij.is_zero() {
                    continue;
                }
                let aij = a.get(i, j);
                if *aij == *bij {
                    s[j] = Some(si);
                } else if *aij == bij.negate() {
                    s[j] = Some(-si);
                } else {
                    return None;
                }
            }
        }
    }
    let s: Vec<i8> = s.into_iter().map(|x| x.unwrap_or(1)).collect();
    for i in 0..n {
        for j in 0..n {
            let want = if s[i] * s[j] > 0 {
                b.get(i, j).clone()
            } else {
                b.get(i, j).negate()
            };
            if *a.get(i, j) != want {
                return None;
            }
        }
    }
    Some(s)
}

pub fn matrix_to_strings(t: &CorepMatrix) -> Vec<Vec<String>> {
    (0..t.rows())
        .map(|i| (0..t.cols()).map(|j| t.get(i, j).to_string()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_on_generators() {
        let p = Pairing::new().unwrap();
        assert_eq!(p.pair(&[UGen::K], &HopfElement::gen(SlGen::A)), QScalar::t_pow(1));
        assert_eq!(p.pair(&[UGen::E], &HopfElement::gen(SlGen::B)), QScalar::one());
        assert_eq!(p.pair(&[], &parse_hopf("1 + a*d + b").unwrap()), QScalar::from_int(2));
    }

    #[test]
    fn pairing_respects_defining_relations() {
        use SlGen::*;
        let p = Pairing::new().unwrap();
        let q = QScalar::q_pow(1);
        let qi = QScalar::q_pow(-1);
        let rels: Vec<Vec<(QScalar, Vec<SlGen>)>> = vec![
            vec![(QScalar::one(), vec![A, B]), (q.neg_ref(), vec![B, A])],
            vec![(QScalar::one(), vec![A, C]), (q.neg_ref(), vec![C, A])],
            vec![(QScalar::one(), vec![B, D]), (q.neg_ref(), vec![D, B])],
            vec![(QScalar::one(), vec![C, D]), (q.neg_ref(), vec![D, C])],
            vec![(QScalar::one(), vec![B, C]), (QScalar::from_int(-1), vec![C, B])],
            vec![(QScalar::one(), vec![A, D]), (q.neg_ref(), vec![B, C]), (QScalar::from_int(-1), vec![])],
            vec![(QScalar::one(), vec![D, A]), (qi.neg_ref(), vec![B, C]), (QScalar::from_int(-1), vec![])],
        ];
        for w in crate::reps::all_words(&[UGen::E, UGen::F, UGen::K, UGen::KInv], 3) {
            for rel in &rels {
                let v = rel.iter().fold(QScalar::zero(), |acc, (c, l)| &acc + &(c * &p.pair_letters(&w, l)));
                assert!(v.is_zero(), "{:?} {:?}", w, rel);
            }
        }
    }

    #[test]
    fn small_coreps() {
        assert_eq!(build_corep(0).unwrap(), Matrix::identity(1));
        let t = build_corep(1).unwrap();
        assert_eq!(t.get(1, 0), &HopfElement::gen(SlGen::C));
        verify_comodule_axioms(&t).unwrap();
    }

    #[test]
    fn sign_matching() {
        let a: Matrix<QScalar> = Matrix::from_fn(2, 2, |i, j| QScalar::from_int(1 + i as i64 + 2 * j as i64));
        let mut b = a.clone();
        b.set(0, 1, a.get(0, 1).neg_ref());
        b.set(1, 0, a.get(1, 0).neg_ref());
        assert_eq!(equal_up_to_basis_signs(&a, &b), Some(vec![1, -1]));
        b.set(1, 1, a.get(1, 1).neg_ref());
        assert_eq!(equal_up_to_basis_signs(&a, &b), None);
    }

    #[test]
    fn wigner_and_comodule_small() {
        for (a, b) in [(1, 1), (1, 2), (2, 2)] {
            verify_wigner(a, b).unwrap();
        }
        for j in 0..=2 {
            verify_comodule_axioms(&build_corep(j).unwrap()).unwrap();
        }
    }

    #[test]
    fn duality_up_to_spin_one() {
        for j in 0..=2 {
            assert!(verify_duality(j, 3).unwrap() > 0);
        }
    }

    #[test]
    fn composite_coaction_identity() {
        assert_eq!(verify_composite_coaction(1).unwrap(), 4);
        assert_eq!(verify_composite_coaction(2).unwrap(), 9);
    }
}
