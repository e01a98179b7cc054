//! Twisted primitive elements, the annihilation conditions they impose on
//! corepresentation entries, and the coproduct shape behind the subalgebra property.

use super::sym::SymScalar;
use super::SuperCorepFixture;
use crate::error::{Error, Result};
use crate::field::QScalar;
use crate::freealg::text::poly_to_string;
use crate::reps::coproduct::sweedler_matrix;
use crate::reps::{
    build_irrep, build_osp_irrep, coproduct_word, word_parity, AlgebraKind, Irrep,
    Label, UGen,
};
use crate::ring::{Matrix, Ring};
use serde::Serialize;

/// `u = Σ c_i X_i` with symbolic coefficients, claimed to satisfy
/// `Δ(u) = g ⊗ u + u ⊗ g^-1` for `g = K`.
#[derive(Clone, Debug)]
pub struct TwistedPrimitive {
    pub name: String,
    pub algebra: AlgebraKind,
    pub terms: Vec<(SymScalar, Vec<UGen>)>,
}

impl TwistedPrimitive {
    pub fn new(name: &str, algebra: AlgebraKind, terms: Vec<(SymScalar, Vec<UGen>)>) -> Self {
        TwistedPrimitive {
            name: name.to_string(),
            algebra,
            terms: terms.into_iter().filter(|(c, _)| !c.is_zero()).collect(),
        }
    }

    /// `-sqrt(g3) v+ + sqrt(g1) v-`.
    pub fn p_r() -> Self {
        Self::new(
            "-sqrt(g3)*v+ + sqrt(g1)*v-",
            AlgebraKind::Osp,
            vec![
                (SymScalar::sqrt_g3().negate(), vec![UGen::Vp]),
                (SymScalar::sqrt_g1(), vec![UGen::Vm]),
            ],
        )
    }

    pub fn v_plus() -> Self {
        Self::new("v+", AlgebraKind::Osp, vec![(SymScalar::one(), vec![UGen::Vp])])
    }

    pub fn v_minus() -> Self {
        Self::new("v-", AlgebraKind::Osp, vec![(SymScalar::one(), vec![UGen::Vm])])
    }

    pub fn k_minus_k_inv(algebra: AlgebraKind) -> Self {
        Self::new(
            "K - K^-1",
            algebra,
            vec![
                (SymScalar::one(), vec![UGen::K]),
                (SymScalar::one().negate(), vec![UGen::KInv]),
            ],
        )
    }

    pub fn zero() -> Self {
        Self::new("0", AlgebraKind::Osp, Vec::new())
    }

    /// `E F` in U_q[sl(2)], which is not twisted primitive.
    pub fn e_f() -> Self {
        Self::new("E F", AlgebraKind::Sl2, vec![(SymScalar::one(), vec![UGen::E, UGen::F])])
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "PR" | "P_R" | "p_r" => Ok(Self::p_r()),
            "v+" | "vp" => Ok(Self::v_plus()),
            "v-" | "vm" => Ok(Self::v_minus()),
            "K-K^-1" | "k-kinv" => Ok(Self::k_minus_k_inv(AlgebraKind::Osp)),
            "0" | "zero" => Ok(Self::zero()),
            "EF" | "ef" => Ok(Self::e_f()),
            _ => Err(Error::Input(format!(
                "unknown element `{}`; expected one of PR, v+, v-, K-K^-1, 0, EF",
                name
            ))),
        }
    }

    /// Common parity of all words, `None` when mixed.
    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.iter().map(|(_, w)| word_parity(w));
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }

    pub fn matrix(&self, rep: &Irrep) -> Matrix<SymScalar> {
        let n = rep.dim();
        let mut out = Matrix::zeros(n, n);
        for (c, w) in &self.terms {
            out = out.add(&rep.word_matrix(w).map(|x| SymScalar::from_scalar(x.clone())).scale(c));
        }
        out
    }
}

/// Right kernel of `m`, pivoting only on single-term entries.
pub fn nullspace(m: &Matrix<SymScalar>) -> Result<Vec<Vec<SymScalar>>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<SymScalar>> = (0..rows).map(|i| m.row(i)).collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c].is_monomial()) else {
            if (r..rows).any(|i| !a[i][c].is_zero()) {
                return Err(Error::Input(format!(
                    "column {} has no single-term pivot",
                    c
                )));
            }
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].invert()?;
        a[r] = a[r].iter().map(|x| x.times(&inv)).collect();
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = x.minus(&y.times(&f));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![SymScalar::zero(); cols];
        v[free] = SymScalar::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = a[row][free].negate();
        }
        basis.push(v);
    }
    Ok(basis)
}

#[derive(Clone, Debug, Serialize)]
pub struct AnnihilatorReport {
    pub element: String,
    pub ell: u32,
    pub lambda: u8,
    /// Row `m'` (index `ell - m'`), column `n`: coefficient of `c_{m'}` in condition `n`.
    pub system: Vec<Vec<SymScalar>>,
    pub rank: usize,
    /// Basis of `{c : Σ_m c_m T_{mk} ⊙ u = 0 for every k}`, indexed by `m = ell, ..., -ell`.
    pub kernel: Vec<Vec<SymScalar>>,
}

impl AnnihilatorReport {
    /// `Y_k = Σ_m c_m T_{mk}` for one kernel vector, written with the stored entries.
    pub fn columns(&self, kernel_index: usize, fixture: &SuperCorepFixture) -> Vec<String> {
        let alg = super::letter_algebra();
        let c = &self.kernel[kernel_index];
        (0..fixture.dim())
            .map(|k| {
                let parts: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(m, x)| {
                        format!("({})*({})", x, poly_to_string(&alg, fixture.entry(m, k)))
                    })
                    .collect();
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ")
                }
            })
            .collect()
    }
}

/// `(Σ_m c_m T_{mk}) ⊙ u = Σ_m Σ_n c_m (-1)^{(m+k) û} ⟨u, T_{mn}⟩ T_{nk}`; linear
/// independence of the `T_{nk}` turns this into `Σ_m (-1)^{m û} c_m ⟨u, T_{mn}⟩ = 0`
/// for every `n` (the `k`-dependent sign is common to all terms).
pub fn solve_annihilated(u: &TwistedPrimitive, ell: u32, lambda: u8) -> Result<AnnihilatorReport> {
    if u.algebra != AlgebraKind::Osp {
        return Err(Error::Input(format!("`{}` is not an osp element", u.name)));
    }
    let hat_u = u
        .parity()
        .ok_or_else(|| Error::Input(format!("`{}` is not homogeneous", u.name)))?
        as i64;
    let rep = build_osp_irrep(ell, lambda)?;
    let d = u.matrix(&rep);
    let n = d.rows();
    let l = ell as i64;
    // system[i][n] multiplies c_{m'} with m' = ell - i
    let system = Matrix::from_fn(n, n, |i, j| {
        let m = l - i as i64;
        let exponent = hat_u * m + hat_u * (l - m + lambda as i64);
        let v = d.get(i, j).clone();
        if exponent.rem_euclid(2) == 1 {
            v.negate()
        } else {
            v
        }
    });
    let kernel = nullspace(&system.transpose())?;
    Ok(AnnihilatorReport {
        element: u.name.clone(),
        ell,
        lambda,
        system: (0..n).map(|i| system.row(i)).collect(),
        rank: n - kernel.len(),
        kernel,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub element: String,
    pub group_like: String,
    pub representations_checked: Vec<String>,
    pub premise_holds: bool,
    pub first_failure: Option<String>,
    pub conclusion: String,
}

fn labels_for(algebra: AlgebraKind) -> Vec<Label> {
    match algebra {
        AlgebraKind::Sl2 => (0..=2).map(Label::sl2).collect(),
        AlgebraKind::Osp => (0..=2)
            .flat_map(|ell| [0u8, 1].map(|lambda| Label::osp(ell, lambda)))
            .collect(),
    }
}

/// `Δ(u) = K ⊗ u + u ⊗ K^-1` as an operator identity on every pair of built
/// representations (osp: `ell <= 2`, both parities; sl2: `2j <= 2`).
pub fn check_subalgebra_closure_premise(u: &TwistedPrimitive) -> Result<ClosureReport> {
    let odd = u
        .parity()
        .ok_or_else(|| Error::Input(format!("`{}` is not homogeneous", u.name)))?
        == 1;
    let reps = labels_for(u.algebra)
        .iter()
        .map(build_irrep)
        .collect::<Result<Vec<_>>>()?;
    let lift = |m: &Matrix<QScalar>| m.map(|x| SymScalar::from_scalar(x.clone()));
    let mut checked = Vec::new();
    let mut failure = None;
    'outer: for r1 in &reps {
        for r2 in &reps {
            let n = r1.dim() * r2.dim();
            let mut lhs = Matrix::zeros(n, n);
            for (c, w) in &u.terms {
                lhs = lhs.add(&lift(&sweedler_matrix(r1, r2, &coproduct_word(w))).scale(c));
            }
            let g1 = lift(r1.matrix(UGen::K));
            let g2_inv = lift(r2.matrix(UGen::KInv));
            let rhs = g1
                .kron_graded(&u.matrix(r2), r1.parities(), odd)
                .add(&u.matrix(r1).kron_graded(&g2_inv, r1.parities(), false));
            let name = format!("({}) x ({})", r1.label, r2.label);
            if let Some((i, j)) = lhs.first_difference(&rhs) {
                failure = Some(format!("{} at ({},{})", name, i, j));
                checked.push(name);
                break 'outer;
            }
            checked.push(name);
        }
    }
    let holds = failure.is_none();
    Ok(ClosureReport {
        element: u.name.clone(),
        group_like: "K".to_string(),
        representations_checked: checked,
        premise_holds: holds,
        first_failure: failure,
        conclusion: if holds {
            "out of scope, premise verified".to_string()
        } else {
            "premise fails".to_string()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_element_has_full_kernel() {
        let r = solve_annihilated(&TwistedPrimitive::zero(), 2, 0).unwrap();
        assert_eq!(r.kernel.len(), 5);
    }

    #[test]
    fn v_plus_alone_on_ell_one() {
        let r = solve_annihilated(&TwistedPrimitive::v_plus(), 1, 0).unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.kernel.len(), 1);
        let v = &r.kernel[0];
        assert!(v[0].is_zero() && v[1].is_zero() && !v[2].is_zero());
    }

    #[test]
    fn p_r_kernel_skips_odd_rows() {
        let r = solve_annihilated(&TwistedPrimitive::p_r(), 2, 0).unwrap();
        assert_eq!(r.kernel.len(), 1);
        let v = &r.kernel[0];
        assert!(v[1].is_zero() && v[3].is_zero());
        assert!(!v[0].is_zero() && !v[2].is_zero() && !v[4].is_zero());
    }
}
