//! Covariant relation families from the CGC decomposition of `V ⊗ V`, the
//! quantum-algebra action on the free algebra over `V`, and covariance checks.

mod compare;
mod pipeline;

pub use compare::{ideal_equal, ideal_equal_scaled, ParamScales};
pub use pipeline::{derive, select_and_stabilize, Attempt, Derivation, DerivationReport, FamilyReport, FamilyStatus};

use crate::cgc::{compute_cgc_with, CgcTable};
use crate::error::{Error, Result};
use crate::field::QScalar;
use crate::freealg::{FreeAlgebra, Generator, GradedPoly, Mono};
use crate::linalg::Echelon;
use crate::reps::{build_irrep, AlgebraKind, HalfInt, Irrep, Label, UGen};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// `J = 0`: composite equals the central parameter `r`.
    Scalar,
    /// `J = j`: composite proportional to the generators via `xi`.
    Proportional,
    /// Any other block: composite vanishes.
    Null,
}

#[derive(Clone, Debug)]
pub struct CovariantFamily {
    pub block: Label,
    pub kind: FamilyKind,
    /// Members ordered `M = J, ..., -J`.
    pub members: Vec<GradedPoly>,
    /// Degree-two parts, the CGC couplings alone.
    pub couplings: Vec<GradedPoly>,
}

impl CovariantFamily {
    /// `J=1`, or `L=2` with the block parity for osp.
    pub fn name(&self) -> String {
        match self.block {
            Label::Sl2 { j } => format!("J={}", j),
            Label::Osp { ell, .. } => format!("L={}", ell),
        }
    }

    pub fn weights(&self) -> Vec<HalfInt> {
        self.block.weights()
    }

    pub fn member_tag(&self, mi: usize) -> String {
        format!("{},M={}", self.name(), self.weights()[mi])
    }
}

fn weight_suffix(m: HalfInt) -> String {
    let s = if m.is_integer() {
        m.int().abs().to_string()
    } else {
        format!("{}h", m.twice().abs())
    };
    if m.twice() < 0 {
        format!("m{}", s)
    } else {
        s
    }
}

/// Default generator names: `x, y` for spin 1/2, `x1, x0, xm1` for sl2, `z..` for osp
/// (`Y..` when `ell = 2`). Index 0 is the top weight.
pub fn default_names(label: &Label) -> Vec<String> {
    match *label {
        Label::Sl2 { j } if j.twice() == 1 => vec!["x".into(), "y".into()],
        Label::Sl2 { .. } => label.weights().into_iter().map(|m| format!("x{}", weight_suffix(m))).collect(),
        Label::Osp { ell, .. } => {
            let stem = if ell == 2 { "Y" } else { "z" };
            label
                .weights()
                .into_iter()
                .map(|m| format!("{}{}", stem, weight_suffix(m)))
                .collect()
        }
    }
}

/// Parity of `xi`: that of `e^j_M` times that of the coupled `E^j_M`.
pub fn xi_parity(label: &Label) -> u8 {
    match *label {
        Label::Sl2 { .. } => 0,
        Label::Osp { ell, lambda } => ((ell + lambda as u32) % 2) as u8,
    }
}

/// Representation, tensor square CGCs and free algebra over one irrep.
#[derive(Clone, Debug)]
pub struct CovariantSetup {
    pub label: Label,
    pub irrep: Irrep,
    pub cgc: CgcTable,
    pub alg: FreeAlgebra,
}

impl CovariantSetup {
    pub fn new(label: &Label) -> Result<Self> {
        Self::with_names(label, default_names(label))
    }

    pub fn with_names(label: &Label, names: Vec<String>) -> Result<Self> {
        let irrep = build_irrep(label)?;
        if names.len() != irrep.dim() {
            return Err(Error::DimensionMismatch {
                expected: irrep.dim(),
                got: names.len(),
            });
        }
        let gens = names
            .into_iter()
            .zip(irrep.parities())
            .map(|(name, &p)| Generator { name, odd: p == 1 })
            .collect();
        let alg = FreeAlgebra::new(gens, xi_parity(label) == 1);
        let cgc = compute_cgc_with(irrep.clone(), irrep.clone())?;
        Ok(CovariantSetup {
            label: *label,
            irrep,
            cgc,
            alg,
        })
    }

    fn word(&self, w: Vec<u16>) -> Mono {
        Mono::word(w)
    }

    /// Quantum-algebra action on polynomials, extended by the coproduct:
    /// `X` acts on a word through `K ⊗ ... ⊗ K ⊗ X ⊗ K^-1 ⊗ ... ⊗ K^-1` with
    /// Koszul signs; `r` and `xi` are invariant scalars.
    pub fn act(&self, x: UGen, p: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        let d = self.irrep.matrix(x);
        let n = self.irrep.dim();
        let group_like = matches!(x, UGen::K | UGen::KInv);
        let kdiag: Vec<QScalar> = (0..n).map(|i| self.irrep.matrix(UGen::K).get(i, i).clone()).collect();
        let kinv: Vec<QScalar> = (0..n).map(|i| self.irrep.matrix(UGen::KInv).get(i, i).clone()).collect();
        for (m, c) in &p.terms {
            let xi_flip = x.is_odd() && self.alg.xi_odd && m.xi % 2 == 1;
            let base = if xi_flip { c.neg_ref() } else { c.clone() };
            if group_like {
                let mut coeff = base;
                for &g in &m.word {
                    coeff = &coeff * d.get(g as usize, g as usize);
                }
                out.add_term(m.clone(), coeff);
                continue;
            }
            let mut prefix_parity = 0u8;
            for pos in 0..m.word.len() {
                let g = m.word[pos] as usize;
                let mut scale = base.clone();
                for &h in &m.word[..pos] {
                    scale = &scale * &kdiag[h as usize];
                }
                for &h in &m.word[pos + 1..] {
                    scale = &scale * &kinv[h as usize];
                }
                if x.is_odd() && prefix_parity == 1 {
                    scale = scale.neg_ref();
                }
                for target in 0..n {
                    let entry = d.get(target, g);
                    if entry.is_zero() {
                        continue;
                    }
                    let mut w = m.word.clone();
                    w[pos] = target as u16;
                    out.add_term(
                        Mono {
                            word: w,
                            r: m.r,
                            xi: m.xi,
                        },
                        &scale * entry,
                    );
                }
                prefix_parity ^= self.alg.is_odd(m.word[pos]) as u8;
            }
        }
        out
    }

    /// One family per block of `V ⊗ V`.
    pub fn build_families(&self) -> Vec<CovariantFamily> {
        let n = self.irrep.dim();
        let top = self.label.top();
        let mut out = Vec::new();
        for block in &self.cgc.blocks {
            let kind = if block.label.top().twice() == 0 {
                FamilyKind::Scalar
            } else if block.label.top() == top {
                FamilyKind::Proportional
            } else {
                FamilyKind::Null
            };
            let mut members = Vec::new();
            let mut couplings = Vec::new();
            for (mi, v) in block.vectors.iter().enumerate() {
                let mut p = GradedPoly::zero();
                for (idx, c) in v.iter().enumerate() {
                    p.add_term(self.word(vec![(idx / n) as u16, (idx % n) as u16]), c.clone());
                }
                couplings.push(p.clone());
                match kind {
                    FamilyKind::Scalar => p = p.sub(&GradedPoly::param_r()),
                    FamilyKind::Proportional => {
                        // e_M * xi, stored with xi on the left
                        let big_m = block.irrep.weights()[mi];
                        let gi = self.irrep.index_of(big_m).expect("same weights");
                        let flip = self.alg.xi_odd && self.alg.is_odd(gi as u16);
                        let xi_e = GradedPoly::from_mono(
                            Mono {
                                word: vec![gi as u16],
                                r: 0,
                                xi: 1,
                            },
                            if flip { QScalar::from_int(-1) } else { QScalar::one() },
                        );
                        p = p.sub(&xi_e);
                    }
                    FamilyKind::Null => {}
                }
                members.push(p);
            }
            out.push(CovariantFamily {
                block: block.label,
                kind,
                members,
                couplings,
            });
        }
        out
    }

    /// `X · ρ_M = Σ_{M'} ρ_{M'} D^J(X)_{M'M}` for every generator and member.
    pub fn verify_family(&self, fam: &CovariantFamily) -> Result<usize> {
        let block = build_irrep(&fam.block)?;
        let mut checked = 0;
        for x in UGen::generators(self.label.algebra()) {
            let d = block.matrix(x);
            for (mi, rho) in fam.members.iter().enumerate() {
                let lhs = self.act(x, rho);
                let mut rhs = GradedPoly::zero();
                for (mj, other) in fam.members.iter().enumerate() {
                    let c = d.get(mj, mi);
                    if !c.is_zero() {
                        rhs = rhs.add(&other.scale(c));
                    }
                }
                checked += 1;
                let diff = lhs.sub(&rhs);
                if !diff.is_zero() {
                    return Err(Error::CovarianceBroken {
                        generator: x.to_string(),
                        m: fam.member_tag(mi),
                        difference: crate::freealg::text::poly_to_string(&self.alg, &diff),
                    });
                }
            }
        }
        Ok(checked)
    }

    /// The span of `relations` is stable under every generator of the quantum algebra.
    pub fn verify_span_covariance(&self, relations: &[GradedPoly]) -> Result<usize> {
        let mut ech: Echelon<Mono> = Echelon::new();
        for p in relations {
            ech.insert(&p.terms)?;
        }
        let mut checked = 0;
        for x in UGen::generators(self.label.algebra()) {
            for (i, p) in relations.iter().enumerate() {
                let img = self.act(x, p);
                checked += 1;
                let rest = ech.reduce(&img.terms);
                if !rest.is_empty() {
                    return Err(Error::CovarianceBroken {
                        generator: x.to_string(),
                        m: format!("relation {}", i + 1),
                        difference: crate::freealg::text::poly_to_string(&self.alg, &GradedPoly { terms: rest }),
                    });
                }
            }
        }
        Ok(checked)
    }

    pub fn algebra_kind(&self) -> AlgebraKind {
        self.label.algebra()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_and_parities() {
        assert_eq!(default_names(&Label::sl2(2)), vec!["x1", "x0", "xm1"]);
        assert_eq!(default_names(&Label::osp(2, 0)), vec!["Y2", "Y1", "Y0", "Ym1", "Ym2"]);
        assert_eq!(xi_parity(&Label::osp(1, 0)), 1);
        assert_eq!(xi_parity(&Label::osp(2, 0)), 0);
    }

    #[test]
    fn families_are_covariant() {
        for label in [Label::sl2(1), Label::sl2(2), Label::osp(1, 0), Label::osp(1, 1)] {
            let setup = CovariantSetup::new(&label).unwrap();
            for fam in setup.build_families() {
                setup.verify_family(&fam).unwrap_or_else(|e| panic!("{} {}: {}", label, fam.name(), e));
            }
        }
    }

    #[test]
    fn plane_action_by_hand() {
        // E x = 0, E y = x on spin 1/2; E(xy) = K x * E y = q^(1/2) x x
        let setup = CovariantSetup::new(&Label::sl2(1)).unwrap();
        let alg = &setup.alg;
        let xy = alg.mul(&alg.gen(0), &alg.gen(1));
        let exy = setup.act(UGen::E, &xy);
        let xx = alg.mul(&alg.gen(0), &alg.gen(0));
        assert_eq!(exy, xx.scale(&QScalar::t_pow(1)));
    }

    #[test]
    fn perturbed_family_breaks_covariance() {
        let setup = CovariantSetup::new(&Label::sl2(2)).unwrap();
        let mut fam = setup.build_families().into_iter().find(|f| f.kind == FamilyKind::Scalar).unwrap();
        let alg = &setup.alg;
        let extra = alg.mul(&alg.gen(0), &alg.gen(2)).scale(&QScalar::ratio(1, 7));
        fam.members[0] = fam.members[0].add(&extra);
        assert!(matches!(setup.verify_family(&fam), Err(Error::CovarianceBroken { .. })));
    }
}
