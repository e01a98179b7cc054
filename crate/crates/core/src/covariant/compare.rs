//! Ideal comparison of relation sets, optionally up to rescaling `r` and `xi`.

use crate::error::Result;
use crate::field::QScalar;
use crate::freealg::{GradedPoly, RelationSet};

/// Substitution `r -> r_scale * r`, `xi -> xi_scale * xi`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamScales {
    pub r: QScalar,
    pub xi: QScalar,
}

impl Default for ParamScales {
    fn default() -> Self {
        ParamScales {
            r: QScalar::one(),
            xi: QScalar::one(),
        }
    }
}

impl ParamScales {
    pub fn apply(&self, p: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly::zero();
        for (m, c) in &p.terms {
            let f = &self.r.pow(m.r as u32) * &self.xi.pow(m.xi as u32);
            out.add_term(m.clone(), c * &f);
        }
        out
    }
}

fn polys(set: &RelationSet) -> Vec<GradedPoly> {
    set.rules()
        .iter()
        .map(|r| r.poly())
        .chain(set.residual().iter().map(|r| r.poly.clone()))
        .collect()
}

fn contained(a: &[GradedPoly], b: &RelationSet) -> bool {
    a.iter().all(|p| b.contains(p))
}

/// Each set's relations reduce to zero under the other.
pub fn ideal_equal(a: &RelationSet, b: &RelationSet) -> bool {
    a.alg.gens == b.alg.gens && contained(&polys(a), b) && contained(&polys(b), a)
}

/// Look for parameter scales making `a` ideal-equal to `b`; scales are read off
/// from rules sharing a leading word.
pub fn ideal_equal_scaled(a: &RelationSet, b: &RelationSet) -> Result<Option<ParamScales>> {
    if a.alg.gens != b.alg.gens {
        return Ok(None);
    }
    let mut r_scale = None;
    let mut xi_scale = None;
    for ra in a.rules() {
        let Some(rb) = b.rules().iter().find(|rb| rb.lead == ra.lead) else {
            continue;
        };
        for (m, ca) in &ra.rhs.terms {
            let Some(cb) = rb.rhs.terms.get(m) else {
                continue;
            };
            let slot = match (m.r, m.xi) {
                (1, 0) if r_scale.is_none() => &mut r_scale,
                (0, 1) if xi_scale.is_none() => &mut xi_scale,
                _ => continue,
            };
            *slot = Some(cb.div(ca)?);
        }
    }
    let scales = ParamScales {
        r: r_scale.unwrap_or_else(QScalar::one),
        xi: xi_scale.unwrap_or_else(QScalar::one),
    };
    let scaled: Vec<GradedPoly> = polys(a).iter().map(|p| scales.apply(p)).collect();
    let scaled_set = RelationSet::new(
        a.alg.clone(),
        scaled
            .iter()
            .map(|p| crate::freealg::Relation::new(p.clone(), ""))
            .collect(),
    )?;
    let ok = contained(&scaled, b) && contained(&polys(b), &scaled_set);
    Ok(ok.then_some(scales))
}

