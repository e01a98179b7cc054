//! Family selection: discard families with a bad classical limit, test the
//! rest for consistency, then try `xi = 0` and re-admitting optional families.

use super::{CovariantFamily, CovariantSetup, FamilyKind};
use crate::error::{Error, Result};
use crate::freealg::classical::{classical_limit_of, ClassicalLimit, LimitKind};
use crate::freealg::text::{poly_to_string, RelationSetJson};
use crate::freealg::{ConsistencyReport, Generator, GradedPoly, Mono, Relation, RelationSet};
use crate::QScalar;
use crate::reps::{AlgebraKind, Label};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyStatus {
    Chosen,
    Discarded,
    /// Admitted only after the base set failed.
    Augmentation,
    /// Acceptable but not needed.
    Unused,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyReport {
    pub block: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_parity: Option<u8>,
    pub kind: FamilyKind,
    pub classical: LimitKind,
    pub status: FamilyStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Attempt {
    pub families: Vec<String>,
    pub xi_zero: bool,
    /// Parameter constraint imposed on this attempt, e.g. `r = c*xi^2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint: Option<String>,
    pub passed: bool,
    pub centrality_ok: bool,
    pub overlaps_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// At most a handful of failures of each kind.
    pub consistency: ConsistencyReport,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FinalRelation {
    pub text: String,
    pub category: String,
    pub tag: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DerivationReport {
    pub algebra: AlgebraKind,
    pub label: Label,
    pub generators: Vec<Generator>,
    pub xi_odd: bool,
    pub families: Vec<FamilyReport>,
    pub attempts: Vec<Attempt>,
    pub constraints: Vec<String>,
    pub xi_retained: bool,
    pub relations: Vec<FinalRelation>,
    pub categories: BTreeMap<String, usize>,
    /// Limit `q -> 1`, `xi -> 0` of the chosen covariant relations, `r` kept as the radius.
    pub classical_limit: ClassicalLimit,
    /// Same limit after a parameter constraint `r = f(xi)` was imposed (so `r -> 0`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classical_limit_strict: Option<ClassicalLimit>,
    pub covariance_checks: usize,
    pub relation_set: RelationSetJson,
}

#[derive(Clone, Debug)]
pub struct Derivation {
    pub setup: CovariantSetup,
    pub families: Vec<CovariantFamily>,
    pub set: RelationSet,
    pub report: DerivationReport,
}

const MAX_LISTED: usize = 5;

fn truncated(mut r: ConsistencyReport) -> ConsistencyReport {
    r.centrality_failures.truncate(MAX_LISTED);
    r.overlap_failures.truncate(MAX_LISTED);
    r.unresolved.truncate(MAX_LISTED);
    r
}

/// Order in which families enter the echelon form: commutation-type first,
/// then scalar, then constraint-type. Row categories follow from it.
fn stage(kind: LimitKind) -> u8 {
    match kind {
        LimitKind::Commutative => 0,
        LimitKind::Scalar => 1,
        LimitKind::Constraint => 2,
        LimitKind::Unacceptable => 3,
    }
}

fn relations_for(fams: &[&CovariantFamily], xi_zero: bool) -> Vec<Relation> {
    let mut out = Vec::new();
    for fam in fams {
        for (mi, p) in fam.members.iter().enumerate() {
            let p = if xi_zero { p.drop_xi() } else { p.clone() };
            out.push(Relation::new(p, fam.member_tag(mi)));
        }
    }
    out
}

/// If every residue is `(a*r + f(xi))*w` for one common `a*r + f(xi)` (up to a
/// factor per residue), return `-f(xi)/a`.
pub fn solve_for_r(obstructions: &[GradedPoly]) -> Option<GradedPoly> {
    let mut parts: Vec<BTreeMap<(u16, u16), QScalar>> = Vec::new();
    for p in obstructions {
        let mut by_word: BTreeMap<Vec<u16>, BTreeMap<(u16, u16), QScalar>> = BTreeMap::new();
        for (m, c) in &p.terms {
            by_word.entry(m.word.clone()).or_default().insert((m.r, m.xi), c.clone());
        }
        parts.extend(by_word.into_values());
    }
    let first = parts.first()?;
    let a = first.get(&(1, 0))?.invert().ok()?;
    let norm: BTreeMap<(u16, u16), QScalar> = first.iter().map(|(k, c)| (*k, c.mul_ref(&a))).collect();
    if norm.keys().any(|&(r, xi)| (r, xi) != (1, 0) && (r != 0 || xi == 0)) || norm.len() < 2 {
        return None;
    }
    for part in &parts {
        let b = part.get(&(1, 0))?;
        if part.len() != norm.len() || norm.iter().any(|(k, c)| part.get(k) != Some(&c.mul_ref(b))) {
            return None;
        }
    }
    let mut f = GradedPoly::zero();
    for (&(r, xi), c) in &norm {
        if r == 0 {
            f.add_term(Mono { word: Vec::new(), r: 0, xi }, c.neg_ref());
        }
    }
    Some(f)
}

/// Replace every `r` by `f` (a polynomial in `xi` only).
pub fn substitute_r(alg: &crate::freealg::FreeAlgebra, p: &GradedPoly, f: &GradedPoly) -> GradedPoly {
    let mut out = GradedPoly::zero();
    for (m, c) in &p.terms {
        let mut rest = GradedPoly::from_mono(Mono { r: 0, ..m.clone() }, c.clone());
        for _ in 0..m.r {
            rest = alg.mul(f, &rest);
        }
        out = out.add(&rest);
    }
    out
}

pub fn derive(label: &Label) -> Result<Derivation> {
    let setup = CovariantSetup::new(label)?;
    let families = setup.build_families();
    select_and_stabilize(setup, families)
}

pub fn select_and_stabilize(setup: CovariantSetup, families: Vec<CovariantFamily>) -> Result<Derivation> {
    let alg = setup.alg.clone();
    let mut limits = Vec::new();
    for fam in &families {
        let rels = relations_for(&[fam], true);
        limits.push(classical_limit_of(&alg, &rels)?);
    }
    let mut order: Vec<usize> = (0..families.len()).collect();
    order.sort_by_key(|&i| (stage(limits[i].kind), std::cmp::Reverse(families[i].block.top())));

    let base: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&i| matches!(limits[i].kind, LimitKind::Commutative | LimitKind::Scalar))
        .collect();
    let optional: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&i| limits[i].kind == LimitKind::Constraint)
        .collect();

    let mut plans: Vec<(Vec<usize>, bool)> = Vec::new();
    let has_xi = |ids: &[usize]| ids.iter().any(|&i| families[i].members.iter().any(|p| p.has_xi()));
    plans.push((base.clone(), false));
    if has_xi(&base) {
        plans.push((base.clone(), true));
    }
    if !optional.is_empty() {
        let mut all = base.clone();
        all.extend(&optional);
        plans.push((all.clone(), false));
        if has_xi(&all) {
            plans.push((all, true));
        }
    }

    let mut attempts = Vec::new();
    let mut chosen: Option<(Vec<usize>, bool, Option<String>, RelationSet)> = None;
    'plans: for (ids, xi_zero) in plans {
        let fams: Vec<&CovariantFamily> = ids.iter().map(|&i| &families[i]).collect();
        let names: Vec<String> = fams.iter().map(|f| f.name()).collect();
        let mut rels = relations_for(&fams, xi_zero);
        let mut constraint: Option<String> = None;
        loop {
            let set = match RelationSet::new(alg.clone(), rels.clone()) {
                Ok(set) => set,
                Err(e) => {
                    attempts.push(Attempt {
                        families: names.clone(),
                        xi_zero,
                        constraint: constraint.clone(),
                        passed: false,
                        centrality_ok: false,
                        overlaps_ok: false,
                        error: Some(e.to_string()),
                        consistency: ConsistencyReport::default(),
                    });
                    continue 'plans;
                }
            };
            let (rep, obstructions) = set.consistency_with_obstructions();
            let passed = rep.passed();
            attempts.push(Attempt {
                families: names.clone(),
                xi_zero,
                constraint: constraint.clone(),
                passed,
                centrality_ok: rep.centrality_ok(),
                overlaps_ok: rep.overlaps_ok(),
                error: None,
                consistency: truncated(rep),
            });
            if passed {
                chosen = Some((ids, xi_zero, constraint, set));
                break 'plans;
            }
            // Second chance: the residues may all vanish once `r` is tied to `xi`.
            if constraint.is_some() || xi_zero {
                continue 'plans;
            }
            let Some(f) = solve_for_r(&obstructions) else {
                continue 'plans;
            };
            constraint = Some(format!("r = {}", poly_to_string(&alg, &f)));
            rels = rels
                .iter()
                .map(|r| Relation::new(substitute_r(&alg, &r.poly, &f), r.tag.clone()))
                .collect();
        }
    }
    let Some((ids, xi_zero, r_constraint, set)) = chosen else {
        let tried: Vec<String> = attempts
            .iter()
            .map(|a| {
                let first = a
                    .consistency
                    .overlap_failures
                    .first()
                    .map(|f| format!(", witness {}", f.witness))
                    .unwrap_or_default();
                format!(
                    "[{}{}{}]: centrality {}, overlaps {}{}",
                    a.families.join(" "),
                    if a.xi_zero { " xi=0" } else { "" },
                    a.constraint.as_ref().map(|c| format!(" {}", c)).unwrap_or_default(),
                    if a.centrality_ok { "ok" } else { "fails" },
                    if a.overlaps_ok { "ok" } else { "fail" },
                    first
                )
            })
            .collect();
        return Err(Error::NoConsistentSet(format!("{}: {}", setup.label, tried.join("; "))));
    };

    let family_reports = families
        .iter()
        .enumerate()
        .map(|(i, fam)| {
            let status = if limits[i].kind == LimitKind::Unacceptable {
                FamilyStatus::Discarded
            } else if !ids.contains(&i) {
                FamilyStatus::Unused
            } else if optional.contains(&i) {
                FamilyStatus::Augmentation
            } else {
                FamilyStatus::Chosen
            };
            FamilyReport {
                block: fam.name(),
                block_parity: match fam.block {
                    Label::Osp { lambda, .. } => Some(lambda),
                    Label::Sl2 { .. } => None,
                },
                kind: fam.kind,
                classical: limits[i].kind,
                status,
                reason: limits[i]
                    .reason()
                    .map(|r| format!("unacceptable: {} classical limit", r)),
                relations: fam
                    .members
                    .iter()
                    .map(|p| format!("{} = 0", poly_to_string(&alg, p)))
                    .collect(),
            }
        })
        .collect();

    let stage_of: HashMap<String, u8> = ids
        .iter()
        .map(|&i| (families[i].name(), stage(limits[i].kind)))
        .collect();
    let category = |tag: &str, lead: Option<&[u16]>| -> String {
        let fam = tag.split(',').next().unwrap_or("");
        match (stage_of.get(fam), lead) {
            (Some(0), Some(w)) if w.len() == 2 && w[0] == w[1] => "square".into(),
            (Some(0), _) => "commutation".into(),
            (Some(1), _) => "radius".into(),
            _ => "constraint".into(),
        }
    };
    let mut relations = Vec::new();
    for rule in set.rules() {
        relations.push(FinalRelation {
            text: crate::freealg::text::rule_to_string(&alg, rule),
            category: category(&rule.tag, Some(&rule.lead)),
            tag: rule.tag.clone(),
        });
    }
    for rel in set.residual() {
        relations.push(FinalRelation {
            text: format!("{} = 0", poly_to_string(&alg, &rel.poly)),
            category: category(&rel.tag, None),
            tag: rel.tag.clone(),
        });
    }
    let mut categories = BTreeMap::new();
    for r in &relations {
        *categories.entry(r.category.clone()).or_insert(0) += 1;
    }
    let mut json = RelationSetJson::from_set(&set);
    for (j, r) in json.relations.iter_mut().zip(&relations) {
        j.category = Some(r.category.clone());
    }

    let mut covariance_checks = 0;
    for &i in &ids {
        covariance_checks += setup.verify_family(&families[i])?;
    }
    let polys: Vec<_> = set
        .rules()
        .iter()
        .map(|r| r.poly())
        .chain(set.residual().iter().map(|r| r.poly.clone()))
        .collect();
    covariance_checks += setup.verify_span_covariance(&polys)?;

    let final_rels: Vec<Relation> = polys.iter().map(|p| Relation::new(p.clone(), "")).collect();
    let (classical_limit, classical_limit_strict) = if r_constraint.is_some() {
        let fams: Vec<&CovariantFamily> = ids.iter().map(|&i| &families[i]).collect();
        (
            classical_limit_of(&alg, &relations_for(&fams, xi_zero))?,
            Some(classical_limit_of(&alg, &final_rels)?),
        )
    } else {
        (classical_limit_of(&alg, &final_rels)?, None)
    };
    let xi_retained = set.rules().iter().any(|r| r.rhs.has_xi());
    let mut constraints: Vec<String> = r_constraint.iter().cloned().collect();
    if xi_zero {
        constraints.push("xi = 0".to_string());
    }

    let report = DerivationReport {
        algebra: setup.label.algebra(),
        label: setup.label,
        generators: alg.gens.clone(),
        xi_odd: alg.xi_odd,
        families: family_reports,
        attempts,
        constraints,
        xi_retained,
        relations,
        categories,
        classical_limit,
        classical_limit_strict,
        covariance_checks,
        relation_set: json,
    };
    Ok(Derivation {
        setup,
        families,
        set,
        report,
    })
}
