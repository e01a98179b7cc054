//! Command-line front end. `run` is the whole program minus process exit, so it can
//! be driven from tests.

use crate::cgc::compute_cgc;
use crate::covariant::{derive, CovariantSetup, DerivationReport};
use crate::error::{Error, Result};
use crate::freealg::text::{parse_relations, RelationSetJson};
use crate::freealg::{classical_limit_set, FreeAlgebra, Generator, GradedPoly, RelationSet};
use crate::golden;
use crate::osp_dual::{
    check_subalgebra_closure_premise, solve_annihilated, verify_t2_duality, SuperCorepFixture,
    TwistedPrimitive,
};
use crate::reps::{HalfInt, Label};
use crate::slq2::{
    build_corep, matrix_to_strings, verify_comodule_axioms, verify_coaction, verify_duality,
    verify_wigner,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Read;

#[derive(Parser, Debug)]
#[command(name = "qcov", version, about = "Covariant quantum (super)spaces, derived and verified exactly")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    Sl2,
    Osp,
}

#[derive(Args, Debug, Clone)]
pub struct LabelArgs {
    #[arg(long, value_enum, default_value_t = AlgebraArg::Sl2)]
    pub algebra: AlgebraArg,
    /// Spin for sl2, e.g. `1/2`.
    #[arg(long)]
    pub j: Option<String>,
    #[arg(long)]
    pub ell: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub lambda: u8,
}

impl LabelArgs {
    fn label(&self) -> Result<Label> {
        match self.algebra {
            AlgebraArg::Sl2 => {
                let j: HalfInt = self
                    .j
                    .as_deref()
                    .ok_or_else(|| Error::InvalidLabel("sl2 needs --j".into()))?
                    .parse()?;
                if j.twice() < 0 {
                    return Err(Error::InvalidLabel(format!("j = {}", j)));
                }
                Ok(Label::Sl2 { j })
            }
            AlgebraArg::Osp => {
                let ell = match (self.ell, &self.j) {
                    (Some(l), _) => l,
                    (None, Some(j)) => j
                        .parse::<u32>()
                        .map_err(|_| Error::InvalidLabel(format!("ell = {}", j)))?,
                    (None, None) => return Err(Error::InvalidLabel("osp needs --ell".into())),
                };
                if self.lambda > 1 {
                    return Err(Error::InvalidLabel(format!("lambda = {}", self.lambda)));
                }
                Ok(Label::osp(ell, self.lambda))
            }
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Clebsch-Gordan table of a tensor product, with orthogonality and equivariance checks.
    Cgc {
        #[arg(long, value_enum, default_value_t = AlgebraArg::Sl2)]
        algebra: AlgebraArg,
        /// First label (`j` for sl2, `ell` for osp).
        #[arg(long)]
        j1: String,
        #[arg(long)]
        j2: String,
        #[arg(long, default_value_t = 0)]
        lambda1: u8,
        #[arg(long, default_value_t = 0)]
        lambda2: u8,
    },
    /// Derive the covariant algebra on one irreducible module.
    Derive {
        #[command(flatten)]
        label: LabelArgs,
    },
    /// Run a verification.
    Verify {
        #[arg(value_enum)]
        kind: Option<VerifyKind>,
        #[arg(long)]
        max_word_len: Option<usize>,
        /// Run every reference fixture comparison.
        #[arg(long = "against-paper")]
        reference: bool,
        /// Relation set as JSON (a `derive` report or a bare relation set); `-` reads stdin.
        #[arg(long)]
        relations: Option<String>,
        /// Largest spin for sl2 checks.
        #[arg(long)]
        j: Option<String>,
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long, default_value_t = 0)]
        lambda: u8,
        /// Element for `annihilate` and `closure`: PR, v+, v-, K-K^-1, 0, EF.
        #[arg(long, default_value = "PR")]
        element: String,
    },
    /// Corepresentation matrix `T^(j)` of SL_q(2), or a stored OSp_q(1|2) matrix.
    Corep {
        #[command(flatten)]
        label: LabelArgs,
    },
    /// Classical limit `q -> 1`, `xi -> 0` of a relation set.
    Limit {
        /// JSON relation set or report, or plain relations with `--generators`; `-` is stdin.
        file: String,
        /// Comma-separated generator names, greatest first, for plain-text input.
        #[arg(long)]
        generators: Option<String>,
        /// Comma-separated odd generators for plain-text input.
        #[arg(long)]
        odd: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    /// Pairing of U_q[osp(1|2)] words with the stored `T^(2)(0)`.
    T2Duality,
    /// `<X, T^(j)> = D^(j)(X)` for SL_q(2).
    Sl2Duality,
    /// Wigner product law and comodule axioms for SL_q(2).
    Comodule,
    /// Kernel of the annihilation conditions of a twisted primitive element.
    Annihilate,
    /// Coproduct shape of a twisted primitive element.
    Closure,
}

/// Result of a command: JSON value, text rendering, and whether every check passed.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, text: String, passed: bool) -> Result<Self> {
        Ok(Outcome {
            json: serde_json::to_value(value).map_err(|e| Error::Input(e.to_string()))?,
            text,
            passed,
        })
    }
}

/// Process output: stdout, stderr and the exit code.
pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn error_json(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Run {
                    stdout: e.to_string(),
                    stderr: String::new(),
                    code: 0,
                };
            }
            return Run {
                stdout: String::new(),
                stderr: error_json("UsageError", e.to_string().trim()) + "\n",
                code: 2,
            };
        }
    };
    match execute(&cli.command, stdin) {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&out.json).unwrap_or_default() + "\n"
                }
                Format::Text => out.text,
            };
            let (stderr, code) = if out.passed {
                (String::new(), 0)
            } else {
                (error_json("CheckFailed", "one or more checks failed") + "\n", 1)
            };
            Run { stdout, stderr, code }
        }
        Err(e) => Run {
            stdout: String::new(),
            stderr: error_json(e.kind(), &e.to_string()) + "\n",
            code: 1,
        },
    }
}

fn execute(cmd: &Command, stdin: &mut dyn Read) -> Result<Outcome> {
    match cmd {
        Command::Cgc {
            algebra,
            j1,
            j2,
            lambda1,
            lambda2,
        } => cmd_cgc(*algebra, j1, j2, *lambda1, *lambda2),
        Command::Derive { label } => cmd_derive(&label.label()?),
        Command::Verify {
            kind,
            max_word_len,
            reference,
            relations,
            j,
            ell,
            lambda,
            element,
        } => {
            let selected = kind.is_some() as u8 + *reference as u8 + relations.is_some() as u8;
            if selected != 1 {
                return Err(Error::Input(
                    "verify needs exactly one of a check name, --against-paper, --relations".into(),
                ));
            }
            if *reference {
                return cmd_reference_suite();
            }
            if let Some(src) = relations {
                return cmd_verify_relations(&read_source(src, stdin)?);
            }
            match kind.expect("checked above") {
                VerifyKind::T2Duality => cmd_t2(max_word_len.unwrap_or(4)),
                VerifyKind::Sl2Duality => {
                    cmd_sl2_duality(spin_arg(j.as_deref(), 4)?, max_word_len.unwrap_or(3))
                }
                VerifyKind::Comodule => cmd_comodule(spin_arg(j.as_deref(), 2)?),
                VerifyKind::Annihilate => cmd_annihilate(element, ell.unwrap_or(2), *lambda),
                VerifyKind::Closure => cmd_closure(element),
            }
        }
        Command::Corep { label } => cmd_corep(label),
        Command::Limit {
            file,
            generators,
            odd,
        } => cmd_limit(&read_source(file, stdin)?, generators.as_deref(), odd.as_deref()),
    }
}

fn spin_arg(j: Option<&str>, default_twice: i32) -> Result<i32> {
    match j {
        Some(s) => Ok(s.parse::<HalfInt>()?.twice()),
        None => Ok(default_twice),
    }
}

fn read_source(src: &str, stdin: &mut dyn Read) -> Result<String> {
    let mut s = String::new();
    if src == "-" {
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Error::Input(format!("stdin: {}", e)))?;
    } else {
        s = std::fs::read_to_string(src).map_err(|e| Error::Input(format!("{}: {}", src, e)))?;
    }
    Ok(s)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn cmd_cgc(algebra: AlgebraArg, j1: &str, j2: &str, lambda1: u8, lambda2: u8) -> Result<Outcome> {
    let label = |s: &str, lambda: u8| -> Result<Label> {
        LabelArgs {
            algebra,
            j: Some(s.to_string()),
            ell: None,
            lambda,
        }
        .label()
    };
    let (l1, l2) = (label(j1, lambda1)?, label(j2, lambda2)?);
    let table = compute_cgc(&l1, &l2)?;
    let ortho = table.verify_orthogonality();
    let equi = table.verify_equivariance();
    let entries = table.entries();
    let mut text = format!("{} x {}\n", l1, l2);
    for e in &entries {
        text.push_str(&format!(
            "  [{}] M={} m1={} m2={} : {}\n",
            e.block, e.m, e.m1, e.m2, e.value
        ));
    }
    text.push_str(&format!("orthogonality: {}\n", status(ortho.is_ok())));
    text.push_str(&format!("equivariance: {}\n", status(equi.is_ok())));
    let passed = ortho.is_ok() && equi.is_ok();
    let value = json!({
        "labels": [l1, l2],
        "entries": entries,
        "orthogonality": ortho.is_ok(),
        "equivariance": equi.is_ok(),
    });
    Outcome::new(&value, text, passed)
}

pub fn derivation_text(r: &DerivationReport) -> String {
    let mut t = format!("{}\n", r.label);
    for f in &r.families {
        t.push_str(&format!(
            "  family {} kind={:?} limit={:?} status={:?}",
            f.block, f.kind, f.classical, f.status
        ));
        if let Some(reason) = &f.reason {
            t.push_str(&format!(" ({})", reason));
        }
        t.push('\n');
    }
    for a in &r.attempts {
        t.push_str(&format!(
            "  attempt [{}] xi=0:{} centrality:{} overlaps:{}",
            a.families.join(", "),
            a.xi_zero,
            status(a.centrality_ok),
            status(a.overlaps_ok)
        ));
        if let Some(c) = &a.constraint {
            t.push_str(&format!(" with {}", c));
        }
        t.push('\n');
    }
    for c in &r.constraints {
        t.push_str(&format!("  constraint: {}\n", c));
    }
    if r.constraints.iter().any(|c| c == "xi = 0") {
        t.push_str("  note: ξ forced to 0\n");
    }
    for rel in &r.relations {
        t.push_str(&format!("  [{}] {}\n", rel.category, rel.text));
    }
    let cats: Vec<String> = r.categories.iter().map(|(k, v)| format!("{} {}", v, k)).collect();
    t.push_str(&format!(
        "  {} relations ({}), xi retained: {}\n",
        r.relations.len(),
        cats.join(", "),
        r.xi_retained
    ));
    t.push_str(&format!("  covariance identities checked: {}\n", r.covariance_checks));
    t.push_str(&format!(
        "  classical limit ({:?}): {}\n",
        r.classical_limit.kind,
        r.classical_limit.relations.join("; ")
    ));
    t
}

fn cmd_derive(label: &Label) -> Result<Outcome> {
    let d = derive(label)?;
    Outcome::new(&d.report, derivation_text(&d.report), true)
}

fn cmd_reference_suite() -> Result<Outcome> {
    let checks = golden::run_suite()?;
    let passed = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &checks {
        text.push_str(&format!("{} {}: {}\n", status(c.passed), c.name, c.detail));
    }
    text.push_str(&format!(
        "{} of {} reference checks passed\n",
        checks.iter().filter(|c| c.passed).count(),
        checks.len()
    ));
    Outcome::new(&json!({ "passed": passed, "checks": checks }), text, passed)
}

/// Label implied by a generator list: odd generators mean osp, otherwise sl2.
fn infer_label(gens: &[Generator]) -> Result<Label> {
    let n = gens.len();
    if n == 0 {
        return Err(Error::Input("no generators".into()));
    }
    if gens.iter().any(|g| g.odd) {
        if n.is_multiple_of(2) {
            return Err(Error::InvalidLabel(format!("{} generators", n)));
        }
        let ell = (n - 1) / 2;
        // top vector has parity lambda
        Ok(Label::osp(ell as u32, gens[0].odd as u8))
    } else {
        Ok(Label::sl2(n as i32 - 1))
    }
}

fn parse_relation_input(src: &str) -> Result<(RelationSetJson, Option<Label>)> {
    let v: Value =
        serde_json::from_str(src).map_err(|e| Error::Input(format!("invalid JSON: {}", e)))?;
    let set_value = v.get("relation_set").cloned().unwrap_or_else(|| v.clone());
    let set: RelationSetJson = serde_json::from_value(set_value)
        .map_err(|e| Error::Input(format!("not a relation set: {}", e)))?;
    let label = match v.get("label") {
        Some(l) => Some(
            serde_json::from_value::<Label>(l.clone())
                .map_err(|e| Error::Input(format!("bad label: {}", e)))?,
        ),
        None => None,
    };
    Ok((set, label))
}

#[derive(Serialize)]
struct RelationsVerdict {
    label: Label,
    relations: usize,
    centrality_ok: bool,
    overlaps_ok: bool,
    covariance_identities: usize,
    coaction_components: Option<usize>,
    passed: bool,
}

fn cmd_verify_relations(src: &str) -> Result<Outcome> {
    let (json_set, label) = parse_relation_input(src)?;
    let set = json_set.to_set()?;
    let label = match label {
        Some(l) => l,
        None => infer_label(&json_set.generators)?,
    };
    let rep = set.check_consistency();
    let names = json_set.generators.iter().map(|g| g.name.clone()).collect();
    let setup = CovariantSetup::with_names(&label, names)?;
    if setup.alg.gens != set.alg.gens {
        return Err(Error::Input(format!(
            "generator parities do not match the module {}",
            label
        )));
    }
    let polys: Vec<GradedPoly> = set
        .rules()
        .iter()
        .map(|r| r.poly())
        .chain(set.residual().iter().map(|r| r.poly.clone()))
        .collect();
    let cov = setup.verify_span_covariance(&polys)?;
    let coaction = match label {
        Label::Sl2 { j } => Some(verify_coaction(j.twice(), &set)?.components_checked),
        Label::Osp { .. } => None,
    };
    let passed = rep.passed();
    let verdict = RelationsVerdict {
        label,
        relations: polys.len(),
        centrality_ok: rep.centrality_ok(),
        overlaps_ok: rep.overlaps_ok(),
        covariance_identities: cov,
        coaction_components: coaction,
        passed,
    };
    let mut text = format!("{}: {} relations\n", label, verdict.relations);
    text.push_str(&format!("  centrality: {}\n", status(verdict.centrality_ok)));
    text.push_str(&format!("  overlaps: {}\n", status(verdict.overlaps_ok)));
    text.push_str(&format!("  covariance: PASS ({} identities)\n", cov));
    if let Some(c) = coaction {
        text.push_str(&format!("  SL_q(2) coaction: PASS ({} components)\n", c));
    }
    Outcome::new(&verdict, text, passed)
}

fn cmd_t2(max_len: usize) -> Result<Outcome> {
    let r = verify_t2_duality(max_len)?;
    let text = format!(
        "T^(2)(0) duality: PASS ({} words up to length {}, {} entries, convention {:?})\n",
        r.words_checked, r.max_word_len, r.entries_checked, r.convention
    );
    Outcome::new(&r, text, true)
}

fn cmd_sl2_duality(max_twice_j: i32, max_len: usize) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for tj in 0..=max_twice_j {
        let n = verify_duality(tj, max_len)?;
        text.push_str(&format!("j={}: PASS ({} words up to length {})\n", HalfInt(tj), n, max_len));
        rows.push(json!({ "j": HalfInt(tj).to_string(), "words": n }));
    }
    Outcome::new(&json!({ "max_word_len": max_len, "spins": rows }), text, true)
}

fn cmd_comodule(max_twice_j: i32) -> Result<Outcome> {
    let mut text = String::new();
    let mut wigner = Vec::new();
    let mut axioms = Vec::new();
    for a in 1..=max_twice_j {
        for b in 1..=max_twice_j {
            let r = verify_wigner(a, b)?;
            text.push_str(&format!(
                "Wigner j1={} j2={}: PASS ({} entries)\n",
                HalfInt(a),
                HalfInt(b),
                r.entries_checked
            ));
            wigner.push(r);
        }
    }
    for tj in 0..=max_twice_j {
        let n = verify_comodule_axioms(&build_corep(tj)?)?;
        text.push_str(&format!("comodule axioms j={}: PASS ({} identities)\n", HalfInt(tj), n));
        axioms.push(json!({ "j": HalfInt(tj).to_string(), "identities": n }));
    }
    Outcome::new(&json!({ "wigner": wigner, "comodule": axioms }), text, true)
}

fn cmd_annihilate(element: &str, ell: u32, lambda: u8) -> Result<Outcome> {
    let u = TwistedPrimitive::parse(element)?;
    let r = solve_annihilated(&u, ell, lambda)?;
    let fixture = match (ell, lambda) {
        (2, 0) => Some(SuperCorepFixture::t2()?),
        (1, l) => Some(SuperCorepFixture::t1(l)?),
        _ => None,
    };
    let mut text = format!(
        "u = {} on ell={}, lambda={}: rank {}, kernel dimension {}\n",
        r.element,
        ell,
        lambda,
        r.rank,
        r.kernel.len()
    );
    let mut columns = Vec::new();
    for (i, v) in r.kernel.iter().enumerate() {
        let coeffs: Vec<String> = v.iter().map(|c| c.to_string()).collect();
        text.push_str(&format!("  c = [{}]\n", coeffs.join(", ")));
        if let Some(f) = &fixture {
            let cols = r.columns(i, f);
            for (k, y) in cols.iter().enumerate() {
                text.push_str(&format!("    Y_{} = {}\n", ell as i64 - k as i64, y));
            }
            columns.push(cols);
        }
    }
    Outcome::new(&json!({ "report": r, "columns": columns }), text, true)
}

fn cmd_closure(element: &str) -> Result<Outcome> {
    let u = TwistedPrimitive::parse(element)?;
    let r = check_subalgebra_closure_premise(&u)?;
    let mut text = format!(
        "Delta(u) = K (x) u + u (x) K^-1 for u = {}: {} on {} representation pairs\n",
        r.element,
        status(r.premise_holds),
        r.representations_checked.len()
    );
    if let Some(f) = &r.first_failure {
        text.push_str(&format!("  first failure: {}\n", f));
    }
    text.push_str(&format!("  {}\n", r.conclusion));
    let passed = r.premise_holds;
    Outcome::new(&r, text, passed)
}

fn cmd_corep(label: &LabelArgs) -> Result<Outcome> {
    match label.label()? {
        Label::Sl2 { j } => {
            let rows = matrix_to_strings(&build_corep(j.twice())?);
            let mut text = format!("# T^({}), rows and columns m = j, ..., -j\n", j);
            for row in &rows {
                text.push_str(&row.join(" ; "));
                text.push('\n');
            }
            Outcome::new(&json!({ "j": j.to_string(), "matrix": rows }), text, true)
        }
        Label::Osp { ell, lambda } => {
            let f = match ell {
                1 => SuperCorepFixture::t1(lambda)?,
                2 if lambda == 0 => SuperCorepFixture::t2()?,
                _ => {
                    return Err(Error::InvalidLabel(format!(
                        "stored OSp_q(1|2) matrices: ell=1 (lambda 0, 1), ell=2 (lambda 0); got ell={}, lambda={}",
                        ell, lambda
                    )))
                }
            };
            let mut text = format!("# T^({})({}), rows and columns m = ell, ..., -ell\n", ell, lambda);
            for row in &f.source {
                text.push_str(&row.join(" ; "));
                text.push('\n');
            }
            let value = json!({
                "ell": ell,
                "lambda": lambda,
                "matrix": f.source,
                "expanded": f.expanded_strings(),
            });
            Outcome::new(&value, text, true)
        }
    }
}

fn cmd_limit(src: &str, generators: Option<&str>, odd: Option<&str>) -> Result<Outcome> {
    let set: RelationSet = match generators {
        Some(g) => {
            let odd: Vec<&str> = odd.map(|o| o.split(',').map(str::trim).collect()).unwrap_or_default();
            let gens = g
                .split(',')
                .map(|n| Generator {
                    name: n.trim().to_string(),
                    odd: odd.contains(&n.trim()),
                })
                .collect();
            parse_relations(&FreeAlgebra::new(gens, false), src)?
        }
        None => parse_relation_input(src)?.0.to_set()?,
    };
    let lim = classical_limit_set(&set)?;
    let mut text = format!("classical limit ({:?})\n", lim.kind);
    for r in &lim.relations {
        text.push_str(&format!("  {}\n", r));
    }
    for v in &lim.vanishing {
        text.push_str(&format!("  vanishing: {}\n", v));
    }
    Outcome::new(&lim, text, true)
}
