use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn qcov(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qcov"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn qcov");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_of(o: &Output) -> Value {
    let err: Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    err["error"].clone()
}

#[test]
fn cgc_trivial_pair() {
    let o = qcov(&["--format", "json", "cgc", "--algebra", "sl2", "--j1", "0", "--j2", "0"], None);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["value"], "1");
    assert_eq!(v["orthogonality"], true);
}

#[test]
fn plane_derivation_text() {
    let o = qcov(&["derive", "--algebra", "sl2", "--j", "1/2"], None);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("x*y = q*y*x"));
    assert!(out.contains("unacceptable: x^2 = y^2 = 0 classical limit"));
}

#[test]
fn superspace_notes_forced_xi() {
    let o = qcov(&["derive", "--algebra", "osp", "--ell", "1", "--lambda", "0"], None);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ξ forced to 0"));
}

#[test]
fn derive_json_round_trips_through_verify() {
    for label in [
        &["--algebra", "sl2", "--j", "1/2"][..],
        &["--algebra", "sl2", "--j", "1"],
        &["--algebra", "osp", "--ell", "1", "--lambda", "0"],
        &["--algebra", "osp", "--ell", "2", "--lambda", "0"],
    ] {
        let mut args = vec!["--format", "json", "derive"];
        args.extend_from_slice(label);
        let d = qcov(&args, None);
        assert!(d.status.success(), "{:?}", label);
        let v = qcov(&["--format", "json", "verify", "--relations", "-"], Some(&d.stdout));
        assert!(v.status.success(), "{:?}: {}", label, String::from_utf8_lossy(&v.stderr));
        let verdict: Value = serde_json::from_slice(&v.stdout).unwrap();
        assert_eq!(verdict["passed"], true);
    }
}

#[test]
fn bare_relation_set_is_accepted() {
    let d = qcov(&["--format", "json", "derive", "--algebra", "sl2", "--j", "1"], None);
    let report: Value = serde_json::from_slice(&d.stdout).unwrap();
    let set = serde_json::to_vec(&report["relation_set"]).unwrap();
    let v = qcov(&["verify", "--relations", "-"], Some(&set));
    assert!(v.status.success());
    assert!(stdout(&v).contains("SL_q(2) coaction: PASS"));
}

#[test]
fn tampered_relations_fail_with_json_error() {
    let d = qcov(&["--format", "json", "derive", "--algebra", "sl2", "--j", "1"], None);
    let mut report: Value = serde_json::from_slice(&d.stdout).unwrap();
    let rel = &mut report["relation_set"]["relations"][0]["text"];
    let text = rel.as_str().unwrap().replace("q^2", "q^3");
    *rel = Value::String(text);
    let v = qcov(&["verify", "--relations", "-"], Some(&serde_json::to_vec(&report).unwrap()));
    assert!(!v.status.success());
    assert!(error_of(&v)["kind"].is_string());
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "derive", "--algebra", "osp", "--ell", "2", "--lambda", "0"];
    let a = qcov(&args, None);
    let b = qcov(&args, None);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corep_spin_one() {
    let o = qcov(&["--format", "json", "corep", "--j", "1"], None);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 3);
    assert_eq!(m[0][0], "a^2");
    assert_eq!(m[2][2], "d^2");
}

#[test]
fn t2_duality_and_reference_suite() {
    let o = qcov(&["verify", "t2-duality", "--max-word-len", "4"], None);
    assert!(o.status.success());
    assert!(stdout(&o).contains("341 words"));
    let o = qcov(&["--format", "json", "verify", "--against-paper"], None);
    assert!(o.status.success(), "{}", stdout(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn limit_of_plain_relations() {
    let o = qcov(
        &["--format", "json", "limit", "-", "--generators", "x,y"],
        Some(b"x*y = q*y*x\n"),
    );
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "commutative");
}

#[test]
fn failures_are_machine_readable() {
    let o = qcov(&["derive", "--algebra", "sl2"], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["kind"], "InvalidLabel");

    let o = qcov(&["frobnicate"], None);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_of(&o)["kind"], "UsageError");

    let o = qcov(&["verify", "--relations", "-"], Some(b"not json"));
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["kind"], "InputError");

    // premise failure is a failed check, not a crash
    let o = qcov(&["verify", "closure", "--element", "EF"], None);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["kind"], "CheckFailed");
    assert!(stdout(&o).contains("premise fails"));
}
