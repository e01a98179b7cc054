//! Compare fresh derivations against the stored reference relation sets and matrices.
//!
//! `cargo run --release --example reference_suite`

fn main() -> qcov::Result<()> {
    let checks = qcov::golden::run_suite()?;
    for c in &checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    println!("{} / {}", passed, checks.len());
    Ok(())
}
