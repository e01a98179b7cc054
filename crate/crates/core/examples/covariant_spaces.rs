//! Derive the covariant algebras for a few labels and print the solved relations.
//!
//! Run with `cargo run --release --example covariant_spaces`.

use qcov::covariant::derive;
use qcov::reps::Label;

fn main() -> qcov::Result<()> {
    for label in [Label::sl2(1), Label::sl2(2), Label::osp(1, 0), Label::osp(2, 0)] {
        let d = derive(&label)?;
        let rep = &d.report;
        println!("== {} ==", label);
        for fam in &rep.families {
            println!(
                "  family {:<4} {:?} limit={:?} status={:?}{}",
                fam.block,
                fam.kind,
                fam.classical,
                fam.status,
                fam.reason.as_deref().map(|r| format!(" ({})", r)).unwrap_or_default()
            );
        }
        for a in &rep.attempts {
            println!(
                "  attempt {:?} xi=0:{} {} centrality:{} overlaps:{}",
                a.families,
                a.xi_zero,
                a.constraint.as_deref().unwrap_or(""),
                a.centrality_ok,
                a.overlaps_ok
            );
        }
        for r in &rep.relations {
            println!("  [{}] {}", r.category, r.text);
        }
        println!("  categories {:?}, xi retained: {}", rep.categories, rep.xi_retained);
        if !rep.constraints.is_empty() {
            println!("  parameter constraints: {:?}", rep.constraints);
        }
        println!("  classical limit: {:?}", rep.classical_limit.relations);
    }
    Ok(())
}
