//! Clebsch-Gordan tables for U_q[sl(2)] and U_q[osp(1|2)].
//!
//! `cargo run --example cgc_tables`

use qcov::cgc::compute_cgc;
use qcov::reps::Label;

fn main() -> qcov::Result<()> {
    for (a, b) in [
        (Label::sl2(1), Label::sl2(1)),
        (Label::sl2(2), Label::sl2(1)),
        (Label::osp(1, 0), Label::osp(1, 0)),
    ] {
        let t = compute_cgc(&a, &b)?;
        t.verify_orthogonality()?;
        t.verify_equivariance()?;
        println!("== {} x {} (eta {:?}) ==", a, b, t.eta());
        for e in t.entries() {
            println!("  L={} M={} m1={} m2={}: {}", e.block, e.m, e.m1, e.m2, e.value);
        }
    }
    Ok(())
}
