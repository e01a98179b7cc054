//! OSp_q(1|2): pairing of U_q[osp(1|2)] words with stored corepresentation matrices,
//! and the annihilator of the twisted primitive element P_R.
//!
//! `cargo run --release --example osp_duality`

use qcov::osp_dual::{
    check_subalgebra_closure_premise, convention_scan, solve_annihilated, verify_t2_duality,
    SuperCorepFixture, TwistedPrimitive,
};

fn main() -> qcov::Result<()> {
    let r = verify_t2_duality(4)?;
    println!("T^(2)(0): {} words, {} entries", r.words_checked, r.entries_checked);
    for (conv, ok) in convention_scan()? {
        println!("  sign convention {:?}: {}", conv, if ok { "consistent" } else { "fails" });
    }

    let pr = TwistedPrimitive::p_r();
    let closure = check_subalgebra_closure_premise(&pr)?;
    println!("{}: {}", closure.element, closure.conclusion);

    let rep = solve_annihilated(&pr, 2, 0)?;
    let t2 = SuperCorepFixture::t2()?;
    println!("kernel dimension {}", rep.kernel.len());
    for (k, y) in rep.columns(0, &t2).iter().enumerate() {
        println!("  Y_{} = {}", 2 - k as i64, y);
    }
    Ok(())
}
