//! SL_q(2): corepresentation matrices, Wigner product law, comodule axioms and the
//! duality pairing with U_q[sl(2)].
//!
//! `cargo run --example slq2_corep`

use qcov::slq2::{build_corep, matrix_to_strings, verify_comodule_axioms, verify_duality, verify_wigner};

fn main() -> qcov::Result<()> {
    for tj in 1..=2 {
        let t = build_corep(tj)?;
        println!("T^({}/2):", tj);
        for row in matrix_to_strings(&t) {
            println!("  {}", row.join(" ; "));
        }
        println!("  comodule identities: {}", verify_comodule_axioms(&t)?);
        println!("  duality words up to length 3: {}", verify_duality(tj, 3)?);
    }
    let w = verify_wigner(1, 2)?;
    println!("Wigner law j1=1/2, j2=1: {} entries", w.entries_checked);
    Ok(())
}
