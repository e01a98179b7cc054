//! Exact scalars: q-brackets, formal square roots and classical limits.
//!
//! `cargo run --example field_arithmetic`

use qcov::field::{kappa1, kappa2, kappa3, parse_scalar};
use qcov::QScalar;

fn main() -> qcov::Result<()> {
    for n in 1..=4 {
        println!("[{}] = {}   (sl2: {})", n, QScalar::qint_super(n), QScalar::qint_sl2(n));
    }
    let (k1, k2) = (kappa1(), kappa2());
    println!("kappa1 = {}", k1);
    println!("kappa2 = {}", k2);
    println!("kappa1*kappa2 == kappa3: {}", &k1 * &k2 == kappa3());
    println!("kappa2^2 = {}", &k2 * &k2);

    let x = parse_scalar("(q^(1/2) + 1) * sqrt(1 + q^(-2)) / (q - 1)")?;
    println!("x = {}", x);
    println!("1/x = {}", x.invert()?);
    println!("x at q = 1.5: {}", x.eval_f64(1.5f64.sqrt()));
    println!("classical limit of kappa1: {}", k1.classical_limit()?);

    // sums over several radicands are deliberately not invertible
    let s = parse_scalar("1 + sqrt(2)")?;
    println!("invert(1 + sqrt(2)): {:?}", s.invert());
    Ok(())
}
