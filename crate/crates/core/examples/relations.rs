//! Relation sets: parsing, normal forms, normal words and the diamond check.
//!
//! `cargo run --example relations`

use qcov::freealg::text::parse_relations;
use qcov::freealg::FreeAlgebra;

fn main() -> qcov::Result<()> {
    let alg = FreeAlgebra::even(&["x", "y"]);
    let plane = parse_relations(&alg, "x*y = q*y*x + r")?;
    let x = alg.gen(0);
    let y = alg.gen(1);
    let w = alg.mul(&alg.mul(&x, &y), &alg.mul(&x, &y));
    println!("NF(xyxy) = {}", plane.poly_str(&plane.normal_form(&w)));
    for d in 0..=4 {
        let words: Vec<String> = plane.normal_words(d).iter().map(|w| alg.word_str(w)).collect();
        println!("degree {}: {}", d, words.join(" "));
    }
    let rep = plane.check_consistency();
    println!("plane: centrality {} overlaps {}", rep.centrality_ok(), rep.overlaps_ok());

    // an inconsistent set: the ambiguity x*y*z resolves two ways
    let alg3 = FreeAlgebra::even(&["x", "y", "z"]);
    let bad = parse_relations(&alg3, "x*y = y*x + r\ny*z = z*y\nx*z = q*z*x")?;
    let rep = bad.check_consistency();
    for f in &rep.overlap_failures {
        println!("overlap {} fails: {} vs {}", f.witness, f.left, f.right);
    }
    Ok(())
}
