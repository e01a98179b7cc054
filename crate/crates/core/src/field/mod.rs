//! Coefficient field: rational functions in `t = q^(1/2)` with formal square roots.

pub mod poly;
pub mod ratfunc;
pub mod scalar;
pub mod text;

pub use poly::Poly;
pub use ratfunc::LaurentRat;
pub use scalar::{QScalar, Radicand};
pub use text::{parse_scalar, parse_with, ExprContext, ScalarContext};

/// `kappa_1 = sqrt([4]/(q[2]))`.
pub fn kappa1() -> QScalar {
    let x = QScalar::qint_super(4)
        .div(&(QScalar::q_pow(1) * QScalar::qint_super(2)))
        .expect("nonzero");
    x.sqrt().expect("rational")
}

/// `kappa_2 = sqrt(q^{-1}[3])`.
pub fn kappa2() -> QScalar {
    (QScalar::q_pow(-1) * QScalar::qint_super(3))
        .sqrt()
        .expect("rational")
}

/// `kappa_3 = kappa_1 kappa_2`.
pub fn kappa3() -> QScalar {
    kappa1() * kappa2()
}
