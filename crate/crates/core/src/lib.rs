//! Exact construction of quantum-group covariant noncommutative spaces.

pub mod error;
pub mod field;

pub use error::{Error, FieldError, Result};
pub use field::{LaurentRat, QScalar};
pub mod reps;
pub mod ring;
pub mod cgc;
pub mod linalg;
pub mod freealg;
pub mod covariant;
pub mod slq2;
pub mod osp_dual;
pub mod golden;
pub mod cli;
