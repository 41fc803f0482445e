//! Exact linear algebra over `Q` and real quadratic fields.

pub mod integer;
pub mod matrix;
pub mod scalar;

pub use integer::{bareiss_rank, IntEchelon, IntMatrix};
pub use matrix::{eigenprojection, span_insert, ExactMatrix, FieldEchelon};
pub use scalar::{AlgebraicScalar, QuadraticSurd};
