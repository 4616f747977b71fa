//! Exact linear algebra over prime fields.

mod enumerate;
mod field;
mod matrix;
mod subspace;

pub use enumerate::{check_budget, count_vectors, enumerate_vectors, VectorIter};
pub use field::{is_prime, FpScalar};
pub(crate) use field::{add, inv, mul, sub};
pub use matrix::{solve, FpMatrix, Solution};
pub use subspace::Subspace;
