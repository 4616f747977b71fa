//! Exact computation with finite-dimensional algebras over prime fields and
//! their right modules: colon submodules, idealizers, eigenrings, similarity
//! of submodules and of right ideals, maximal submodules of projective
//! modules, and Stone's description of maximal left ideals of matrix rings.

pub mod algebra;
pub mod cli;
mod budget;
mod error;
pub mod fqlinalg;
pub mod module;
pub mod matring;
pub mod similarity;

pub use algebra::{Algebra, RightIdeal};
pub use budget::{Budget, DEFAULT_ENUMERATION, DEFAULT_TRIALS};
pub use error::{Error, Result};
