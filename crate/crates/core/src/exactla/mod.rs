//! Exact linear algebra over the rationals and prime fields.

mod field;
mod matrix;
mod poly;

pub use field::{Elem, FieldSpec};
pub use matrix::{Matrix, Rref, Subspace};
pub use poly::{eval, roots};
