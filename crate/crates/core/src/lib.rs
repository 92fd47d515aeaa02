//! Tilting modules over finite-dimensional algebras: exact linear algebra,
//! module categories, homological invariants and derived functors.

pub mod error;
pub mod algebra;
pub mod exactla;
pub mod repmod;
pub mod homology;
pub mod tiltcore;
pub mod derived;
pub mod workspace;

pub use error::{Error, Result};
pub use exactla::{Elem, FieldSpec, Matrix, Subspace};
pub use algebra::{Algebra, AlgebraRef};
pub use homology::{BoundedComplex, ChainMap};
pub use repmod::{FdModule, ModuleMap};
pub use tiltcore::{certify_tilting, TiltingContext, TiltingReport};
pub use workspace::Workspace;
