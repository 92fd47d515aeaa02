//! Complexes, resolutions, Ext and Tor, and add-approximations.

mod approx;
mod complex;
mod resolution;
mod tensor;
mod total;

pub use approx::{add_coresolution, add_coresolution_with, left_add_approximation, minimal_left_add_approximation, AddCoresolution, Approximation, ApproximationKind};
pub use complex::{cone, quasi_iso, BoundedComplex, ChainMap, Homology};
pub use resolution::{
    ext, min_proj_resolution, proj_resolution, projective_cover, projective_dimension, Ext, ProjHom, ProjResolution,
    ProjectiveCover, ProjectiveSum,
};
pub(crate) use tensor::tor_from;
pub use tensor::{
    tensor_map, tensor_over, tensor_projective, tensor_projective_map, tensor_resolution, tensor_total_complex, tor,
    Bimodule, Enveloping, Tensor, TensoredProjective,
};
pub use total::{hom_total_bicomplex, hom_total_complex, BimoduleComplex};
