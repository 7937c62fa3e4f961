//! Periodic grids, spectral transforms and the linear operators built on
//! them.

mod field;
mod grid;
mod norms;
mod ops;
mod transform;

pub use field::{Field, Repr, Spectral, Tensor, VectorField};
pub use grid::{make_grid, Grid};
pub use norms::{hs_norm, hs_seminorm, l2_inner, lp_norm, Components};
pub use ops::{
    curl, dealias, def_tensor, derivative, divergence, gradient, helmholtz, helmholtz_inverse,
    jacobian, laplacian, leray_project, vector_laplacian,
};

pub(crate) use norms::l2_norm_sq;
pub(crate) use transform::plan;
