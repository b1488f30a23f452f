//! Scalars, real embeddings and rank-revealing linear algebra.

mod embed;
mod linalg;
mod quaternion;

pub use embed::{real_embedding, Field, FieldMatrix};
pub use linalg::{
    column_space, inverse_sqrt_spd, nullspace_basis, nullspace_basis_scaled, orthogonal_projection,
    symmetric_spectrum_bounds, Subspace, ORTH_TOL, RANK_TOL,
};
pub use quaternion::{quaternion_product, Quaternion};
