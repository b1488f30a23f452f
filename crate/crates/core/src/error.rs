use thiserror::Error;

use crate::kernel::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field tag mismatch: declared {declared:?}, entries are {found:?}")]
    FieldMismatch { declared: Field, found: Field },

    #[error("non-finite entry in input")]
    NonFinite,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported algebra factor: {0}")]
    UnsupportedFactor(String),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("matrix is not an element of the algebra (residual {residual:.3e})")]
    NotInAlgebra { residual: f64 },

    #[error("h is not a subalgebra: [h{i}, h{j}] has m-component of size {residual:.3e}")]
    NotSubalgebra { i: usize, j: usize, residual: f64 },

    #[error("decomposition is not reductive: [h{i}, m{j}] has h-component of size {residual:.3e}")]
    NotReductive { i: usize, j: usize, residual: f64 },

    #[error("vector lies in h")]
    VectorInIsotropy,

    #[error("zero vector")]
    ZeroVector,

    #[error("vector is not contained in m (h-component {residual:.3e})")]
    NotInM { residual: f64 },

    #[error("u is not contained in m0 (residual {residual:.3e})")]
    NotInFixedSet { residual: f64 },

    #[error("Randers positivity requires alpha(u, u) < 1, got {value}")]
    RandersBound { value: f64 },

    #[error("s = {s} lies outside [-b, b] with b = {b}")]
    OutsideDomain { s: f64, b: f64 },

    #[error("phi fails positivity or strong convexity at s = {s} (b = {b})")]
    NotConvex { s: f64, b: f64 },

    #[error("m0 = 0: no invariant non-Riemannian Randers metrics exist")]
    TrivialFixedSet,

    #[error("metric operator is invalid: {0}")]
    InvalidMetric(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("structure check failed: {0}")]
    StructureViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
