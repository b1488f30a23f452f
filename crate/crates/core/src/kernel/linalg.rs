//! Rank-revealing helpers on small dense matrices.
//!
//! Every subspace is carried as a matrix whose columns form an orthonormal
//! basis. Bases are put into a canonical form (pivoted Gram–Schmidt on the
//! orthogonal projector) so the same span always yields the same basis,
//! independent of the rotation an SVD happens to return.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Default relative cutoff for numerical rank.
pub const RANK_TOL: f64 = 1e-9;

/// Orthonormality tolerance on subspace bases.
pub const ORTH_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    /// `ambient_dim × dim`, orthonormal columns.
    basis: DMatrix<f64>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: DMatrix::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, basis: DMatrix::identity(ambient_dim, ambient_dim) }
    }

    /// Wraps a basis whose columns are already orthonormal.
    pub fn from_orthonormal(basis: DMatrix<f64>) -> Result<Self> {
        let k = basis.ncols();
        let gram = basis.transpose() * &basis;
        let defect = (gram - DMatrix::<f64>::identity(k, k)).amax();
        if k > 0 && defect > ORTH_TOL {
            return Err(Error::InvalidInput(format!("basis not orthonormal (defect {defect:.3e})")));
        }
        Ok(Self { ambient_dim: basis.nrows(), basis })
    }

    /// Span of the given vectors, with numerical rank cut at `tol` relative to
    /// the largest singular value.
    pub fn span(ambient_dim: usize, vectors: &[DVector<f64>], tol: f64) -> Result<Self> {
        if vectors.is_empty() {
            return Ok(Self::zero(ambient_dim));
        }
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
        }
        let cols = DMatrix::from_columns(vectors);
        Ok(column_space(&cols, tol))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> DVector<f64> {
        self.basis.column(i).into_owned()
    }

    pub fn basis_vectors(&self) -> Vec<DVector<f64>> {
        (0..self.dim()).map(|i| self.basis_vector(i)).collect()
    }

    /// Coordinates of the projection of `v` in this basis.
    pub fn coordinates(&self, v: &DVector<f64>) -> DVector<f64> {
        self.basis.tr_mul(v)
    }

    /// Distance from `v` to the subspace.
    pub fn residual(&self, v: &DVector<f64>) -> f64 {
        (v - &self.basis * self.coordinates(v)).norm()
    }

    /// Orthogonal complement inside the ambient space.
    pub fn complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient_dim);
        }
        nullspace_basis(&self.basis.transpose(), RANK_TOL)
    }

    /// Orthogonal complement of `self` inside `outer` (assumes `self ⊆ outer`).
    pub fn complement_within(&self, outer: &Subspace) -> Subspace {
        if self.is_zero() {
            return outer.clone();
        }
        let local = nullspace_basis(&(self.basis.transpose() * &outer.basis), RANK_TOL);
        outer.lift(&local)
    }

    /// Maps a subspace given in this basis' coordinates back to the ambient space.
    pub fn lift(&self, local: &Subspace) -> Subspace {
        let b = &self.basis * &local.basis;
        Subspace { ambient_dim: self.ambient_dim, basis: canonical_basis(&b) }
    }

    /// Expresses `inner ⊆ self` in this basis' coordinates.
    pub fn restrict(&self, inner: &Subspace) -> Subspace {
        let b = self.basis.tr_mul(&inner.basis);
        Subspace { ambient_dim: self.dim(), basis: canonical_basis(&b) }
    }

    /// Sum of two subspaces.
    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut cols = self.basis_vectors();
        cols.extend(other.basis_vectors());
        if cols.is_empty() {
            return Subspace::zero(self.ambient_dim);
        }
        column_space(&DMatrix::from_columns(&cols), RANK_TOL)
    }

    /// Largest principal-angle distance: max over basis vectors of either
    /// space of the residual against the other. Zero iff the spans agree.
    pub fn distance(&self, other: &Subspace) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        let a = self.basis_vectors().iter().map(|v| other.residual(v)).fold(0.0, f64::max);
        let b = other.basis_vectors().iter().map(|v| self.residual(v)).fold(0.0, f64::max);
        a.max(b)
    }

    /// `true` when every basis vector of `self` lies in `other` up to `tol`.
    pub fn is_contained_in(&self, other: &Subspace, tol: f64) -> bool {
        self.basis_vectors().iter().all(|v| other.residual(v) <= tol)
    }
}

/// `Σ ⟨v, bᵢ⟩ bᵢ` over the orthonormal basis of `s`.
pub fn orthogonal_projection(v: &DVector<f64>, s: &Subspace) -> Result<DVector<f64>> {
    if v.len() != s.ambient_dim {
        return Err(Error::DimensionMismatch { expected: s.ambient_dim, found: v.len() });
    }
    Ok(&s.basis * s.coordinates(v))
}

/// Orthonormal basis of `{v : ‖Av‖ ≤ tol · σ_max(A) · ‖v‖}`.
pub fn nullspace_basis(a: &DMatrix<f64>, tol: f64) -> Subspace {
    nullspace_basis_scaled(a, tol, 0.0)
}

/// Like [`nullspace_basis`] but with cutoff `tol · max(σ_max(A), scale)`.
/// Use when `A` is a restriction of an operator of known size `scale`, so
/// that a numerically zero `A` is recognized as zero.
pub fn nullspace_basis_scaled(a: &DMatrix<f64>, tol: f64, scale: f64) -> Subspace {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return Subspace::zero(0);
    }
    if rows == 0 || a.amax() == 0.0 {
        return Subspace::full(cols);
    }
    // Reduce to a square problem with the same right singular structure.
    let square = if rows > cols {
        a.clone().qr().r()
    } else if rows < cols {
        let mut padded = DMatrix::zeros(cols, cols);
        padded.view_mut((0, 0), (rows, cols)).copy_from(a);
        padded
    } else {
        a.clone()
    };
    let svd = square.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sigma_max = svd.singular_values.max();
    let cutoff = tol * sigma_max.max(scale);
    let null_cols: Vec<DVector<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= cutoff)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect();
    if null_cols.is_empty() {
        return Subspace::zero(cols);
    }
    let basis = DMatrix::from_columns(&null_cols);
    Subspace { ambient_dim: cols, basis: canonical_basis(&basis) }
}

/// Orthonormal basis of the column space of `a`.
pub fn column_space(a: &DMatrix<f64>, tol: f64) -> Subspace {
    let (rows, cols) = a.shape();
    if cols == 0 || a.amax() == 0.0 {
        return Subspace::zero(rows);
    }
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("requested U");
    let sigma_max = svd.singular_values.max();
    let keep: Vec<DVector<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s > tol * sigma_max)
        .map(|(i, _)| u.column(i).into_owned())
        .collect();
    if keep.is_empty() {
        return Subspace::zero(rows);
    }
    Subspace { ambient_dim: rows, basis: canonical_basis(&DMatrix::from_columns(&keep)) }
}

/// Canonical orthonormal basis for the span of the orthonormal columns of `q`:
/// pivoted Gram–Schmidt over the columns of the projector `q qᵀ`, with each
/// vector's first significant entry made positive.
fn canonical_basis(q: &DMatrix<f64>) -> DMatrix<f64> {
    let k = q.ncols();
    if k == 0 {
        return q.clone();
    }
    let mut candidates = q * q.transpose();
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(k);
    for _ in 0..k {
        let mut best = 0;
        let mut best_norm = -1.0;
        for c in 0..candidates.ncols() {
            let n = candidates.column(c).norm();
            // strict comparison with a margin keeps pivot choice stable under rounding
            if n > best_norm + 1e-12 {
                best = c;
                best_norm = n;
            }
        }
        let mut v = candidates.column(best).into_owned();
        // re-orthogonalize against accepted vectors for numerical hygiene
        for b in &out {
            let d = b.dot(&v);
            v -= b * d;
        }
        let n = v.norm();
        v /= n;
        let lead = v.iter().position(|x| x.abs() > 1e-6).unwrap_or(0);
        if v[lead] < 0.0 {
            v = -v;
        }
        for c in 0..candidates.ncols() {
            let d = v.dot(&candidates.column(c));
            let mut col = candidates.column_mut(c);
            col.axpy(-d, &v, 1.0);
        }
        out.push(v);
    }
    DMatrix::from_columns(&out)
}

/// Smallest and largest eigenvalues of a symmetric matrix.
pub fn symmetric_spectrum_bounds(a: &DMatrix<f64>) -> (f64, f64) {
    let eig = a.clone().symmetric_eigen();
    (eig.eigenvalues.min(), eig.eigenvalues.max())
}

/// `a^{-1/2}` for a symmetric positive definite matrix.
pub fn inverse_sqrt_spd(a: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = a.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt()));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}
