//! Compact Lie algebras as direct sums of classical matrix algebras and
//! abelian summands.
//!
//! Each matrix factor is stored through its real embedding (see
//! [`real_embedding`]), so brackets and traces are plain real matrix
//! operations regardless of the underlying scalar field. The basis is built
//! orthonormal for the bi-invariant inner product
//!
//! ```text
//! ⟨A, B⟩ = Σ_f κ_f · (−Re tr A_f B_f) + Σ κ_a · a·b
//! ```
//!
//! so algebra coordinates are isometric to the bi-invariant geometry and the
//! gram matrix is the identity up to rounding.

use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{nullspace_basis, real_embedding, Field, FieldMatrix, Quaternion, Subspace, RANK_TOL};

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

/// Membership tolerance when converting matrices to coordinates.
const MEMBERSHIP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    So(usize),
    Su(usize),
    U(usize),
    Sp(usize),
    /// `ℝᵏ` with zero bracket.
    Abelian(usize),
}

impl FactorKind {
    pub fn dim(self) -> usize {
        match self {
            FactorKind::So(n) => n * (n - 1) / 2,
            FactorKind::Su(n) => n * n - 1,
            FactorKind::U(n) => n * n,
            FactorKind::Sp(n) => n * (2 * n + 1),
            FactorKind::Abelian(k) => k,
        }
    }

    pub fn field(self) -> Option<Field> {
        match self {
            FactorKind::So(_) => Some(Field::Real),
            FactorKind::Su(_) | FactorKind::U(_) => Some(Field::Complex),
            FactorKind::Sp(_) => Some(Field::Quaternion),
            FactorKind::Abelian(_) => None,
        }
    }

    fn matrix_size(self) -> usize {
        match self {
            FactorKind::So(n) | FactorKind::Su(n) | FactorKind::U(n) | FactorKind::Sp(n) => n,
            FactorKind::Abelian(_) => 0,
        }
    }

    fn validate(self) -> Result<()> {
        let ok = match self {
            FactorKind::So(n) | FactorKind::Su(n) => n >= 2,
            FactorKind::U(n) | FactorKind::Sp(n) | FactorKind::Abelian(n) => n >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UnsupportedFactor(format!("{self:?}")))
        }
    }
}

/// One direct summand together with its inner-product scale κ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorSpec {
    pub kind: FactorKind,
    pub kappa: f64,
}

impl FactorSpec {
    pub fn new(kind: FactorKind) -> Self {
        Self { kind, kappa: 1.0 }
    }

    pub fn with_kappa(mut self, kappa: f64) -> Self {
        self.kappa = kappa;
        self
    }
}

/// An element in matrix form: one real-embedded block per matrix factor plus
/// the concatenated abelian coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixParts {
    pub blocks: Vec<DMatrix<f64>>,
    pub abelian: DVector<f64>,
}

impl MatrixParts {
    fn scale(&self, s: f64) -> Self {
        Self { blocks: self.blocks.iter().map(|b| b * s).collect(), abelian: &self.abelian * s }
    }

    fn axpy(&mut self, a: f64, other: &MatrixParts) {
        for (x, y) in self.blocks.iter_mut().zip(&other.blocks) {
            *x += y * a;
        }
        self.abelian.axpy(a, &other.abelian, 1.0);
    }

    fn max_abs(&self) -> f64 {
        self.blocks.iter().map(|b| b.amax()).fold(self.abelian.amax(), f64::max)
    }
}

#[derive(Debug, Clone)]
struct MatrixFactor {
    field: Field,
    size: usize,
    kappa: f64,
}

/// A compact Lie algebra with a bi-invariant-orthonormal basis.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    id: u64,
    factors: Vec<FactorSpec>,
    matrix_factors: Vec<MatrixFactor>,
    abelian_kappa: Vec<f64>,
    basis: Vec<MatrixParts>,
    /// `ad[i][(k, j)] = c[i][j][k]`, i.e. `[eᵢ, eⱼ] = Σ_k ad[i][(k, j)] e_k`.
    ad: Vec<DMatrix<f64>>,
    gram: DMatrix<f64>,
    gram_chol: Cholesky<f64, Dyn>,
}

/// A vector of the algebra, tied to its owning algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    algebra_id: u64,
    coords: DVector<f64>,
}

impl AlgebraElement {
    pub fn coords(&self) -> &DVector<f64> {
        &self.coords
    }

    pub fn algebra_id(&self) -> u64 {
        self.algebra_id
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { algebra_id: self.algebra_id, coords: &self.coords * s }
    }
}

/// Builds the direct sum of the given factors.
pub fn build_lie_algebra(spec: &[FactorSpec]) -> Result<LieAlgebra> {
    LieAlgebra::new(spec)
}

impl LieAlgebra {
    pub fn new(spec: &[FactorSpec]) -> Result<Self> {
        if spec.is_empty() {
            return Err(Error::UnsupportedFactor("empty factor list".into()));
        }
        let mut matrix_factors = Vec::new();
        let mut abelian_kappa = Vec::new();
        for f in spec {
            f.kind.validate()?;
            if !(f.kappa.is_finite() && f.kappa > 0.0) {
                return Err(Error::UnsupportedFactor(format!("non-positive scale {} on {:?}", f.kappa, f.kind)));
            }
            match f.kind.field() {
                Some(field) => matrix_factors.push(MatrixFactor { field, size: f.kind.matrix_size(), kappa: f.kappa }),
                None => abelian_kappa.extend(std::iter::repeat_n(f.kappa, f.kind.dim())),
            }
        }

        let mut algebra = LieAlgebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            factors: spec.to_vec(),
            matrix_factors,
            abelian_kappa,
            basis: Vec::new(),
            ad: Vec::new(),
            gram: DMatrix::zeros(0, 0),
            gram_chol: Cholesky::new(DMatrix::<f64>::identity(1, 1)).expect("identity is SPD"),
        };

        let mut basis = Vec::new();
        let mut matrix_index = 0;
        let mut abelian_index = 0;
        for f in spec {
            match f.kind.field() {
                Some(field) => {
                    for m in factor_basis(f.kind) {
                        let mut parts = algebra.zero_parts();
                        parts.blocks[matrix_index] = real_embedding(&m, field)?;
                        basis.push(parts);
                    }
                    matrix_index += 1;
                }
                None => {
                    for _ in 0..f.kind.dim() {
                        let mut parts = algebra.zero_parts();
                        parts.abelian[abelian_index] = 1.0;
                        abelian_index += 1;
                        basis.push(parts);
                    }
                }
            }
        }
        // Normalize to unit bi-invariant length.
        for b in basis.iter_mut() {
            let n = algebra.inner_parts(b, b).sqrt();
            *b = b.scale(1.0 / n);
        }
        let dim = basis.len();
        let gram = DMatrix::from_fn(dim, dim, |i, j| algebra.inner_parts(&basis[i], &basis[j]));
        algebra.gram_chol = Cholesky::new(gram.clone())
            .ok_or_else(|| Error::UnsupportedFactor("bi-invariant form is not positive definite".into()))?;
        algebra.gram = gram;
        algebra.basis = basis;

        let mut ad = vec![DMatrix::zeros(dim, dim); dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let c = algebra.commutator_parts(&algebra.basis[i], &algebra.basis[j]);
                let coords = algebra.coords_of_parts(&c)?;
                ad[i].set_column(j, &coords);
                ad[j].set_column(i, &(-coords));
            }
        }
        algebra.ad = ad;
        Ok(algebra)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn factors(&self) -> &[FactorSpec] {
        &self.factors
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    /// `c[i][j][k]` with `[eᵢ, eⱼ] = Σ_k c[i][j][k] e_k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.ad[i][(k, j)]
    }

    /// Matrix of `ad(eᵢ)` in algebra coordinates.
    pub fn ad_basis(&self, i: usize) -> &DMatrix<f64> {
        &self.ad[i]
    }

    /// Matrix of `ad(x)` for a coordinate vector `x`.
    pub fn ad_coords(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if *xi != 0.0 {
                out += &self.ad[i] * *xi;
            }
        }
        out
    }

    /// Bracket on raw coordinate vectors via the structure constants.
    pub fn bracket_coords(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim());
        for (i, xi) in x.iter().enumerate() {
            if *xi != 0.0 {
                out.gemv(*xi, &self.ad[i], y, 1.0);
            }
        }
        out
    }

    pub fn element(&self, coords: DVector<f64>) -> Result<AlgebraElement> {
        if coords.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: coords.len() });
        }
        if coords.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(AlgebraElement { algebra_id: self.id, coords })
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut c = DVector::zeros(self.dim());
        c[i] = 1.0;
        AlgebraElement { algebra_id: self.id, coords: c }
    }

    fn check_owner(&self, x: &AlgebraElement) -> Result<()> {
        if x.algebra_id == self.id {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_owner(x)?;
        self.check_owner(y)?;
        Ok(AlgebraElement { algebra_id: self.id, coords: self.bracket_coords(&x.coords, &y.coords) })
    }

    pub fn bi_invariant_inner_product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
        self.check_owner(x)?;
        self.check_owner(y)?;
        Ok(x.coords.dot(&(&self.gram * &y.coords)))
    }

    /// Complement of `s` with respect to the gram form.
    pub fn orthogonal_complement(&self, s: &Subspace) -> Result<Subspace> {
        if s.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: s.ambient_dim() });
        }
        if s.is_zero() {
            return Ok(Subspace::full(self.dim()));
        }
        Ok(nullspace_basis(&(s.basis().transpose() * &self.gram), RANK_TOL))
    }

    pub fn zero_parts(&self) -> MatrixParts {
        MatrixParts {
            blocks: self
                .matrix_factors
                .iter()
                .map(|f| {
                    let n = f.size * f.field.real_dim();
                    DMatrix::zeros(n, n)
                })
                .collect(),
            abelian: DVector::zeros(self.abelian_kappa.len()),
        }
    }

    /// Matrix form of a coordinate vector.
    pub fn parts_of(&self, coords: &DVector<f64>) -> MatrixParts {
        let mut out = self.zero_parts();
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0.0 {
                out.axpy(*c, b);
            }
        }
        out
    }

    /// Builds matrix parts from field matrices given per matrix factor
    /// (indexed among the matrix factors only) and abelian coordinates.
    pub fn parts_from_fields(&self, blocks: &[(usize, FieldMatrix)], abelian: &[f64]) -> Result<MatrixParts> {
        let mut parts = self.zero_parts();
        for (idx, m) in blocks {
            let f =
                self.matrix_factors.get(*idx).ok_or_else(|| Error::InvalidInput(format!("no matrix factor {idx}")))?;
            let e = real_embedding(m, f.field)?;
            if e.shape() != parts.blocks[*idx].shape() {
                return Err(Error::DimensionMismatch { expected: parts.blocks[*idx].nrows(), found: e.nrows() });
            }
            parts.blocks[*idx] = e;
        }
        // an empty slice means a zero abelian part
        if !abelian.is_empty() {
            if abelian.len() != parts.abelian.len() {
                return Err(Error::DimensionMismatch { expected: parts.abelian.len(), found: abelian.len() });
            }
            parts.abelian.copy_from_slice(abelian);
        }
        Ok(parts)
    }

    /// Element of the algebra given in matrix form; fails if the matrices do
    /// not lie in the algebra.
    pub fn element_from_parts(&self, parts: &MatrixParts) -> Result<AlgebraElement> {
        Ok(AlgebraElement { algebra_id: self.id, coords: self.coords_of_parts(parts)? })
    }

    pub fn element_from_fields(&self, blocks: &[(usize, FieldMatrix)], abelian: &[f64]) -> Result<AlgebraElement> {
        self.element_from_parts(&self.parts_from_fields(blocks, abelian)?)
    }

    /// `Σ κ_f (−1/e_f) tr(A_f B_f) + Σ κ_a a b`.
    pub fn inner_parts(&self, a: &MatrixParts, b: &MatrixParts) -> f64 {
        let mut total = 0.0;
        for (f, (x, y)) in self.matrix_factors.iter().zip(a.blocks.iter().zip(&b.blocks)) {
            // tr(XY) = Σ_ij X_ij Y_ji
            let tr: f64 = x.iter().zip(y.transpose().iter()).map(|(p, q)| p * q).sum();
            total += f.kappa * (-tr / f.field.real_dim() as f64);
        }
        for ((k, p), q) in self.abelian_kappa.iter().zip(a.abelian.iter()).zip(b.abelian.iter()) {
            total += k * p * q;
        }
        total
    }

    /// Blockwise matrix commutator; abelian parts bracket to zero.
    pub fn commutator_parts(&self, a: &MatrixParts, b: &MatrixParts) -> MatrixParts {
        MatrixParts {
            blocks: a.blocks.iter().zip(&b.blocks).map(|(x, y)| x * y - y * x).collect(),
            abelian: DVector::zeros(self.abelian_kappa.len()),
        }
    }

    fn coords_of_parts(&self, parts: &MatrixParts) -> Result<DVector<f64>> {
        if parts.blocks.len() != self.matrix_factors.len() || parts.abelian.len() != self.abelian_kappa.len() {
            return Err(Error::InvalidInput("matrix parts do not match the factor layout".into()));
        }
        let rhs = DVector::from_iterator(self.basis.len(), self.basis.iter().map(|b| self.inner_parts(b, parts)));
        let coords = self.gram_chol.solve(&rhs);
        let mut recon = self.parts_of(&coords);
        recon.axpy(-1.0, parts);
        let residual = recon.max_abs();
        if residual > MEMBERSHIP_TOL * parts.max_abs().max(1.0) {
            return Err(Error::NotInAlgebra { residual });
        }
        Ok(coords)
    }
}

/// Mutually orthogonal spanning matrices of a classical factor, over its
/// natural field. Empty for abelian summands.
pub fn factor_basis(kind: FactorKind) -> Vec<FieldMatrix> {
    let Some(field) = kind.field() else {
        return Vec::new();
    };
    let n = kind.matrix_size();
    let unit = |r: usize, c: usize, q: Quaternion| {
        let mut m = FieldMatrix::zeros(field, n, n);
        m.set(r, c, q);
        m
    };
    let pair = |a: usize, b: usize, qa: Quaternion, qb: Quaternion| {
        let mut m = FieldMatrix::zeros(field, n, n);
        m.set(a, b, qa);
        m.set(b, a, qb);
        m
    };
    let one = Quaternion::ONE;
    let mut out = Vec::new();
    // off-diagonal real antisymmetric part, common to all families
    for a in 0..n {
        for b in (a + 1)..n {
            out.push(pair(a, b, one, -one));
        }
    }
    let imaginary: &[Quaternion] = match kind {
        FactorKind::So(_) => &[],
        FactorKind::Su(_) | FactorKind::U(_) => &[Quaternion::I],
        FactorKind::Sp(_) => &[Quaternion::I, Quaternion::J, Quaternion::K],
        FactorKind::Abelian(_) => &[],
    };
    for &q in imaginary {
        for a in 0..n {
            for b in (a + 1)..n {
                out.push(pair(a, b, q, q));
            }
        }
    }
    match kind {
        FactorKind::Su(_) => {
            // orthogonal traceless diagonal: i·diag(1, …, 1, −k, 0, …)
            for k in 1..n {
                let mut m = FieldMatrix::zeros(field, n, n);
                for d in 0..k {
                    m.set(d, d, Quaternion::I);
                }
                m.set(k, k, Quaternion::I.scale(-(k as f64)));
                out.push(m);
            }
        }
        FactorKind::U(_) => {
            for d in 0..n {
                out.push(unit(d, d, Quaternion::I));
            }
        }
        FactorKind::Sp(_) => {
            for &q in imaginary {
                for d in 0..n {
                    out.push(unit(d, d, q));
                }
            }
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn alg(kinds: &[FactorKind]) -> LieAlgebra {
        build_lie_algebra(&kinds.iter().map(|k| FactorSpec::new(*k)).collect::<Vec<_>>()).unwrap()
    }

    fn quat_1x1(q: Quaternion) -> FieldMatrix {
        FieldMatrix::Quaternion(DMatrix::from_element(1, 1, q))
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg(&[FactorKind::Su(2)]).dim(), 3);
        assert_eq!(alg(&[FactorKind::Sp(2), FactorKind::Abelian(1)]).dim(), 11);
        assert_eq!(alg(&[FactorKind::So(5)]).dim(), 10);
        assert_eq!(alg(&[FactorKind::U(3)]).dim(), 9);
        assert_eq!(alg(&[FactorKind::Su(4)]).dim(), 15);
        assert_eq!(alg(&[FactorKind::Sp(3)]).dim(), 21);
    }

    #[test]
    fn gram_is_identity() {
        for kinds in [
            vec![FactorKind::Su(4)],
            vec![FactorKind::Sp(2), FactorKind::Abelian(1)],
            vec![FactorKind::U(3), FactorKind::So(4)],
        ] {
            let a = alg(&kinds);
            let d = (a.gram() - DMatrix::<f64>::identity(a.dim(), a.dim())).amax();
            assert!(d < 1e-13, "{kinds:?}: {d}");
        }
    }

    #[test]
    fn unsupported_factors_rejected() {
        assert!(build_lie_algebra(&[FactorSpec::new(FactorKind::So(1))]).is_err());
        assert!(build_lie_algebra(&[FactorSpec::new(FactorKind::Su(1))]).is_err());
        assert!(build_lie_algebra(&[FactorSpec::new(FactorKind::Sp(0))]).is_err());
        assert!(build_lie_algebra(&[FactorSpec::new(FactorKind::U(2)).with_kappa(-1.0)]).is_err());
        assert!(build_lie_algebra(&[]).is_err());
    }

    #[test]
    fn sp1_bracket_and_inner_product() {
        let a = alg(&[FactorKind::Sp(1)]);
        let i = a.element_from_fields(&[(0, quat_1x1(Quaternion::I))], &[]).unwrap();
        let j = a.element_from_fields(&[(0, quat_1x1(Quaternion::J))], &[]).unwrap();
        let k = a.element_from_fields(&[(0, quat_1x1(Quaternion::K))], &[]).unwrap();
        let ij = a.bracket(&i, &j).unwrap();
        assert!((ij.coords() - k.coords() * 2.0).norm() < 1e-14);
        assert!((a.bi_invariant_inner_product(&i, &i).unwrap() - 1.0).abs() < 1e-14);
        assert!(a.bi_invariant_inner_product(&i, &j).unwrap().abs() < 1e-14);
    }

    #[test]
    fn so3_bracket_of_elementary_generators() {
        let a = alg(&[FactorKind::So(3)]);
        let gen = |p: usize, q: usize| {
            let mut m = DMatrix::zeros(3, 3);
            m[(p, q)] = 1.0;
            m[(q, p)] = -1.0;
            a.element_from_fields(&[(0, FieldMatrix::Real(m))], &[]).unwrap()
        };
        // L1 = E23 − E32, L2 = E31 − E13: L1·L2 = E21 and L2·L1 = E12
        let (l1, l2, l3) = (gen(1, 2), gen(2, 0), gen(1, 0));
        let b = a.bracket(&l1, &l2).unwrap();
        assert!((b.coords() - l3.coords()).norm() < 1e-14);
        assert!(a.bracket(&l1, &l1).unwrap().coords().norm() < 1e-15);
    }

    #[test]
    fn non_member_rejected() {
        let a = alg(&[FactorKind::So(3)]);
        let sym = FieldMatrix::Real(DMatrix::identity(3, 3));
        assert!(matches!(a.element_from_fields(&[(0, sym)], &[]), Err(Error::NotInAlgebra { .. })));
    }

    #[test]
    fn foreign_elements_rejected() {
        let a = alg(&[FactorKind::Su(2)]);
        let b = alg(&[FactorKind::Su(2)]);
        assert_eq!(a.bracket(&a.basis_element(0), &b.basis_element(1)), Err(Error::AlgebraMismatch));
        assert_eq!(a.bi_invariant_inner_product(&b.basis_element(0), &a.basis_element(1)), Err(Error::AlgebraMismatch));
    }

    #[test]
    fn orthogonal_complement_dims() {
        let a = alg(&[FactorKind::Su(3)]);
        assert_eq!(a.orthogonal_complement(&Subspace::full(8)).unwrap().dim(), 0);
        assert_eq!(a.orthogonal_complement(&Subspace::zero(8)).unwrap().dim(), 8);
        // su(2) block in the top-left corner
        let blocks: Vec<DVector<f64>> = factor_basis(FactorKind::Su(2))
            .into_iter()
            .map(|m| {
                let FieldMatrix::Complex(c) = m else { unreachable!() };
                let mut big = DMatrix::from_element(3, 3, num_complex::Complex64::new(0.0, 0.0));
                big.view_mut((0, 0), (2, 2)).copy_from(&c);
                a.element_from_fields(&[(0, FieldMatrix::Complex(big))], &[]).unwrap().coords().clone()
            })
            .collect();
        let h = Subspace::span(8, &blocks, RANK_TOL).unwrap();
        let m = a.orthogonal_complement(&h).unwrap();
        assert_eq!(m.dim(), 5);
        assert!((h.basis().transpose() * a.gram() * m.basis()).amax() < 1e-13);
    }

    #[test]
    fn abelian_summand_is_central() {
        let a = alg(&[FactorKind::Sp(1), FactorKind::Abelian(2)]);
        for i in 0..a.dim() {
            for j in 3..5 {
                assert!(a.bracket_coords(a.basis_element(i).coords(), a.basis_element(j).coords()).norm() < 1e-15);
            }
        }
    }

    fn random_coords(rng: &mut ChaCha8Rng, n: usize) -> DVector<f64> {
        DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))
    }

    #[test]
    fn jacobi_ad_invariance_and_matrix_agreement() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for kinds in [
            vec![FactorKind::So(5)],
            vec![FactorKind::Su(3)],
            vec![FactorKind::U(2), FactorKind::Abelian(1)],
            vec![FactorKind::Sp(2), FactorKind::Sp(1)],
        ] {
            let a = alg(&kinds);
            let n = a.dim();
            for _ in 0..40 {
                let (x, y, z) = (random_coords(&mut rng, n), random_coords(&mut rng, n), random_coords(&mut rng, n));
                let jac = a.bracket_coords(&x, &a.bracket_coords(&y, &z))
                    + a.bracket_coords(&y, &a.bracket_coords(&z, &x))
                    + a.bracket_coords(&z, &a.bracket_coords(&x, &y));
                assert!(jac.amax() < 1e-10);
                let inv = a.bracket_coords(&x, &y).dot(&z) + y.dot(&a.bracket_coords(&x, &z));
                assert!(inv.abs() < 1e-10);
                let via_matrices = a.commutator_parts(&a.parts_of(&x), &a.parts_of(&y));
                let mut diff = a.parts_of(&a.bracket_coords(&x, &y));
                diff.axpy(-1.0, &via_matrices);
                assert!(diff.max_abs() < 1e-10);
            }
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let d = a.structure_constant(i, j, k) + a.structure_constant(j, i, k);
                        assert!(d.abs() < 1e-14);
                    }
                }
            }
        }
    }
}
