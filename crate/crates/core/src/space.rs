//! Reductive models `g = h ⊕ m` of homogeneous spaces `G/H`.
//!
//! The isotropy group is taken to be connected, so `Ad(H)`-invariance is
//! replaced by `ad(h)`-equivariance throughout. Vectors of `m` are expressed
//! in an adapted orthonormal basis: the first `dim m₀` coordinates span the
//! fixed-point set `m₀`, the remaining ones span its complement `m′`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::{nullspace_basis, nullspace_basis_scaled, symmetric_spectrum_bounds, Subspace, RANK_TOL};
use crate::lie::{AlgebraElement, LieAlgebra};

/// Tolerance for structural identities (closure, reductivity, equivariance).
pub const STRUCT_TOL: f64 = 1e-10;

/// Spectral-norm bound on the random perturbation in [`HomogeneousSpace::sample_invariant_metric`].
pub const SAMPLE_PERTURBATION: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct HomogeneousSpace {
    label: String,
    algebra: LieAlgebra,
    h: Subspace,
    m: Subspace,
    m0: Subspace,
    mprime: Subspace,
    /// `ad(hᵢ)|_m` in adapted m-coordinates, one per h-basis vector.
    ad_h: Vec<DMatrix<f64>>,
    commutant: Vec<DMatrix<f64>>,
}

/// A symmetric, positive definite, equivariant operator on `m`, in adapted
/// m-coordinates. Defines the Riemannian metric `α(u, v) = ⟨u, Λ v⟩_bi`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricOperator {
    matrix: DMatrix<f64>,
}

impl MetricOperator {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `α(u, v)` on m-coordinate vectors.
    pub fn alpha(&self, u: &DVector<f64>, v: &DVector<f64>) -> f64 {
        u.dot(&(&self.matrix * v))
    }

    pub fn alpha_norm(&self, u: &DVector<f64>) -> f64 {
        self.alpha(u, u).max(0.0).sqrt()
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::InvalidMetric(format!("scale {c} must be positive")));
        }
        Ok(Self { matrix: &self.matrix * c })
    }
}

/// Builds the orthogonal reductive decomposition for the subalgebra spanned
/// by `h_generators`.
pub fn make_reductive_decomposition(
    algebra: LieAlgebra,
    h_generators: &[AlgebraElement],
    label: impl Into<String>,
) -> Result<HomogeneousSpace> {
    HomogeneousSpace::new(algebra, h_generators, label)
}

impl HomogeneousSpace {
    pub fn new(algebra: LieAlgebra, h_generators: &[AlgebraElement], label: impl Into<String>) -> Result<Self> {
        let n = algebra.dim();
        for x in h_generators {
            if x.algebra_id() != algebra.id() {
                return Err(Error::AlgebraMismatch);
            }
        }
        let gens: Vec<DVector<f64>> = h_generators.iter().map(|x| x.coords().clone()).collect();
        let h = Subspace::span(n, &gens, RANK_TOL)?;
        let hb = h.basis_vectors();
        for (i, x) in hb.iter().enumerate() {
            for (j, y) in hb.iter().enumerate().skip(i + 1) {
                let residual = h.residual(&algebra.bracket_coords(x, y));
                if residual > STRUCT_TOL {
                    return Err(Error::NotSubalgebra { i, j, residual });
                }
            }
        }
        let m_raw = algebra.orthogonal_complement(&h)?;
        for (i, x) in hb.iter().enumerate() {
            for (j, y) in m_raw.basis_vectors().iter().enumerate() {
                let b = algebra.bracket_coords(x, y);
                let residual = h.coordinates(&b).norm();
                if residual > STRUCT_TOL {
                    return Err(Error::NotReductive { i, j, residual });
                }
            }
        }

        // Fixed-point set: common kernel of ad(hᵢ)|_m.
        let raw_ad: Vec<DMatrix<f64>> =
            hb.iter().map(|x| m_raw.basis().transpose() * algebra.ad_coords(x) * m_raw.basis()).collect();
        let m0_local =
            if raw_ad.is_empty() { Subspace::full(m_raw.dim()) } else { nullspace_basis(&vstack(&raw_ad), RANK_TOL) };
        let m0 = m_raw.lift(&m0_local);
        let mprime = m0.complement_within(&m_raw);

        let mut cols = m0.basis_vectors();
        cols.extend(mprime.basis_vectors());
        let m =
            if cols.is_empty() { Subspace::zero(n) } else { Subspace::from_orthonormal(DMatrix::from_columns(&cols))? };
        let ad_h: Vec<DMatrix<f64>> =
            hb.iter().map(|x| m.basis().transpose() * algebra.ad_coords(x) * m.basis()).collect();
        let commutant = equivariant_symmetric_operators(m.dim(), &ad_h);

        let space = Self { label: label.into(), algebra, h, m, m0, mprime, ad_h, commutant };
        space.check_invariants()?;
        Ok(space)
    }

    fn check_invariants(&self) -> Result<()> {
        let k = self.m0.dim();
        let d = self.m.dim();
        for (i, a) in self.ad_h.iter().enumerate() {
            let r = a.columns(0, k).amax();
            if k > 0 && r > STRUCT_TOL {
                return Err(Error::StructureViolation(format!("[h{i}, m0] = {r:.3e} is not zero")));
            }
        }
        for (i, l) in self.commutant.iter().enumerate() {
            if k > 0 && k < d {
                let leak = l.view((k, 0), (d - k, k)).amax();
                if leak > STRUCT_TOL {
                    return Err(Error::StructureViolation(format!(
                        "commutant element {i} moves m0 into m' by {leak:.3e}"
                    )));
                }
            }
        }
        if d > 0 {
            let r = self.identity_reconstruction_residual();
            if r > STRUCT_TOL {
                return Err(Error::StructureViolation(format!("identity not in commutant span ({r:.3e})")));
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// `h`, in algebra coordinates.
    pub fn h(&self) -> &Subspace {
        &self.h
    }

    /// `m`, in algebra coordinates, with the adapted basis `(m₀ | m′)`.
    pub fn m(&self) -> &Subspace {
        &self.m
    }

    pub fn m0(&self) -> &Subspace {
        &self.m0
    }

    pub fn mprime(&self) -> &Subspace {
        &self.mprime
    }

    pub fn dim_m(&self) -> usize {
        self.m.dim()
    }

    pub fn dim_m0(&self) -> usize {
        self.m0.dim()
    }

    /// `ad(hᵢ)|_m` in m-coordinates.
    pub fn isotropy_action(&self) -> &[DMatrix<f64>] {
        &self.ad_h
    }

    /// Frobenius-orthonormal basis of the equivariant symmetric operators on `m`.
    pub fn commutant(&self) -> &[DMatrix<f64>] {
        &self.commutant
    }

    /// Distance from `Id` to the span of the commutant basis (Frobenius).
    pub fn identity_reconstruction_residual(&self) -> f64 {
        let d = self.m.dim();
        let id = DMatrix::<f64>::identity(d, d);
        let mut recon = DMatrix::zeros(d, d);
        for l in &self.commutant {
            recon += l * l.dot(&id);
        }
        (id - recon).norm()
    }

    /// m-coordinates of an algebra vector (orthogonal projection onto `m`).
    pub fn to_m(&self, x: &DVector<f64>) -> DVector<f64> {
        self.m.coordinates(x)
    }

    /// Algebra coordinates of an m-coordinate vector.
    pub fn from_m(&self, x: &DVector<f64>) -> DVector<f64> {
        self.m.basis() * x
    }

    /// Norm of the h-component of an algebra vector.
    pub fn h_component_norm(&self, x: &DVector<f64>) -> f64 {
        self.h.coordinates(x).norm()
    }

    /// `[x, y]_m` in m-coordinates, for algebra vectors `x`, `y`.
    pub fn bracket_m(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        self.to_m(&self.algebra.bracket_coords(x, y))
    }

    /// Expresses an algebra-coordinate subspace of `m` in m-coordinates.
    pub fn subspace_in_m(&self, s: &Subspace) -> Subspace {
        self.m.restrict(s)
    }

    /// Maps an m-coordinate subspace back to algebra coordinates.
    pub fn subspace_from_m(&self, s: &Subspace) -> Subspace {
        self.m.lift(s)
    }

    /// Residual of the m-coordinate vector `u` against `m₀`.
    pub fn m0_residual_m(&self, u: &DVector<f64>) -> f64 {
        let k = self.m0.dim();
        u.rows(k, u.len() - k).norm()
    }

    pub fn compute_fixed_point_set(&self) -> Subspace {
        self.m0.clone()
    }

    pub fn compute_equivariant_symmetric_operators(&self) -> Vec<DMatrix<f64>> {
        self.commutant.clone()
    }

    /// Irreducible over ℝ iff the only equivariant symmetric operators are scalars.
    pub fn isotropy_irreducibility_test(&self) -> bool {
        self.commutant.len() == 1
    }

    /// `{X ∈ within : [X, s] = 0 for every basis vector s of S}` (full bracket).
    pub fn centralizer_in(&self, s: &Subspace, within: &Subspace) -> Subspace {
        if s.is_zero() || within.is_zero() {
            return within.clone();
        }
        let ads: Vec<DMatrix<f64>> = s.basis_vectors().iter().map(|v| self.algebra.ad_coords(v)).collect();
        let scale = ads.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let blocks: Vec<DMatrix<f64>> = ads.iter().map(|a| a * within.basis()).collect();
        within.lift(&nullspace_basis_scaled(&vstack(&blocks), RANK_TOL, scale))
    }

    /// `max ‖[a, b] − proj_target [a, b]‖` over basis pairs of `a` and `b`.
    pub fn bracket_inclusion_residual(&self, a: &Subspace, b: &Subspace, target: &Subspace) -> f64 {
        let mut worst = 0.0f64;
        for x in a.basis_vectors() {
            for y in b.basis_vectors() {
                worst = worst.max(target.residual(&self.algebra.bracket_coords(&x, &y)));
            }
        }
        worst
    }

    pub fn identity_metric(&self) -> MetricOperator {
        let d = self.m.dim();
        MetricOperator { matrix: DMatrix::identity(d, d) }
    }

    /// `Id + Σ cᵢ Λᵢ` over the commutant basis.
    pub fn metric_from_coefficients(&self, coeffs: &[f64]) -> Result<MetricOperator> {
        if coeffs.len() != self.commutant.len() {
            return Err(Error::DimensionMismatch { expected: self.commutant.len(), found: coeffs.len() });
        }
        let mut matrix = self.identity_metric().matrix;
        for (c, l) in coeffs.iter().zip(&self.commutant) {
            matrix += l * *c;
        }
        self.metric_operator(matrix)
    }

    /// Validates an m-coordinate matrix as a metric operator.
    pub fn metric_operator(&self, matrix: DMatrix<f64>) -> Result<MetricOperator> {
        let d = self.m.dim();
        if matrix.shape() != (d, d) {
            return Err(Error::DimensionMismatch { expected: d, found: matrix.nrows() });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let scale = matrix.amax().max(1.0);
        if (&matrix - matrix.transpose()).amax() > STRUCT_TOL * scale {
            return Err(Error::InvalidMetric("not symmetric".into()));
        }
        for a in &self.ad_h {
            if (&matrix * a - a * &matrix).amax() > STRUCT_TOL * scale {
                return Err(Error::InvalidMetric("not equivariant".into()));
            }
        }
        if d > 0 && symmetric_spectrum_bounds(&matrix).0 <= 0.0 {
            return Err(Error::InvalidMetric("not positive definite".into()));
        }
        Ok(MetricOperator { matrix })
    }

    /// Seeded random metric `Id + P` with `P` in the commutant span and
    /// `‖P‖₂ ≤ 0.5`.
    pub fn sample_invariant_metric(&self, seed: u64) -> MetricOperator {
        self.sample_invariant_metric_with(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn sample_invariant_metric_with<R: Rng>(&self, rng: &mut R) -> MetricOperator {
        let d = self.m.dim();
        let mut p = DMatrix::zeros(d, d);
        for l in &self.commutant {
            p += l * rng.random_range(-1.0..1.0);
        }
        if d > 0 {
            let (lo, hi) = symmetric_spectrum_bounds(&p);
            let norm = lo.abs().max(hi.abs());
            if norm > SAMPLE_PERTURBATION {
                p *= SAMPLE_PERTURBATION / norm;
            }
        }
        let matrix = DMatrix::identity(d, d) + p;
        MetricOperator { matrix: (&matrix + matrix.transpose()) * 0.5 }
    }
}

/// Stacks matrices with equal column count on top of each other.
pub(crate) fn vstack(blocks: &[DMatrix<f64>]) -> DMatrix<f64> {
    let cols = blocks.first().map_or(0, |b| b.ncols());
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut r = 0;
    for b in blocks {
        out.view_mut((r, 0), (b.nrows(), cols)).copy_from(b);
        r += b.nrows();
    }
    out
}

/// Basis of `{Λ = Λᵀ : Λ Dᵢ = Dᵢ Λ ∀i}`: the commutation system over all
/// `d×d` matrices, intersected with the symmetry constraints, solved as one
/// nullspace. Vectorization is column-major, so the result is orthonormal
/// for the Frobenius pairing.
fn equivariant_symmetric_operators(d: usize, action: &[DMatrix<f64>]) -> Vec<DMatrix<f64>> {
    if d == 0 {
        return Vec::new();
    }
    let var = |a: usize, b: usize| a + b * d;
    let n_sym = d * (d - 1) / 2;
    let mut system = DMatrix::zeros(action.len() * d * d + n_sym, d * d);
    let mut row = 0;
    for a_mat in action {
        // (Λ D − D Λ)_{rc} = Σ_k Λ_{rk} D_{kc} − D_{rk} Λ_{kc}
        for c in 0..d {
            for r in 0..d {
                for k in 0..d {
                    system[(row, var(r, k))] += a_mat[(k, c)];
                    system[(row, var(k, c))] -= a_mat[(r, k)];
                }
                row += 1;
            }
        }
    }
    for a in 0..d {
        for b in (a + 1)..d {
            system[(row, var(a, b))] = 1.0;
            system[(row, var(b, a))] = -1.0;
            row += 1;
        }
    }
    let null = nullspace_basis(&system, RANK_TOL);
    null.basis_vectors()
        .into_iter()
        .map(|v| {
            let m = DMatrix::from_column_slice(d, d, v.as_slice());
            (&m + m.transpose()) * 0.5
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{FieldMatrix, Quaternion};
    use crate::lie::{build_lie_algebra, FactorKind, FactorSpec};

    fn so_sphere(n: usize) -> HomogeneousSpace {
        let g = build_lie_algebra(&[FactorSpec::new(FactorKind::So(n + 1))]).unwrap();
        let mut gens = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let mut m = DMatrix::zeros(n + 1, n + 1);
                m[(a, b)] = 1.0;
                m[(b, a)] = -1.0;
                gens.push(g.element_from_fields(&[(0, FieldMatrix::Real(m))], &[]).unwrap());
            }
        }
        make_reductive_decomposition(g, &gens, "so").unwrap()
    }

    fn quat(n: usize, entries: &[(usize, usize, Quaternion)]) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(crate::kernel::Field::Quaternion, n, n);
        for &(r, c, q) in entries {
            m.set(r, c, q);
        }
        m
    }

    fn sp2_sp1() -> HomogeneousSpace {
        let g = build_lie_algebra(&[FactorSpec::new(FactorKind::Sp(2))]).unwrap();
        let gens: Vec<_> = [Quaternion::I, Quaternion::J, Quaternion::K]
            .iter()
            .map(|q| g.element_from_fields(&[(0, quat(2, &[(0, 0, *q)]))], &[]).unwrap())
            .collect();
        make_reductive_decomposition(g, &gens, "sp2/sp1").unwrap()
    }

    #[test]
    fn so4_so3_irreducible() {
        let s = so_sphere(3);
        assert_eq!(s.dim_m(), 3);
        assert_eq!(s.dim_m0(), 0);
        assert!(s.isotropy_irreducibility_test());
        let s = so_sphere(4);
        assert!(s.isotropy_irreducibility_test());
    }

    #[test]
    fn sp2_sp1_fixed_set_and_commutant() {
        let s = sp2_sp1();
        assert_eq!(s.dim_m(), 7);
        assert_eq!(s.dim_m0(), 3);
        assert_eq!(s.commutant().len(), 7);
        assert!(!s.isotropy_irreducibility_test());
        // m0 is the bottom-right sp(1)
        let g = s.algebra();
        let k = g.element_from_fields(&[(0, quat(2, &[(1, 1, Quaternion::K)]))], &[]).unwrap();
        assert!(s.m0().residual(k.coords()) < 1e-12);
    }

    #[test]
    fn non_subalgebra_rejected() {
        let g = build_lie_algebra(&[FactorSpec::new(FactorKind::Sp(1))]).unwrap();
        let gens = [
            g.element_from_fields(&[(0, quat(1, &[(0, 0, Quaternion::I)]))], &[]).unwrap(),
            g.element_from_fields(&[(0, quat(1, &[(0, 0, Quaternion::J)]))], &[]).unwrap(),
        ];
        assert!(matches!(make_reductive_decomposition(g, &gens, "bad"), Err(Error::NotSubalgebra { .. })));
    }

    #[test]
    fn trivial_isotropy_gives_full_fixed_set() {
        let g = build_lie_algebra(&[FactorSpec::new(FactorKind::Su(2))]).unwrap();
        let s = make_reductive_decomposition(g, &[], "su2").unwrap();
        assert_eq!(s.dim_m0(), 3);
        assert_eq!(s.commutant().len(), 6);
    }

    #[test]
    fn sampled_metrics_are_valid() {
        let s = sp2_sp1();
        for seed in 0..20 {
            let l = s.sample_invariant_metric(seed);
            assert!(s.metric_operator(l.matrix().clone()).is_ok());
            let (lo, _) = symmetric_spectrum_bounds(l.matrix());
            assert!(lo >= 0.5 - 1e-12);
            for a in s.isotropy_action() {
                assert!((l.matrix() * a - a * l.matrix()).amax() < 1e-10);
            }
            assert_eq!(l, s.sample_invariant_metric(seed));
        }
        let zero = vec![0.0; s.commutant().len()];
        assert_eq!(s.metric_from_coefficients(&zero).unwrap(), s.identity_metric());
    }

    #[test]
    fn metric_validation() {
        let s = sp2_sp1();
        let d = s.dim_m();
        assert!(s.metric_operator(-DMatrix::<f64>::identity(d, d)).is_err());
        let mut skew = DMatrix::<f64>::identity(d, d);
        skew[(0, 1)] = 0.3;
        assert!(s.metric_operator(skew).is_err());
        // mixing m0 and m' is not equivariant
        let mut mix = DMatrix::<f64>::identity(d, d);
        mix[(0, 3)] = 0.2;
        mix[(3, 0)] = 0.2;
        assert!(s.metric_operator(mix).is_err());
    }

    #[test]
    fn dimension_additivity_and_block_structure() {
        let s = sp2_sp1();
        assert_eq!(s.m0().dim() + s.mprime().dim(), s.dim_m());
        let k = s.dim_m0();
        for l in s.commutant() {
            assert!(l.view((k, 0), (s.dim_m() - k, k)).amax() < 1e-10);
        }
        assert!(s.identity_reconstruction_residual() < 1e-10);
    }
}
