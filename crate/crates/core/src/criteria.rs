//! Geodesic and equigeodesic vector criteria for Riemannian, Randers and
//! (α, β) metrics on a reductive model.
//!
//! All residuals are evaluated on a normalized copy of `X`: α-normalized for
//! a fixed metric, bi-invariantly normalized for the equigeodesic tests. The
//! verdict threshold [`TAU_CRIT`] is therefore scale free.
//!
//! For a fixed metric, `X` is a geodesic vector when the linear functional
//! `Z ↦ α([X, Z]_m, W)` vanishes on `m`, where `W` depends on the metric
//! class:
//!
//! | metric     | `W`                                                   |
//! |------------|-------------------------------------------------------|
//! | Riemannian | `X_m`                                                 |
//! | (α, β)     | `(φ(s) − sφ′(s)) X_m + φ′(s) ‖X_m‖_α u`               |
//! | Randers    | `X_m + ‖X_m‖_α u`                                     |
//!
//! with `s = α(X_m, u) / ‖X_m‖_α`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::inverse_sqrt_spd;
use crate::lie::AlgebraElement;
use crate::space::{HomogeneousSpace, MetricOperator, STRUCT_TOL};

/// Verdict threshold on normalized residuals.
pub const TAU_CRIT: f64 = 1e-8;

/// Radius of the α-ball from which the oracle draws `u`.
pub const ORACLE_U_RADIUS: f64 = 0.9;

/// Grid size for the convexity check on `[−b, b]`.
const CONVEXITY_GRID: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiPreset {
    /// `φ(s) = 1 + s`
    Randers,
    /// `φ(s) = (1 + s)²`
    Quadratic,
    /// `φ(s) = 1 / (1 − s)`
    Inverse,
}

impl PhiPreset {
    pub fn phi(self, s: f64) -> f64 {
        match self {
            PhiPreset::Randers => 1.0 + s,
            PhiPreset::Quadratic => (1.0 + s) * (1.0 + s),
            PhiPreset::Inverse => 1.0 / (1.0 - s),
        }
    }

    pub fn dphi(self, s: f64) -> f64 {
        match self {
            PhiPreset::Randers => 1.0,
            PhiPreset::Quadratic => 2.0 * (1.0 + s),
            PhiPreset::Inverse => 1.0 / ((1.0 - s) * (1.0 - s)),
        }
    }

    pub fn ddphi(self, s: f64) -> f64 {
        match self {
            PhiPreset::Randers => 0.0,
            PhiPreset::Quadratic => 2.0,
            PhiPreset::Inverse => 2.0 / ((1.0 - s) * (1.0 - s) * (1.0 - s)),
        }
    }
}

/// Data `(Λ, u, φ)` of an invariant (α, β) norm. `u` is stored in
/// m-coordinates and lies in `m₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiNormSpec {
    metric: MetricOperator,
    u: DVector<f64>,
    phi: PhiPreset,
    b: f64,
}

impl MinkowskiNormSpec {
    pub fn new(space: &HomogeneousSpace, metric: MetricOperator, u: DVector<f64>, phi: PhiPreset) -> Result<Self> {
        let u = validate_u(space, &metric, u)?;
        let b = metric.alpha_norm(&u);
        if phi == PhiPreset::Randers && b >= 1.0 {
            return Err(Error::RandersBound { value: b * b });
        }
        for step in 0..CONVEXITY_GRID {
            let s = -b + 2.0 * b * step as f64 / (CONVEXITY_GRID - 1) as f64;
            let positive = phi.phi(s) > 0.0;
            let convex = phi.phi(s) - s * phi.dphi(s) + (b * b - s * s) * phi.ddphi(s) > 0.0;
            if !(positive && convex) {
                return Err(Error::NotConvex { s, b });
            }
        }
        Ok(Self { metric, u, phi, b })
    }

    pub fn metric(&self) -> &MetricOperator {
        &self.metric
    }

    pub fn u(&self) -> &DVector<f64> {
        &self.u
    }

    pub fn phi(&self) -> PhiPreset {
        self.phi
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `F(y) = ‖y‖_α φ(α(y, u) / ‖y‖_α)` for an m-coordinate vector `y`.
    pub fn norm(&self, y: &DVector<f64>) -> f64 {
        let a = self.metric.alpha_norm(y);
        if a == 0.0 {
            return 0.0;
        }
        a * self.phi.phi(self.metric.alpha(y, &self.u) / a)
    }
}

/// Which basis a witness index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "basis", content = "index", rename_all = "snake_case")]
pub enum Witness {
    /// Direction `Z` of the adapted m-basis.
    MBasis(usize),
    /// Element of the equivariant symmetric operator basis.
    Commutant(usize),
    /// Direction of the m₀-basis.
    M0Basis(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub residual: f64,
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
}

impl CriterionReport {
    fn from_components(components: impl IntoIterator<Item = (f64, Witness)>) -> Self {
        let mut residual = 0.0;
        let mut witness = None;
        for (r, w) in components {
            if witness.is_none() || r > residual {
                residual = r;
                witness = Some(w);
            }
        }
        Self { residual, verdict: residual <= TAU_CRIT, witnesses: witness.into_iter().collect() }
    }
}

fn check_element(space: &HomogeneousSpace, x: &AlgebraElement) -> Result<()> {
    if x.algebra_id() != space.algebra().id() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

fn validate_u(space: &HomogeneousSpace, metric: &MetricOperator, u: DVector<f64>) -> Result<DVector<f64>> {
    if u.len() != space.dim_m() {
        return Err(Error::DimensionMismatch { expected: space.dim_m(), found: u.len() });
    }
    if u.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if metric.matrix().nrows() != space.dim_m() {
        return Err(Error::DimensionMismatch { expected: space.dim_m(), found: metric.matrix().nrows() });
    }
    let residual = space.m0_residual_m(&u);
    if residual > STRUCT_TOL * u.norm().max(1.0) {
        return Err(Error::NotInFixedSet { residual });
    }
    Ok(u)
}

/// Normalized `X` (algebra coordinates) and its m-part, scaled to unit α-length.
fn alpha_normalized(
    space: &HomogeneousSpace,
    metric: &MetricOperator,
    x: &AlgebraElement,
) -> Result<(DVector<f64>, DVector<f64>)> {
    check_element(space, x)?;
    let coords = x.coords();
    if coords.norm() == 0.0 {
        return Err(Error::ZeroVector);
    }
    let xm = space.to_m(coords);
    if xm.norm() <= STRUCT_TOL * coords.norm() {
        return Err(Error::VectorInIsotropy);
    }
    let a = metric.alpha_norm(&xm);
    Ok((coords / a, xm / a))
}

/// `max_Z |α([X, Z]_m, W)|` over the adapted m-basis.
fn functional_residual(
    space: &HomogeneousSpace,
    metric: &MetricOperator,
    x: &DVector<f64>,
    w: &DVector<f64>,
) -> CriterionReport {
    let m = space.m().basis();
    let ad_m = m.transpose() * space.algebra().ad_coords(x) * m;
    let values = ad_m.tr_mul(&(metric.matrix() * w));
    CriterionReport::from_components(values.iter().enumerate().map(|(j, v)| (v.abs(), Witness::MBasis(j))))
}

/// Geodesic vector residual for the Riemannian metric `α` defined by `metric`.
pub fn riemannian_geodesic_residual(
    space: &HomogeneousSpace,
    metric: &MetricOperator,
    x: &AlgebraElement,
) -> Result<CriterionReport> {
    let (xn, xm) = alpha_normalized(space, metric, x)?;
    Ok(functional_residual(space, metric, &xn, &xm))
}

/// Geodesic vector residual for the (α, β) metric with data `norm`.
pub fn alpha_beta_geodesic_residual(
    space: &HomogeneousSpace,
    norm: &MinkowskiNormSpec,
    x: &AlgebraElement,
) -> Result<CriterionReport> {
    let (xn, xm) = alpha_normalized(space, &norm.metric, x)?;
    // ‖X_m‖_α = 1 after normalization
    let s = norm.metric.alpha(&xm, &norm.u);
    if s.abs() > norm.b * (1.0 + 1e-12) {
        return Err(Error::OutsideDomain { s, b: norm.b });
    }
    let phi = norm.phi;
    let w = &xm * (phi.phi(s) - s * phi.dphi(s)) + &norm.u * phi.dphi(s);
    Ok(functional_residual(space, &norm.metric, &xn, &w))
}

/// Geodesic vector residual for the Randers metric `F(y) = ‖y‖_α + α(y, u)`.
pub fn randers_geodesic_residual(
    space: &HomogeneousSpace,
    metric: &MetricOperator,
    u: &DVector<f64>,
    x: &AlgebraElement,
) -> Result<CriterionReport> {
    let u = validate_u(space, metric, u.clone())?;
    let bound = metric.alpha(&u, &u);
    if bound >= 1.0 {
        return Err(Error::RandersBound { value: bound });
    }
    let (xn, xm) = alpha_normalized(space, metric, x)?;
    let w = &xm + &u;
    Ok(functional_residual(space, metric, &xn, &w))
}

/// Bi-normalized m-coordinates of `X ∈ m \ {0}`.
fn m_normalized(space: &HomogeneousSpace, x: &AlgebraElement) -> Result<DVector<f64>> {
    check_element(space, x)?;
    let c = x.coords();
    let n = c.norm();
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    let residual = space.h_component_norm(c) / n;
    if residual > STRUCT_TOL {
        return Err(Error::NotInM { residual });
    }
    Ok(space.to_m(c) / n)
}

/// `ad(X)|_m` in m-coordinates for an m-coordinate vector `X`.
pub(crate) fn ad_on_m(space: &HomogeneousSpace, xm: &DVector<f64>) -> DMatrix<f64> {
    let m = space.m().basis();
    m.transpose() * space.algebra().ad_coords(&(m * xm)) * m
}

/// `max_i ‖[Λᵢ X, X]_m‖` over the commutant basis, for a unit m-vector.
pub(crate) fn quadratic_components(space: &HomogeneousSpace, xm: &DVector<f64>) -> Vec<(f64, Witness)> {
    let ad = ad_on_m(space, xm);
    space.commutant().iter().enumerate().map(|(i, l)| ((&ad * (l * xm)).norm(), Witness::Commutant(i))).collect()
}

/// `‖[X, v]_m‖` for each m₀-basis vector `v`.
pub(crate) fn commuting_components(space: &HomogeneousSpace, xm: &DVector<f64>) -> Vec<(f64, Witness)> {
    let ad = ad_on_m(space, xm);
    (0..space.dim_m0()).map(|j| (ad.column(j).norm(), Witness::M0Basis(j))).collect()
}

/// `X` is a Riemannian equigeodesic vector iff `[Λ(X), X]_m = 0` for every
/// invariant metric operator; by linearity it suffices to test a basis of the
/// equivariant symmetric operators.
pub fn riemannian_equigeodesic_test(space: &HomogeneousSpace, x: &AlgebraElement) -> Result<CriterionReport> {
    let xm = m_normalized(space, x)?;
    Ok(CriterionReport::from_components(quadratic_components(space, &xm)))
}

/// Randers (equivalently (α, β)) equigeodesic test: Riemannian equigeodesic
/// and `[X, m₀] ⊂ h`.
pub fn randers_equigeodesic_test(space: &HomogeneousSpace, x: &AlgebraElement) -> Result<CriterionReport> {
    let xm = m_normalized(space, x)?;
    if space.dim_m0() == 0 {
        return Err(Error::TrivialFixedSet);
    }
    let mut components = quadratic_components(space, &xm);
    components.extend(commuting_components(space, &xm));
    Ok(CriterionReport::from_components(components))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub n_samples: usize,
    pub seed: u64,
    /// Largest Randers residual over the random samples.
    pub max_residual: f64,
    /// Index of the sample attaining `max_residual`.
    pub worst_sample: usize,
    /// Metric operator of the worst sample, row-major in m-coordinates.
    pub worst_metric: Vec<Vec<f64>>,
    /// `u` of the worst sample, in m-coordinates.
    pub worst_u: Vec<f64>,
    /// Residual for `Λ = Id`, `u = 0`.
    pub baseline_residual: f64,
}

impl OracleReport {
    pub fn verdict(&self) -> bool {
        self.max_residual <= TAU_CRIT
    }
}

/// Draws `u` uniformly from the α-ball of radius [`ORACLE_U_RADIUS`] in `m₀`.
pub fn sample_u<R: Rng>(space: &HomogeneousSpace, metric: &MetricOperator, rng: &mut R) -> DVector<f64> {
    let k = space.dim_m0();
    let dir = DVector::from_fn(k, |_, _| rng.sample::<f64, _>(StandardNormal));
    let radius = ORACLE_U_RADIUS * rng.random::<f64>().powf(1.0 / k as f64);
    let w = if dir.norm() > 0.0 { dir.normalize() * radius } else { DVector::zeros(k) };
    let lambda0 = metric.matrix().view((0, 0), (k, k)).into_owned();
    let u0 = inverse_sqrt_spd(&lambda0) * w;
    let mut u = DVector::zeros(space.dim_m());
    u.rows_mut(0, k).copy_from(&u0);
    u
}

/// Independent check of the Randers equigeodesic property: evaluates the
/// Randers geodesic residual of `X` on `n_samples` seeded random invariant
/// Randers metrics.
pub fn sampled_metric_oracle(
    space: &HomogeneousSpace,
    x: &AlgebraElement,
    n_samples: usize,
    seed: u64,
) -> Result<OracleReport> {
    if space.dim_m0() == 0 {
        return Err(Error::TrivialFixedSet);
    }
    if n_samples == 0 {
        return Err(Error::InvalidInput("n_samples must be at least 1".into()));
    }
    let id = space.identity_metric();
    let baseline = randers_geodesic_residual(space, &id, &DVector::zeros(space.dim_m()), x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: Option<(usize, f64, MetricOperator, DVector<f64>)> = None;
    for i in 0..n_samples {
        let metric = space.sample_invariant_metric_with(&mut rng);
        let u = sample_u(space, &metric, &mut rng);
        let r = randers_geodesic_residual(space, &metric, &u, x)?.residual;
        if worst.as_ref().is_none_or(|w| r > w.1) {
            worst = Some((i, r, metric, u));
        }
    }
    let (worst_sample, max_residual, metric, u) = worst.expect("n_samples >= 1");
    let mat = metric.matrix();
    Ok(OracleReport {
        n_samples,
        seed,
        max_residual,
        worst_sample,
        worst_metric: (0..mat.nrows()).map(|r| mat.row(r).iter().copied().collect()).collect(),
        worst_u: u.iter().copied().collect(),
        baseline_residual: baseline.residual,
    })
}
