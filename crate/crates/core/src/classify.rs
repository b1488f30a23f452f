//! Classification of the Randers equigeodesic vectors of a space.
//!
//! A vector `X ∈ m` is Randers equigeodesic iff `[X, m₀] ⊂ h` (a linear
//! condition cutting out `L`) and `[Λ(X), X]_m = 0` for every equivariant
//! symmetric `Λ` (quadratic). The classifier looks for the largest subspace
//! `L* ⊆ L` on which the polarized quadratic forms
//! `Bᵢ(X, Y) = [ΛᵢX, Y]_m + [ΛᵢY, X]_m` vanish, then double-checks the
//! answer against direct evaluation of the test.
//!
//! Subspaces here are expressed in the adapted m-coordinates of the space.

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::criteria::{ad_on_m, randers_equigeodesic_test, riemannian_equigeodesic_test, CriterionReport, TAU_CRIT};
use crate::error::{Error, Result};
use crate::kernel::{nullspace_basis, nullspace_basis_scaled, Subspace, RANK_TOL};
use crate::space::{vstack, HomogeneousSpace};

/// Random combinations of the answer's basis that must pass the test.
pub const MEMBER_COMBINATIONS: usize = 20;
/// Random vectors of `m` that must fail the test when the answer is empty.
pub const NONMEMBER_SAMPLES: usize = 50;
/// Projection residual accepted when comparing subspaces.
pub const SUBSPACE_TOL: f64 = 1e-9;
/// Seed used by [`classify_equigeodesic_set`].
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub seed: u64,
    /// Verdict threshold on normalized residuals.
    pub tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, tol: TAU_CRIT }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    Empty,
    LinearSubspace,
    Undetermined,
}

/// Which checks were run and how they came out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    /// `dim L`, the solution space of `[X, m₀]_m = 0`.
    pub constraint_dim: usize,
    /// Shrinking rounds performed inside `L`.
    pub shrink_rounds: usize,
    /// The polarized forms vanish on the final subspace.
    pub quadratic_vanishing: bool,
    /// Basis vectors and random combinations of the answer that passed.
    pub members_checked: usize,
    /// Vectors outside the answer that were confirmed to fail.
    pub nonmembers_checked: usize,
    /// Largest test residual among claimed members.
    pub max_member_residual: f64,
    /// Smallest test residual among confirmed non-members.
    pub min_nonmember_residual: Option<f64>,
}

/// A sampled vector together with its test outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleWitness {
    pub coords: Vec<f64>,
    pub residual: f64,
    pub member: bool,
}

/// The set of Randers equigeodesic vectors in `m`. For
/// [`SetKind::LinearSubspace`] it is `subspace \ {0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquigeodesicSet {
    pub kind: SetKind,
    pub subspace: Subspace,
    pub certification: Certification,
    pub witnesses: Vec<SampleWitness>,
}

impl EquigeodesicSet {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// `L = {X ∈ m : [X, v]_m = 0 for every m₀-basis vector v}`, in m-coordinates.
pub fn commuting_constraint_subspace(space: &HomogeneousSpace) -> Result<Subspace> {
    let k = space.dim_m0();
    if k == 0 {
        return Err(Error::TrivialFixedSet);
    }
    let d = space.dim_m();
    let blocks: Vec<DMatrix<f64>> =
        (0..k).map(|j| ad_on_m(space, &DVector::from_fn(d, |i, _| if i == j { 1.0 } else { 0.0 }))).collect();
    Ok(nullspace_basis(&vstack(&blocks), RANK_TOL))
}

/// Matrix of `Y ↦ Bᵢ(X, Y) = [ΛᵢX, Y]_m + [ΛᵢY, X]_m`.
fn polarized_map(space: &HomogeneousSpace, l: &DMatrix<f64>, x: &DVector<f64>) -> DMatrix<f64> {
    // [ΛX, Y] + [ΛY, X] = ad(ΛX) Y − ad(X) Λ Y
    ad_on_m(space, &(l * x)) - ad_on_m(space, x) * l
}

/// `true` iff every `Bᵢ` vanishes on all basis pairs of `l` (m-coordinates),
/// i.e. every element of `l` is a Riemannian equigeodesic vector.
pub fn certify_quadratic_vanishing(space: &HomogeneousSpace, l: &Subspace) -> bool {
    quadratic_defect(space, l) <= TAU_CRIT
}

/// Largest `‖Bᵢ(x, y)‖` over commutant elements and basis pairs of `l`.
pub fn quadratic_defect(space: &HomogeneousSpace, l: &Subspace) -> f64 {
    let basis = l.basis_vectors();
    let mut worst = 0.0f64;
    for lam in space.commutant() {
        for (a, x) in basis.iter().enumerate() {
            let map = polarized_map(space, lam, x);
            for y in &basis[a..] {
                worst = worst.max((&map * y).norm());
            }
        }
    }
    worst
}

/// Runs the Randers equigeodesic test on an m-coordinate vector.
fn test_m(space: &HomogeneousSpace, xm: &DVector<f64>) -> Result<CriterionReport> {
    let x = space.algebra().element(space.from_m(xm))?;
    randers_equigeodesic_test(space, &x)
}

fn riemannian_member(space: &HomogeneousSpace, xm: &DVector<f64>, tol: f64) -> Result<bool> {
    let x = space.algebra().element(space.from_m(xm))?;
    Ok(riemannian_equigeodesic_test(space, &x)?.residual <= tol)
}

fn random_in(s: &Subspace, rng: &mut ChaCha8Rng) -> DVector<f64> {
    let c = DVector::from_fn(s.dim(), |_, _| StandardNormal.sample(rng));
    s.basis() * c
}

/// `{x ∈ s : M x = 0 for every M}`.
fn restrict_nullspace(s: &Subspace, maps: &[DMatrix<f64>]) -> Subspace {
    let scale = maps.iter().map(|m| m.norm()).fold(0.0, f64::max);
    let blocks: Vec<DMatrix<f64>> = maps.iter().map(|m| m * s.basis()).collect();
    s.lift(&nullspace_basis_scaled(&vstack(&blocks), RANK_TOL, scale))
}

/// Candidate members of `s`: the m₀-part first, then its basis, then random vectors.
fn seed_candidates(space: &HomogeneousSpace, s: &Subspace, rng: &mut ChaCha8Rng) -> Vec<DVector<f64>> {
    let k = space.dim_m0();
    let d = space.dim_m();
    let mprime_rows = s.basis().rows(k, d - k).into_owned();
    let in_m0 = s.lift(&nullspace_basis(&mprime_rows, RANK_TOL));
    let mut out = in_m0.basis_vectors();
    out.extend(s.basis_vectors());
    out.extend((0..s.dim()).map(|_| random_in(s, rng)));
    out
}

/// Full classification with the default seed.
pub fn classify_equigeodesic_set(space: &HomogeneousSpace) -> Result<EquigeodesicSet> {
    classify_equigeodesic_set_with(space, ClassifyOptions::default())
}

pub fn classify_equigeodesic_set_with(space: &HomogeneousSpace, opts: ClassifyOptions) -> Result<EquigeodesicSet> {
    if !(opts.tol.is_finite() && opts.tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance {} must be positive", opts.tol)));
    }
    let tol = opts.tol;
    let l = commuting_constraint_subspace(space)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut lstar = l.clone();
    let mut rounds = 0;
    let mut stuck = false;

    while rounds < l.dim() && !lstar.is_zero() && quadratic_defect(space, &lstar) > tol {
        rounds += 1;
        let mut members = Vec::new();
        for c in seed_candidates(space, &lstar, &mut rng) {
            if c.norm() > 0.0 && riemannian_member(space, &c, tol)? {
                members.push(c);
            }
        }
        if members.is_empty() {
            // no equigeodesic direction found anywhere in L*
            lstar = Subspace::zero(lstar.ambient_dim());
            break;
        }
        let before = lstar.dim();
        for x0 in &members {
            let maps: Vec<DMatrix<f64>> = space.commutant().iter().map(|lam| polarized_map(space, lam, x0)).collect();
            let next = restrict_nullspace(&lstar, &maps);
            if next.dim() < before {
                lstar = next;
                break;
            }
        }
        if lstar.dim() == before {
            stuck = true;
            break;
        }
    }

    let quadratic_vanishing = quadratic_defect(space, &lstar) <= tol;
    let mut cert = Certification {
        constraint_dim: l.dim(),
        shrink_rounds: rounds,
        quadratic_vanishing,
        members_checked: 0,
        nonmembers_checked: 0,
        max_member_residual: 0.0,
        min_nonmember_residual: None,
    };
    let mut witnesses = Vec::new();
    let mut consistent = quadratic_vanishing && !stuck;

    let mut record = |x: &DVector<f64>, expect_member: bool, cert: &mut Certification| -> Result<bool> {
        let r = test_m(space, x)?;
        let member = r.residual <= tol;
        if expect_member {
            cert.members_checked += 1;
            cert.max_member_residual = cert.max_member_residual.max(r.residual);
        } else {
            cert.nonmembers_checked += 1;
            cert.min_nonmember_residual = Some(cert.min_nonmember_residual.map_or(r.residual, |m| m.min(r.residual)));
        }
        if member != expect_member {
            witnesses.push(SampleWitness { coords: x.iter().copied().collect(), residual: r.residual, member });
        }
        Ok(member == expect_member)
    };

    // members: basis and random combinations of L*
    for b in lstar.basis_vectors() {
        consistent &= record(&b, true, &mut cert)?;
    }
    if !lstar.is_zero() {
        for _ in 0..MEMBER_COMBINATIONS {
            let x = random_in(&lstar, &mut rng);
            consistent &= record(&x, true, &mut cert)?;
        }
    }

    // non-members: m-basis vectors and random vectors outside L*
    let full = Subspace::full(space.dim_m());
    let mut probes = full.basis_vectors();
    probes.extend((0..NONMEMBER_SAMPLES).map(|_| random_in(&full, &mut rng)));
    if !lstar.is_zero() {
        probes.extend((0..MEMBER_COMBINATIONS).map(|_| random_in(&l, &mut rng)));
    }
    for x in probes {
        let rel = lstar.residual(&x) / x.norm();
        if rel <= SUBSPACE_TOL {
            continue;
        }
        consistent &= record(&x, false, &mut cert)?;
    }

    let kind = match (consistent, lstar.is_zero()) {
        (false, _) => SetKind::Undetermined,
        (true, true) => SetKind::Empty,
        (true, false) => SetKind::LinearSubspace,
    };
    Ok(EquigeodesicSet { kind, subspace: lstar, certification: cert, witnesses })
}

/// `{X ∈ within : [X, s] = 0 ∀ s ∈ S}`, all in algebra coordinates.
pub fn centralizer_in(space: &HomogeneousSpace, s: &Subspace, within: &Subspace) -> Subspace {
    space.centralizer_in(s, within)
}

/// The centre `c(m₀)` of `m₀`, in m-coordinates.
pub fn center_of_fixed_set(space: &HomogeneousSpace) -> Subspace {
    space.subspace_in_m(&space.centralizer_in(space.m0(), space.m0()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_sphere_space, Family, SpaceDescriptor};

    fn m0_in_m(space: &HomogeneousSpace) -> Subspace {
        space.subspace_in_m(space.m0())
    }

    #[test]
    fn su3_su2_is_fixed_set() {
        let s = build_sphere_space(Family::SuSphere, 2).unwrap();
        let set = classify_equigeodesic_set(&s).unwrap();
        assert_eq!(set.kind, SetKind::LinearSubspace);
        assert_eq!(set.dim(), 1);
        assert!(set.subspace.distance(&m0_in_m(&s)) < SUBSPACE_TOL);
    }

    #[test]
    fn sp2_sp1_is_empty() {
        let s = build_sphere_space(Family::SpSphere, 1).unwrap();
        assert_eq!(commuting_constraint_subspace(&s).unwrap().dim(), 0);
        let set = classify_equigeodesic_set(&s).unwrap();
        assert_eq!(set.kind, SetKind::Empty);
        assert!(set.certification.nonmembers_checked >= 7 + NONMEMBER_SAMPLES);
    }

    #[test]
    fn sp_u1_constraint_is_fixed_set() {
        let s = build_sphere_space(Family::SpU1Sphere, 1).unwrap();
        let l = commuting_constraint_subspace(&s).unwrap();
        assert!(l.distance(&m0_in_m(&s)) < SUBSPACE_TOL);
        assert!(certify_quadratic_vanishing(&s, &l));
    }

    #[test]
    fn quadratic_certification() {
        let s = build_sphere_space(Family::SpSphere, 1).unwrap();
        assert!(certify_quadratic_vanishing(&s, &Subspace::zero(s.dim_m())));
        assert!(!certify_quadratic_vanishing(&s, &m0_in_m(&s)));
    }

    #[test]
    fn sp2_su2_is_line() {
        let s = SpaceDescriptor::new(Family::TripleSpSu, 2).build().unwrap();
        let set = classify_equigeodesic_set(&s).unwrap();
        assert_eq!(set.kind, SetKind::LinearSubspace);
        assert!(set.subspace.distance(&center_of_fixed_set(&s)) < SUBSPACE_TOL);
    }

    #[test]
    fn centralizer_examples() {
        let s = build_sphere_space(Family::SpSphere, 1).unwrap();
        assert!(centralizer_in(&s, s.m0(), s.m0()).is_zero());
        let z = Subspace::zero(s.algebra().dim());
        assert_eq!(centralizer_in(&s, &z, s.m()).dim(), 7);
        let u = build_sphere_space(Family::USphere, 2).unwrap();
        assert_eq!(centralizer_in(&u, u.m0(), u.m0()).dim(), 1);
    }

    #[test]
    fn trivial_fixed_set_rejected() {
        let s = build_sphere_space(Family::SoSphere, 3).unwrap();
        assert_eq!(classify_equigeodesic_set(&s).unwrap_err(), Error::TrivialFixedSet);
    }

    #[test]
    fn deterministic() {
        let s = build_sphere_space(Family::USphere, 1).unwrap();
        assert_eq!(classify_equigeodesic_set(&s).unwrap(), classify_equigeodesic_set(&s).unwrap());
    }
}
