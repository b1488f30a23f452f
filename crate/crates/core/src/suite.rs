//! The verification suite behind `equigeo verify`.
//!
//! Each check reproduces one classification statement or structural
//! identity over a fixed parameter range. Checks are independent and run in
//! parallel; results come back in a fixed order.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{
    build_sphere_space, lemma2_nullities, sp_u1_blocks, sp_u1_relations, triple_relations, Family, Prediction,
    SpaceDescriptor,
};
use crate::classify::{center_of_fixed_set, classify_equigeodesic_set_with, ClassifyOptions, SetKind, SUBSPACE_TOL};
use crate::criteria::{
    alpha_beta_geodesic_residual, randers_equigeodesic_test, randers_geodesic_residual, riemannian_geodesic_residual,
    sample_u, sampled_metric_oracle, MinkowskiNormSpec, PhiPreset, TAU_CRIT,
};
use crate::error::Result;
use crate::kernel::{orthogonal_projection, real_embedding, Field, FieldMatrix, Quaternion, Subspace, RANK_TOL};
use crate::lie::{build_lie_algebra, FactorKind, FactorSpec};
use crate::space::HomogeneousSpace;

/// Oracle residual above which a failing vector counts as refuted.
pub const ORACLE_FAIL_THRESHOLD: f64 = 1e-7;
/// Random vectors per space in the oracle equivalence check.
pub const ORACLE_RANDOM_VECTORS: usize = 20;
/// Random tuples in the reduction check.
pub const REDUCTION_CASES: usize = 100;
/// Agreement required between the reduced residual formulas.
pub const REDUCTION_TOL: f64 = 1e-12;
/// Random cases per algebraic invariant.
pub const INVARIANT_CASES: usize = 200;
/// Residual allowed for algebraic invariants and structural identities.
pub const IDENTITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self { seed: 0, samples: 100, tol: TAU_CRIT }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: String,
    pub pass: bool,
    pub cases: usize,
    pub max_residual: f64,
    pub detail: String,
    #[serde(skip)]
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

impl SuiteReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} {:<32} cases={:<5} max_residual={:.3e} ({:.2}s) {}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.id,
                c.name,
                c.cases,
                c.max_residual,
                c.elapsed_secs,
                c.detail
            ));
        }
        out
    }
}

/// Spaces covered by the fixed-set/empty classification check.
pub fn sphere_cases() -> Vec<SpaceDescriptor> {
    let mut v = Vec::new();
    for n in [2, 3] {
        v.push(SpaceDescriptor::new(Family::SuSphere, n));
        v.push(SpaceDescriptor::new(Family::USphere, n));
    }
    for n in [1, 2] {
        v.push(SpaceDescriptor::new(Family::SpU1Sphere, n));
        v.push(SpaceDescriptor::new(Family::SpSphere, n));
    }
    v
}

/// Hermitian triple instances covered by the centre-of-m₀ check.
pub fn triple_cases() -> Vec<SpaceDescriptor> {
    let mut v: Vec<SpaceDescriptor> =
        [(2, 1), (2, 2), (3, 2)].iter().map(|&(a, b)| SpaceDescriptor::pair(Family::TripleSuSu, a, b)).collect();
    for n in [2, 3] {
        v.push(SpaceDescriptor::new(Family::TripleSpSu, n));
    }
    for n in [3, 4] {
        v.push(SpaceDescriptor::new(Family::TripleSoSo, n));
    }
    for n in [3, 4] {
        v.push(SpaceDescriptor::new(Family::TripleSoSu, n));
    }
    v
}

/// Golden commutant dimensions `(family, n, dim)`.
pub fn commutant_cases() -> Vec<(Family, usize, usize)> {
    let mut v = Vec::new();
    for n in 2..=5 {
        v.push((Family::SoSphere, n, 1));
    }
    for n in 2..=4 {
        v.push((Family::SuSphere, n, 2));
    }
    for n in 1..=3 {
        v.push((Family::SpSphere, n, 7));
        v.push((Family::SpU1Sphere, n, 3));
    }
    v
}

fn build_all(ds: &[SpaceDescriptor]) -> Result<Vec<(SpaceDescriptor, HomogeneousSpace)>> {
    ds.par_iter().map(|d| Ok((*d, d.build()?))).collect()
}

fn timed(id: u8, name: &str, f: impl FnOnce() -> Result<(bool, usize, f64, String)>) -> CheckResult {
    let start = Instant::now();
    let (pass, cases, max_residual, detail) = match f() {
        Ok(v) => v,
        Err(e) => (false, 0, f64::NAN, format!("error: {e}")),
    };
    CheckResult {
        id,
        name: name.into(),
        pass,
        cases,
        max_residual,
        detail,
        elapsed_secs: start.elapsed().as_secs_f64(),
    }
}

/// Compares the classifier output with the predicted answer; returns
/// `(ok, residual, description)`.
fn classification_matches(
    d: &SpaceDescriptor,
    space: &HomogeneousSpace,
    opts: &SuiteOptions,
) -> Result<(bool, f64, String)> {
    let set = classify_equigeodesic_set_with(space, ClassifyOptions { seed: opts.seed, tol: opts.tol })?;
    let label = space.label();
    match d.prediction() {
        Some(Prediction::Empty) => Ok((set.kind == SetKind::Empty, 0.0, format!("{label}: {:?}", set.kind))),
        Some(p @ (Prediction::FixedSet | Prediction::CenterOfFixedSet)) => {
            let m0 = space.subspace_in_m(space.m0());
            let mut dist = set.subspace.distance(&m0);
            if p == Prediction::CenterOfFixedSet {
                let c = center_of_fixed_set(space);
                dist = dist.max(set.subspace.distance(&c)).max(c.distance(&m0));
            }
            let ok = set.kind == SetKind::LinearSubspace && set.dim() == 1 && dist <= SUBSPACE_TOL;
            Ok((ok, dist, format!("{label}: {:?} dim {}", set.kind, set.dim())))
        }
        other => Ok((false, f64::INFINITY, format!("{label}: unexpected prediction {other:?}"))),
    }
}

fn classification_check(ds: &[SpaceDescriptor], opts: &SuiteOptions) -> Result<(bool, usize, f64, String)> {
    let spaces = build_all(ds)?;
    let results: Vec<(bool, f64, String)> =
        spaces.par_iter().map(|(d, s)| classification_matches(d, s, opts)).collect::<Result<_>>()?;
    let pass = results.iter().all(|r| r.0);
    let worst = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let failures: Vec<&str> = results.iter().filter(|r| !r.0).map(|r| r.2.as_str()).collect();
    let detail = if failures.is_empty() { format!("{} spaces", results.len()) } else { failures.join("; ") };
    Ok((pass, results.len(), worst, detail))
}

/// Spheres with fixed set `m₀` or no equigeodesics, as predicted.
pub fn check_sphere_classification(opts: &SuiteOptions) -> CheckResult {
    timed(1, "sphere classification", || classification_check(&sphere_cases(), opts))
}

/// Hermitian triples classify to `c(m₀) = m₀`, a line.
pub fn check_triple_classification(opts: &SuiteOptions) -> CheckResult {
    timed(2, "triple classification", || classification_check(&triple_cases(), opts))
}

#[derive(Debug, Default, Clone, Copy)]
struct OracleTally {
    cases: usize,
    counterexamples: usize,
    max_pass_residual: f64,
}

fn oracle_space(space: &HomogeneousSpace, opts: &SuiteOptions, salt: u64) -> Result<OracleTally> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let d = space.dim_m();
    let mut vectors: Vec<DVector<f64>> =
        (0..d).map(|i| DVector::from_fn(d, |j, _| if i == j { 1.0 } else { 0.0 })).collect();
    vectors.extend((0..ORACLE_RANDOM_VECTORS).map(|_| DVector::from_fn(d, |_, _| StandardNormal.sample(&mut rng))));
    let mut t = OracleTally::default();
    for (k, v) in vectors.iter().enumerate() {
        let x = space.algebra().element(space.from_m(v))?;
        let passes = randers_equigeodesic_test(space, &x)?.residual <= opts.tol;
        let oracle = sampled_metric_oracle(space, &x, opts.samples, opts.seed.wrapping_add(k as u64))?;
        t.cases += 1;
        if passes {
            t.max_pass_residual = t.max_pass_residual.max(oracle.max_residual);
            if oracle.max_residual > opts.tol {
                t.counterexamples += 1;
            }
        } else if oracle.max_residual <= ORACLE_FAIL_THRESHOLD {
            t.counterexamples += 1;
        }
    }
    Ok(t)
}

/// The algebraic test agrees with direct evaluation on sampled Randers metrics.
pub fn check_oracle_equivalence(opts: &SuiteOptions) -> CheckResult {
    timed(3, "oracle equivalence", || {
        let mut ds = sphere_cases();
        ds.extend(triple_cases());
        let spaces = build_all(&ds)?;
        let tallies: Vec<OracleTally> = spaces
            .par_iter()
            .enumerate()
            .map(|(i, (_, s))| oracle_space(s, opts, i as u64 + 1))
            .collect::<Result<_>>()?;
        let cases = tallies.iter().map(|t| t.cases).sum();
        let bad: usize = tallies.iter().map(|t| t.counterexamples).sum();
        let worst = tallies.iter().map(|t| t.max_pass_residual).fold(0.0, f64::max);
        Ok((bad == 0, cases, worst, format!("{} spaces, {bad} counterexamples", spaces.len())))
    })
}

/// The general (α, β) residual with `φ(s) = 1 + s` equals the Randers one,
/// and with `u = 0` the Riemannian one.
pub fn check_reduction(opts: &SuiteOptions) -> CheckResult {
    timed(4, "alpha-beta reduction", || {
        let ds = [
            SpaceDescriptor::new(Family::SuSphere, 2),
            SpaceDescriptor::new(Family::SpU1Sphere, 1),
            SpaceDescriptor::new(Family::SpSphere, 1),
            SpaceDescriptor::new(Family::TripleSoSo, 3),
            SpaceDescriptor::new(Family::TripleSpSu, 2),
        ];
        let spaces = build_all(&ds)?;
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut worst = 0.0f64;
        for i in 0..REDUCTION_CASES {
            let (_, space) = &spaces[i % spaces.len()];
            let metric = space.sample_invariant_metric_with(&mut rng);
            let u = sample_u(space, &metric, &mut rng);
            let n = space.algebra().dim();
            let x = space.algebra().element(DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng)))?;
            let randers = randers_geodesic_residual(space, &metric, &u, &x)?.residual;
            let spec = MinkowskiNormSpec::new(space, metric.clone(), u, PhiPreset::Randers)?;
            let ab = alpha_beta_geodesic_residual(space, &spec, &x)?.residual;
            let zero = DVector::zeros(space.dim_m());
            let riem = riemannian_geodesic_residual(space, &metric, &x)?.residual;
            let ab0 = alpha_beta_geodesic_residual(
                space,
                &MinkowskiNormSpec::new(space, metric, zero, PhiPreset::Randers)?,
                &x,
            )?
            .residual;
            worst = worst.max((randers - ab).abs()).max((riem - ab0).abs());
        }
        Ok((worst <= REDUCTION_TOL, REDUCTION_CASES, worst, format!("{} spaces", spaces.len())))
    })
}

/// Bracket relations of the triples and of `Sp(n+1)U(1)/Sp(n)U(1)`, and the
/// trivial centralizers in `m′`.
pub fn check_structure(opts: &SuiteOptions) -> CheckResult {
    let _ = opts;
    timed(5, "structural identities", || {
        let triples = build_all(&triple_cases())?;
        let mut worst = 0.0f64;
        let mut failures = Vec::new();
        for (_, s) in &triples {
            let r = triple_relations(s).max();
            worst = worst.max(r);
            let nullities = lemma2_nullities(s);
            if r > IDENTITY_TOL || nullities != (0, 0) {
                failures.push(format!("{}: relations {r:.2e}, nullities {nullities:?}", s.label()));
            }
        }
        let mut cases = triples.len();
        for n in [1, 2] {
            let s = build_sphere_space(Family::SpU1Sphere, n)?;
            let rel = sp_u1_relations(&s, &sp_u1_blocks(&s, n)?);
            let r = rel.m0_m0.max(rel.m0_m1).max(rel.m0_m2);
            worst = worst.max(r);
            cases += 1;
            if r > IDENTITY_TOL || rel.injectivity_nullity != 0 {
                failures.push(format!("{}: {rel:?}", s.label()));
            }
        }
        let detail = if failures.is_empty() { format!("{cases} spaces") } else { failures.join("; ") };
        Ok((failures.is_empty(), cases, worst, detail))
    })
}

/// Dimensions of the equivariant symmetric operator spaces.
pub fn check_commutant_dims(opts: &SuiteOptions) -> CheckResult {
    let _ = opts;
    timed(6, "commutant dimensions", || {
        let cases = commutant_cases();
        let computed: Vec<(usize, f64)> = cases
            .par_iter()
            .map(|&(f, n, _)| {
                let s = build_sphere_space(f, n)?;
                Ok((s.commutant().len(), s.identity_reconstruction_residual()))
            })
            .collect::<Result<_>>()?;
        let mut failures = Vec::new();
        for ((f, n, want), (got, _)) in cases.iter().zip(&computed) {
            if want != got {
                failures.push(format!("{f} n={n}: {got} != {want}"));
            }
        }
        let worst = computed.iter().map(|c| c.1).fold(0.0, f64::max);
        let pass = failures.is_empty() && worst <= IDENTITY_TOL;
        let detail = if failures.is_empty() { format!("{} spaces", cases.len()) } else { failures.join("; ") };
        Ok((pass, cases.len(), worst, detail))
    })
}

fn random_matrix(field: Field, n: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
    let mut g = || -> f64 { StandardNormal.sample(rng) };
    match field {
        Field::Real => FieldMatrix::Real(DMatrix::from_fn(n, n, |_, _| g())),
        Field::Complex => FieldMatrix::Complex(DMatrix::from_fn(n, n, |_, _| Complex64::new(g(), g()))),
        Field::Quaternion => {
            FieldMatrix::Quaternion(DMatrix::from_fn(n, n, |_, _| Quaternion::new(g(), g(), g(), g())))
        }
    }
}

/// Worst residuals of `(jacobi, ad_invariance, embedding, projection)`.
pub fn invariant_residuals(seed: u64, cases: usize) -> Result<[f64; 4]> {
    let algebras = [
        vec![FactorKind::So(4)],
        vec![FactorKind::Su(3)],
        vec![FactorKind::U(2)],
        vec![FactorKind::Sp(2)],
        vec![FactorKind::Sp(2), FactorKind::Abelian(1)],
        vec![FactorKind::So(3), FactorKind::Sp(1)],
    ]
    .iter()
    .map(|k| build_lie_algebra(&k.iter().map(|k| FactorSpec::new(*k)).collect::<Vec<_>>()))
    .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [0.0f64; 4];
    for i in 0..cases {
        let g = &algebras[i % algebras.len()];
        let n = g.dim();
        let mut v = || DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
        let (x, y, z) = (v(), v(), v());
        let b = |a: &DVector<f64>, c: &DVector<f64>| g.bracket_coords(a, c);
        let jac = b(&x, &b(&y, &z)) + b(&y, &b(&z, &x)) + b(&z, &b(&x, &y));
        worst[0] = worst[0].max(jac.norm());
        let ip = |a: &DVector<f64>, c: &DVector<f64>| a.dot(&(g.gram() * c));
        worst[1] = worst[1].max((ip(&b(&x, &y), &z) + ip(&y, &b(&x, &z))).abs());

        let field = [Field::Real, Field::Complex, Field::Quaternion][i % 3];
        let size = 1 + rng.random_range(0..4);
        let (p, q) = (random_matrix(field, size, &mut rng), random_matrix(field, size, &mut rng));
        let lhs = real_embedding(&p.matmul(&q)?, field)?;
        let rhs = real_embedding(&p, field)? * real_embedding(&q, field)?;
        worst[2] = worst[2].max((lhs - rhs).amax());

        let dim = 2 + rng.random_range(0..8);
        let k = rng.random_range(0..=dim);
        let gens: Vec<DVector<f64>> =
            (0..k).map(|_| DVector::from_fn(dim, |_, _| StandardNormal.sample(&mut rng))).collect();
        let s = Subspace::span(dim, &gens, RANK_TOL)?;
        let w = DVector::from_fn(dim, |_, _| StandardNormal.sample(&mut rng));
        let once = orthogonal_projection(&w, &s)?;
        let twice = orthogonal_projection(&once, &s)?;
        worst[3] = worst[3].max((once - twice).norm());
    }
    Ok(worst)
}

pub fn check_invariants(opts: &SuiteOptions) -> CheckResult {
    timed(7, "algebraic invariants", || {
        let w = invariant_residuals(opts.seed, INVARIANT_CASES)?;
        let worst = w.iter().copied().fold(0.0, f64::max);
        Ok((
            worst <= IDENTITY_TOL,
            4 * INVARIANT_CASES,
            worst,
            format!("jacobi {:.1e}, ad-inv {:.1e}, embed {:.1e}, proj {:.1e}", w[0], w[1], w[2], w[3]),
        ))
    })
}

type Check = fn(&SuiteOptions) -> CheckResult;

pub const CHECKS: [Check; 7] = [
    check_sphere_classification,
    check_triple_classification,
    check_oracle_equivalence,
    check_reduction,
    check_structure,
    check_commutant_dims,
    check_invariants,
];

pub fn run_suite(opts: &SuiteOptions) -> SuiteReport {
    let checks: Vec<CheckResult> = CHECKS.par_iter().map(|c| c(opts)).collect();
    let all_pass = checks.iter().all(|c| c.pass);
    SuiteReport { seed: opts.seed, samples: opts.samples, checks, all_pass }
}
