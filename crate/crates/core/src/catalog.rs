//! Concrete homogeneous spaces with explicit subgroup embeddings.
//!
//! Sphere families use top-left block embeddings `H ⊂ G`. The Hermitian
//! triples `H ⊊ K ⊊ G` carry the line `m₀ = k ⊖ h` generated by the
//! u(1)-centre of `K`.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{real_embedding, Field, FieldMatrix, Quaternion, Subspace, RANK_TOL};
use crate::lie::{build_lie_algebra, factor_basis, AlgebraElement, FactorKind, FactorSpec, LieAlgebra};
use crate::space::{make_reductive_decomposition, HomogeneousSpace, STRUCT_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "so-sphere")]
    SoSphere,
    #[serde(rename = "su-sphere")]
    SuSphere,
    #[serde(rename = "u-sphere")]
    USphere,
    #[serde(rename = "sp-sphere")]
    SpSphere,
    #[serde(rename = "sp-sp1-sphere")]
    SpSp1Sphere,
    #[serde(rename = "sp-u1-sphere")]
    SpU1Sphere,
    #[serde(rename = "thm2-su-su")]
    TripleSuSu,
    #[serde(rename = "thm2-sp-su")]
    TripleSpSu,
    #[serde(rename = "thm2-so-so")]
    TripleSoSo,
    #[serde(rename = "thm2-so-su")]
    TripleSoSu,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::SoSphere,
        Family::SuSphere,
        Family::USphere,
        Family::SpSphere,
        Family::SpSp1Sphere,
        Family::SpU1Sphere,
        Family::TripleSuSu,
        Family::TripleSpSu,
        Family::TripleSoSo,
        Family::TripleSoSu,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::SoSphere => "so-sphere",
            Family::SuSphere => "su-sphere",
            Family::USphere => "u-sphere",
            Family::SpSphere => "sp-sphere",
            Family::SpSp1Sphere => "sp-sp1-sphere",
            Family::SpU1Sphere => "sp-u1-sphere",
            Family::TripleSuSu => "thm2-su-su",
            Family::TripleSpSu => "thm2-sp-su",
            Family::TripleSoSo => "thm2-so-so",
            Family::TripleSoSu => "thm2-so-su",
        }
    }

    pub fn valid_names() -> String {
        Family::ALL.iter().map(|f| f.name()).collect::<Vec<_>>().join(", ")
    }

    pub fn is_triple(self) -> bool {
        matches!(self, Family::TripleSuSu | Family::TripleSpSu | Family::TripleSoSo | Family::TripleSoSu)
    }

    /// Whether the family is parameterized by the pair `(n1, n2)`.
    pub fn takes_pair(self) -> bool {
        self == Family::TripleSuSu
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown space '{s}'; valid names: {}", Family::valid_names())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n2: Option<usize>,
}

/// What the classification theorems predict for a catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    /// `m₀ = 0`: only Riemannian invariant metrics, nothing to classify.
    NoFixedSet,
    /// The equigeodesic set is `m₀ \ {0}`.
    FixedSet,
    /// The equigeodesic set is `c(m₀) \ {0}` (centre of `m₀`).
    CenterOfFixedSet,
    /// No Randers equigeodesic vectors.
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub family: Family,
    pub params: Params,
}

impl SpaceDescriptor {
    pub fn new(family: Family, n: usize) -> Self {
        Self { family, params: Params { n: Some(n), ..Params::default() } }
    }

    pub fn pair(family: Family, n1: usize, n2: usize) -> Self {
        Self { family, params: Params { n1: Some(n1), n2: Some(n2), ..Params::default() } }
    }

    /// Builds a descriptor from loose CLI-style parameters and checks ranges.
    pub fn from_parts(family: Family, n: Option<usize>, n1: Option<usize>, n2: Option<usize>) -> Result<Self> {
        let d = if family.takes_pair() {
            match (n1, n2) {
                (Some(a), Some(b)) => Self::pair(family, a, b),
                _ => return Err(Error::ParameterOutOfRange(format!("{family} needs --n1 and --n2"))),
            }
        } else {
            match n {
                Some(n) => Self::new(family, n),
                None => return Err(Error::ParameterOutOfRange(format!("{family} needs --n"))),
            }
        };
        d.validate()?;
        Ok(d)
    }

    fn n(&self) -> Result<usize> {
        self.params.n.ok_or_else(|| Error::ParameterOutOfRange(format!("{} needs n", self.family)))
    }

    fn pair_params(&self) -> Result<(usize, usize)> {
        match (self.params.n1, self.params.n2) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::ParameterOutOfRange(format!("{} needs n1 and n2", self.family))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let out_of_range = |what: String| Err(Error::ParameterOutOfRange(what));
        match self.family {
            Family::TripleSuSu => {
                let (a, b) = self.pair_params()?;
                if a == 0 || b == 0 || (a, b) == (1, 1) {
                    return out_of_range(format!(
                        "thm2-su-su needs n1, n2 >= 1 and (n1, n2) != (1, 1), got ({a}, {b})"
                    ));
                }
                Ok(())
            }
            family => {
                let n = self.n()?;
                let min = match family {
                    Family::SoSphere => 2,
                    Family::TripleSpSu => 2,
                    Family::TripleSoSo | Family::TripleSoSu => 3,
                    _ => 1,
                };
                if n < min {
                    return out_of_range(format!("{family} needs n >= {min}, got {n}"));
                }
                Ok(())
            }
        }
    }

    pub fn label(&self) -> String {
        let p = &self.params;
        match self.family {
            Family::TripleSuSu => format!(
                "SU({})/SU({})SU({})",
                p.n1.unwrap_or(0) + p.n2.unwrap_or(0),
                p.n1.unwrap_or(0),
                p.n2.unwrap_or(0)
            ),
            family => {
                let n = p.n.unwrap_or(0);
                match family {
                    Family::SoSphere => format!("SO({})/SO({n})", n + 1),
                    Family::SuSphere => format!("SU({})/SU({n})", n + 1),
                    Family::USphere => format!("U({})/U({n})", n + 1),
                    Family::SpSphere => format!("Sp({})/Sp({n})", n + 1),
                    Family::SpSp1Sphere => format!("Sp({})Sp(1)/Sp({n})Sp(1)", n + 1),
                    Family::SpU1Sphere => format!("Sp({})U(1)/Sp({n})U(1)", n + 1),
                    Family::TripleSpSu => format!("Sp({n})/SU({n})"),
                    Family::TripleSoSo => format!("SO({})/SO({n})", n + 2),
                    Family::TripleSoSu => format!("SO({})/SU({n})", 2 * n),
                    Family::TripleSuSu => unreachable!(),
                }
            }
        }
    }

    /// Predicted classification, or `None` where the theorems do not apply
    /// (`SU(2)/SU(1)` has trivial isotropy).
    pub fn prediction(&self) -> Option<Prediction> {
        match self.family {
            Family::SoSphere | Family::SpSp1Sphere => Some(Prediction::NoFixedSet),
            Family::SuSphere if self.params.n == Some(1) => None,
            Family::SuSphere | Family::USphere | Family::SpU1Sphere => Some(Prediction::FixedSet),
            Family::SpSphere => Some(Prediction::Empty),
            _ => Some(Prediction::CenterOfFixedSet),
        }
    }

    pub fn build(&self) -> Result<HomogeneousSpace> {
        self.validate()?;
        if self.family.is_triple() {
            Ok(build_symmetric_triple(self)?.space)
        } else {
            build_sphere_space(self.family, self.n()?)
        }
    }
}

fn field_zeros(field: Field, n: usize) -> FieldMatrix {
    FieldMatrix::zeros(field, n, n)
}

/// Places `block` into an `n×n` zero matrix with top-left corner at `offset`.
fn pad(block: &FieldMatrix, n: usize, offset: usize) -> FieldMatrix {
    let (k, _) = block.shape();
    match block {
        FieldMatrix::Real(b) => {
            let mut m = DMatrix::zeros(n, n);
            m.view_mut((offset, offset), (k, k)).copy_from(b);
            FieldMatrix::Real(m)
        }
        FieldMatrix::Complex(b) => {
            let mut m = DMatrix::from_element(n, n, num_complex::Complex64::new(0.0, 0.0));
            m.view_mut((offset, offset), (k, k)).copy_from(b);
            FieldMatrix::Complex(m)
        }
        FieldMatrix::Quaternion(b) => {
            let mut m = DMatrix::from_element(n, n, Quaternion::ZERO);
            m.view_mut((offset, offset), (k, k)).copy_from(b);
            FieldMatrix::Quaternion(m)
        }
    }
}

/// Elements of `g` given by the classical basis of `kind` placed as a block.
fn block_generators(
    g: &LieAlgebra,
    factor: usize,
    kind: FactorKind,
    n: usize,
    offset: usize,
) -> Result<Vec<AlgebraElement>> {
    if matches!(kind, FactorKind::Su(1) | FactorKind::So(1)) {
        return Ok(Vec::new());
    }
    factor_basis(kind).iter().map(|b| g.element_from_fields(&[(factor, pad(b, n, offset))], &[])).collect()
}

fn diag_entry(field: Field, n: usize, idx: usize, q: Quaternion) -> FieldMatrix {
    let mut m = field_zeros(field, n);
    m.set(idx, idx, q);
    m
}

fn algebra(kinds: &[FactorKind]) -> Result<LieAlgebra> {
    build_lie_algebra(&kinds.iter().map(|k| FactorSpec::new(*k)).collect::<Vec<_>>())
}

/// Table of homogeneous spheres `G/H` with `H` embedded as a top-left block.
pub fn build_sphere_space(family: Family, n: usize) -> Result<HomogeneousSpace> {
    let d = SpaceDescriptor::new(family, n);
    if family.is_triple() {
        return Err(Error::InvalidInput(format!("{family} is not a sphere family")));
    }
    d.validate()?;
    let label = d.label();
    match family {
        Family::SoSphere => {
            let g = algebra(&[FactorKind::So(n + 1)])?;
            let h = block_generators(&g, 0, FactorKind::So(n), n + 1, 0)?;
            make_reductive_decomposition(g, &h, label)
        }
        Family::SuSphere => {
            let g = algebra(&[FactorKind::Su(n + 1)])?;
            let h = block_generators(&g, 0, FactorKind::Su(n), n + 1, 0)?;
            make_reductive_decomposition(g, &h, label)
        }
        Family::USphere => {
            let g = algebra(&[FactorKind::U(n + 1)])?;
            let h = block_generators(&g, 0, FactorKind::U(n), n + 1, 0)?;
            make_reductive_decomposition(g, &h, label)
        }
        Family::SpSphere => {
            let g = algebra(&[FactorKind::Sp(n + 1)])?;
            let h = block_generators(&g, 0, FactorKind::Sp(n), n + 1, 0)?;
            make_reductive_decomposition(g, &h, label)
        }
        Family::SpSp1Sphere => {
            let g = algebra(&[FactorKind::Sp(n + 1), FactorKind::Sp(1)])?;
            let mut h = block_generators(&g, 0, FactorKind::Sp(n), n + 1, 0)?;
            for q in [Quaternion::I, Quaternion::J, Quaternion::K] {
                let inner = diag_entry(Field::Quaternion, n + 1, n, q);
                let outer = diag_entry(Field::Quaternion, 1, 0, q);
                h.push(g.element_from_fields(&[(0, inner), (1, outer)], &[])?);
            }
            make_reductive_decomposition(g, &h, label)
        }
        Family::SpU1Sphere => {
            let g = algebra(&[FactorKind::Sp(n + 1), FactorKind::Abelian(1)])?;
            let mut h = block_generators(&g, 0, FactorKind::Sp(n), n + 1, 0)?;
            // (diag(0, i), 1)
            h.push(g.element_from_fields(&[(0, diag_entry(Field::Quaternion, n + 1, n, Quaternion::I))], &[1.0])?);
            make_reductive_decomposition(g, &h, label)
        }
        _ => unreachable!(),
    }
}

/// `G/H` together with the intermediate `K = H·U(1)` and the model of `G/K`.
#[derive(Debug, Clone)]
pub struct SymmetricTriple {
    pub space: HomogeneousSpace,
    /// Model of `G/K`.
    pub quotient: HomogeneousSpace,
    /// `k ⊖ h`, in algebra coordinates.
    pub k_over_h: Subspace,
}

/// Residuals of the five bracket inclusions of a triple
/// `[h, m′] ⊂ m′`, `[m₀, m′] ⊂ m′`, `[h, m₀] = 0`, `[h, h] ⊂ h`, `[m₀, m₀] ⊂ m₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TripleRelations {
    pub h_mprime: f64,
    pub m0_mprime: f64,
    pub h_m0: f64,
    pub h_h: f64,
    pub m0_m0: f64,
}

impl TripleRelations {
    pub fn max(&self) -> f64 {
        [self.h_mprime, self.m0_mprime, self.h_m0, self.h_h, self.m0_m0].into_iter().fold(0.0, f64::max)
    }
}

pub fn triple_relations(space: &HomogeneousSpace) -> TripleRelations {
    let n = space.algebra().dim();
    let zero = Subspace::zero(n);
    TripleRelations {
        h_mprime: space.bracket_inclusion_residual(space.h(), space.mprime(), space.mprime()),
        m0_mprime: space.bracket_inclusion_residual(space.m0(), space.mprime(), space.mprime()),
        h_m0: space.bracket_inclusion_residual(space.h(), space.m0(), &zero),
        h_h: space.bracket_inclusion_residual(space.h(), space.h(), space.h()),
        m0_m0: space.bracket_inclusion_residual(space.m0(), space.m0(), space.m0()),
    }
}

/// Dimensions of `{v ∈ m′ : [v, h] = 0}` and `{v ∈ m′ : [v, m₀] = 0}`.
pub fn lemma2_nullities(space: &HomogeneousSpace) -> (usize, usize) {
    let h = space.centralizer_in(space.h(), space.mprime()).dim();
    let m0 = space.centralizer_in(space.m0(), space.mprime()).dim();
    (h, m0)
}

/// Builds a Hermitian triple `H ⊊ K ⊊ G` and checks its bracket relations.
pub fn build_symmetric_triple(d: &SpaceDescriptor) -> Result<SymmetricTriple> {
    d.validate()?;
    let label = d.label();
    let (g, h, center) = match d.family {
        Family::TripleSuSu => {
            let (n1, n2) = d.pair_params()?;
            let n = n1 + n2;
            let g = algebra(&[FactorKind::Su(n)])?;
            let mut h = block_generators(&g, 0, FactorKind::Su(n1), n, 0)?;
            h.extend(block_generators(&g, 0, FactorKind::Su(n2), n, n1)?);
            let mut c = field_zeros(Field::Complex, n);
            for i in 0..n {
                let w = if i < n1 { n2 as f64 } else { -(n1 as f64) };
                c.set(i, i, Quaternion::I.scale(w));
            }
            let center = g.element_from_fields(&[(0, c)], &[])?;
            (g, h, center)
        }
        Family::TripleSpSu => {
            let n = d.n()?;
            let g = algebra(&[FactorKind::Sp(n)])?;
            let h = factor_basis(FactorKind::Su(n))
                .iter()
                .map(|m| g.element_from_fields(&[(0, complex_as_quaternion(m))], &[]))
                .collect::<Result<Vec<_>>>()?;
            let mut c = field_zeros(Field::Quaternion, n);
            for i in 0..n {
                c.set(i, i, Quaternion::I);
            }
            let center = g.element_from_fields(&[(0, c)], &[])?;
            (g, h, center)
        }
        Family::TripleSoSo => {
            let n = d.n()?;
            let g = algebra(&[FactorKind::So(n + 2)])?;
            let h = block_generators(&g, 0, FactorKind::So(n), n + 2, 0)?;
            let mut c = DMatrix::zeros(n + 2, n + 2);
            c[(n, n + 1)] = 1.0;
            c[(n + 1, n)] = -1.0;
            let center = g.element_from_fields(&[(0, FieldMatrix::Real(c))], &[])?;
            (g, h, center)
        }
        Family::TripleSoSu => {
            let n = d.n()?;
            let g = algebra(&[FactorKind::So(2 * n)])?;
            let h = factor_basis(FactorKind::Su(n))
                .iter()
                .map(|m| {
                    let r = real_embedding(m, Field::Complex)?;
                    g.element_from_fields(&[(0, FieldMatrix::Real(r))], &[])
                })
                .collect::<Result<Vec<_>>>()?;
            let mut c = field_zeros(Field::Complex, n);
            for i in 0..n {
                c.set(i, i, Quaternion::I);
            }
            let center = g.element_from_fields(&[(0, FieldMatrix::Real(real_embedding(&c, Field::Complex)?))], &[])?;
            (g, h, center)
        }
        other => return Err(Error::InvalidInput(format!("{other} is not a triple family"))),
    };

    let mut k = h.clone();
    k.push(center.clone());
    let quotient = make_reductive_decomposition(g.clone(), &k, format!("{label} (G/K)"))?;
    let space = make_reductive_decomposition(g, &h, label)?;

    let k_span =
        Subspace::span(space.algebra().dim(), &k.iter().map(|x| x.coords().clone()).collect::<Vec<_>>(), RANK_TOL)?;
    let k_over_h = space.h().complement_within(&k_span);
    if space.dim_m0() != 1 || k_over_h.dim() != 1 {
        return Err(Error::StructureViolation(format!(
            "{}: expected a one-dimensional fixed set, found dim m0 = {}",
            space.label(),
            space.dim_m0()
        )));
    }
    let dist = space.m0().distance(&k_over_h);
    if dist > STRUCT_TOL {
        return Err(Error::StructureViolation(format!("{}: m0 differs from k ⊖ h by {dist:.3e}", space.label())));
    }
    let rel = triple_relations(&space);
    if rel.max() > STRUCT_TOL {
        return Err(Error::StructureViolation(format!("{}: bracket relations violated ({rel:?})", space.label())));
    }
    Ok(SymmetricTriple { space, quotient, k_over_h })
}

pub fn build_symmetric_triple_space(d: &SpaceDescriptor) -> Result<HomogeneousSpace> {
    Ok(build_symmetric_triple(d)?.space)
}

fn complex_as_quaternion(m: &FieldMatrix) -> FieldMatrix {
    let FieldMatrix::Complex(c) = m else {
        return m.clone();
    };
    FieldMatrix::Quaternion(c.map(|z| Quaternion::new(z.re, z.im, 0.0, 0.0)))
}

/// The explicit pieces `m₀`, `m₁`, `m₂` of `Sp(n+1)U(1)/Sp(n)U(1)`, in
/// algebra coordinates.
#[derive(Debug, Clone)]
pub struct SpU1Blocks {
    pub m0: Subspace,
    pub m1: Subspace,
    pub m2: Subspace,
}

pub fn sp_u1_blocks(space: &HomogeneousSpace, n: usize) -> Result<SpU1Blocks> {
    let g = space.algebra();
    let dim = g.dim();
    let q = |entries: &[(usize, usize, Quaternion)]| {
        let mut m = field_zeros(Field::Quaternion, n + 1);
        for &(r, c, v) in entries {
            m.set(r, c, v);
        }
        m
    };
    let m0 = vec![g.element_from_fields(&[(0, q(&[(n, n, Quaternion::I)]))], &[-1.0])?.coords().clone()];
    let m1 = [Quaternion::J, Quaternion::K]
        .iter()
        .map(|v| Ok(g.element_from_fields(&[(0, q(&[(n, n, *v)]))], &[0.0])?.coords().clone()))
        .collect::<Result<Vec<DVector<f64>>>>()?;
    let mut m2 = Vec::new();
    for r in 0..n {
        for v in [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K] {
            m2.push(g.element_from_fields(&[(0, q(&[(r, n, v), (n, r, -v.conj())]))], &[0.0])?.coords().clone());
        }
    }
    Ok(SpU1Blocks {
        m0: Subspace::span(dim, &m0, RANK_TOL)?,
        m1: Subspace::span(dim, &m1, RANK_TOL)?,
        m2: Subspace::span(dim, &m2, RANK_TOL)?,
    })
}

/// Residuals of `[m₀, m₀] = 0`, `[m₀, m₁] ⊂ m₁`, `[m₀, m₂] ⊂ m₂`, and the
/// nullity of `v ↦ [u, v]` on `m₁ ⊕ m₂` for the m₀ generator `u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpU1Relations {
    pub m0_m0: f64,
    pub m0_m1: f64,
    pub m0_m2: f64,
    pub injectivity_nullity: usize,
}

pub fn sp_u1_relations(space: &HomogeneousSpace, blocks: &SpU1Blocks) -> SpU1Relations {
    let zero = Subspace::zero(space.algebra().dim());
    let m12 = blocks.m1.sum(&blocks.m2);
    SpU1Relations {
        m0_m0: space.bracket_inclusion_residual(&blocks.m0, &blocks.m0, &zero),
        m0_m1: space.bracket_inclusion_residual(&blocks.m0, &blocks.m1, &blocks.m1),
        m0_m2: space.bracket_inclusion_residual(&blocks.m0, &blocks.m2, &blocks.m2),
        injectivity_nullity: space.centralizer_in(&blocks.m0, &m12).dim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        let err = "s2".parse::<Family>().unwrap_err().to_string();
        assert!(err.contains("sp-u1-sphere"));
    }

    #[test]
    fn parameter_ranges() {
        assert!(SpaceDescriptor::new(Family::SoSphere, 1).validate().is_err());
        assert!(SpaceDescriptor::new(Family::SpSphere, 0).validate().is_err());
        assert!(SpaceDescriptor::pair(Family::TripleSuSu, 1, 1).validate().is_err());
        assert!(SpaceDescriptor::new(Family::TripleSpSu, 1).validate().is_err());
        assert!(SpaceDescriptor::new(Family::TripleSoSo, 2).validate().is_err());
        assert!(SpaceDescriptor::new(Family::TripleSoSu, 2).validate().is_err());
        assert!(SpaceDescriptor::from_parts(Family::TripleSuSu, Some(3), None, None).is_err());
        assert!(build_sphere_space(Family::SoSphere, 1).is_err());
    }

    #[test]
    fn sphere_dimensions() {
        let s = build_sphere_space(Family::SpU1Sphere, 1).unwrap();
        assert_eq!((s.algebra().dim(), s.h().dim(), s.dim_m(), s.dim_m0()), (11, 4, 7, 1));
        let s = build_sphere_space(Family::SuSphere, 2).unwrap();
        assert_eq!(s.dim_m(), 5);
        let s = build_sphere_space(Family::SpSphere, 1).unwrap();
        assert_eq!((s.dim_m(), s.dim_m0()), (7, 3));
        let s = build_sphere_space(Family::SpSp1Sphere, 1).unwrap();
        assert_eq!((s.dim_m(), s.dim_m0()), (7, 0));
        let s = build_sphere_space(Family::USphere, 2).unwrap();
        assert_eq!((s.dim_m(), s.dim_m0()), (5, 1));
        let s = build_sphere_space(Family::SoSphere, 4).unwrap();
        assert_eq!((s.dim_m(), s.dim_m0()), (4, 0));
        let s = build_sphere_space(Family::SuSphere, 1).unwrap();
        assert_eq!((s.dim_m(), s.dim_m0()), (3, 3));
    }

    #[test]
    fn sp_u1_explicit_blocks() {
        let s = build_sphere_space(Family::SpU1Sphere, 1).unwrap();
        let b = sp_u1_blocks(&s, 1).unwrap();
        assert_eq!((b.m0.dim(), b.m1.dim(), b.m2.dim()), (1, 2, 4));
        assert!(s.m0().distance(&b.m0) < 1e-10);
        assert!(b.m1.is_contained_in(s.mprime(), 1e-10));
        assert!(b.m2.is_contained_in(s.mprime(), 1e-10));
        let r = sp_u1_relations(&s, &b);
        assert!(r.m0_m0 < 1e-10 && r.m0_m1 < 1e-10 && r.m0_m2 < 1e-10);
        assert_eq!(r.injectivity_nullity, 0);
    }

    #[test]
    fn triple_dimensions() {
        let t = build_symmetric_triple(&SpaceDescriptor::new(Family::TripleSoSo, 3)).unwrap();
        assert_eq!((t.space.dim_m(), t.space.dim_m0(), t.space.mprime().dim()), (7, 1, 6));
        let t = build_symmetric_triple(&SpaceDescriptor::new(Family::TripleSpSu, 2)).unwrap();
        assert_eq!((t.space.algebra().dim(), t.space.h().dim(), t.space.dim_m0()), (10, 3, 1));
        assert!(t.quotient.isotropy_irreducibility_test());
    }

    #[test]
    fn su_su_21_matches_su_sphere() {
        let t = build_symmetric_triple(&SpaceDescriptor::pair(Family::TripleSuSu, 2, 1)).unwrap();
        let s = build_sphere_space(Family::SuSphere, 2).unwrap();
        assert_eq!(t.space.dim_m(), s.dim_m());
        assert!(t.space.m0().distance(s.m0()) < 1e-10);
        assert!(t.space.h().distance(s.h()) < 1e-10);
    }

    #[test]
    fn lemma2_on_triples() {
        for d in [
            SpaceDescriptor::new(Family::TripleSoSo, 3),
            SpaceDescriptor::new(Family::TripleSoSu, 3),
            SpaceDescriptor::pair(Family::TripleSuSu, 2, 2),
        ] {
            let s = d.build().unwrap();
            assert_eq!(lemma2_nullities(&s), (0, 0), "{}", s.label());
        }
    }
}
