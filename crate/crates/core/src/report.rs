//! Analysis reports and their JSON encoding.
//!
//! Floats are written with 17 significant digits so that a report parses
//! back to exactly the same values.

use std::io;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;

use crate::catalog::{Params, Prediction, SpaceDescriptor};
use crate::classify::{
    center_of_fixed_set, classify_equigeodesic_set_with, Certification, ClassifyOptions, SampleWitness, SetKind,
    SUBSPACE_TOL,
};
use crate::criteria::{sampled_metric_oracle, TAU_CRIT};
use crate::error::{Error, Result};
use crate::kernel::{Subspace, RANK_TOL};
use crate::space::{HomogeneousSpace, STRUCT_TOL};

pub const OUTSIDE_HYPOTHESES: &str = "outside theorem hypotheses";
pub const CENTER_READING: &str = "c(m0) is read as the centre of the Lie algebra m0";
pub const CONNECTED_ISOTROPY: &str = "isotropy group taken connected: m0 is the kernel of ad(h) on m";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub g: usize,
    pub h: usize,
    pub m: usize,
    pub m0: usize,
    pub mprime: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: SetKind,
    /// Orthonormal basis of the answer, as rows of m-coordinates.
    pub basis: Vec<Vec<f64>>,
    pub certification: Certification,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<SampleWitness>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub predicted: Prediction,
    pub computed: String,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Projection distance between predicted and computed subspaces, when
    /// both are subspaces of equal dimension.
    pub residual: Option<f64>,
}

/// Sampled-metric confirmation of the members of a linear answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub samples: usize,
    pub vectors_checked: usize,
    pub max_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub criterion: f64,
    pub rank: f64,
    pub structure: f64,
    pub subspace: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub space: String,
    pub label: String,
    pub params: Params,
    pub dims: Dims,
    pub commutant_dim: usize,
    pub isotropy_irreducible: bool,
    pub classification: Option<Classification>,
    pub theorem_check: Option<TheoremCheck>,
    pub oracle: Option<OracleSummary>,
    pub tolerances: Tolerances,
    pub seed: u64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyzeOptions {
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self { tol: TAU_CRIT, samples: 100, seed: 0 }
    }
}

fn rows_of(s: &Subspace) -> Vec<Vec<f64>> {
    s.basis_vectors().iter().map(|v| v.iter().copied().collect()).collect()
}

/// Builds the space, classifies its equigeodesic set, and compares with the
/// predicted answer.
pub fn analyze(d: &SpaceDescriptor, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let space = d.build()?;
    analyze_space(d, &space, opts)
}

pub fn analyze_space(d: &SpaceDescriptor, space: &HomogeneousSpace, opts: AnalyzeOptions) -> Result<AnalysisReport> {
    let dims = Dims {
        g: space.algebra().dim(),
        h: space.h().dim(),
        m: space.dim_m(),
        m0: space.dim_m0(),
        mprime: space.mprime().dim(),
    };
    let mut notes = vec![CONNECTED_ISOTROPY.to_string()];
    let prediction = d.prediction();
    if prediction.is_none() {
        notes.push(OUTSIDE_HYPOTHESES.to_string());
    }

    let mut classification = None;
    let mut oracle = None;
    let mut computed_subspace = None;
    if dims.m0 == 0 {
        notes.push(Error::TrivialFixedSet.to_string());
    } else {
        let set = classify_equigeodesic_set_with(space, ClassifyOptions { seed: opts.seed, tol: opts.tol })?;
        if set.kind == SetKind::LinearSubspace && opts.samples > 0 {
            let mut max_residual = 0.0f64;
            for b in set.subspace.basis_vectors() {
                let x = space.algebra().element(space.from_m(&b))?;
                max_residual =
                    max_residual.max(sampled_metric_oracle(space, &x, opts.samples, opts.seed)?.max_residual);
            }
            oracle = Some(OracleSummary {
                samples: opts.samples,
                vectors_checked: set.dim(),
                max_residual,
                pass: max_residual <= opts.tol,
            });
        }
        if d.family.is_triple() {
            notes.push(CENTER_READING.to_string());
        }
        classification = Some(Classification {
            kind: set.kind,
            basis: rows_of(&set.subspace),
            certification: set.certification,
            witnesses: set.witnesses,
        });
        computed_subspace = Some((set.kind, set.subspace));
    }

    let theorem_check = prediction.map(|p| theorem_check(space, p, computed_subspace.as_ref()));

    Ok(AnalysisReport {
        space: d.family.name().to_string(),
        label: space.label().to_string(),
        params: d.params,
        dims,
        commutant_dim: space.commutant().len(),
        isotropy_irreducible: space.isotropy_irreducibility_test(),
        classification,
        theorem_check,
        oracle,
        tolerances: Tolerances { criterion: opts.tol, rank: RANK_TOL, structure: STRUCT_TOL, subspace: SUBSPACE_TOL },
        seed: opts.seed,
        notes,
    })
}

fn computed_name(kind: SetKind, dim: usize) -> String {
    match kind {
        SetKind::Empty => "empty".into(),
        SetKind::Undetermined => "undetermined".into(),
        SetKind::LinearSubspace => format!("linear_subspace(dim {dim})"),
    }
}

fn theorem_check(space: &HomogeneousSpace, p: Prediction, computed: Option<&(SetKind, Subspace)>) -> TheoremCheck {
    let Some((kind, sub)) = computed else {
        return TheoremCheck {
            predicted: p,
            computed: "no_fixed_set".into(),
            matched: p == Prediction::NoFixedSet,
            residual: None,
        };
    };
    let computed = computed_name(*kind, sub.dim());
    let expected = match p {
        Prediction::NoFixedSet => None,
        Prediction::Empty => {
            return TheoremCheck { predicted: p, computed, matched: *kind == SetKind::Empty, residual: None }
        }
        Prediction::FixedSet => Some(space.subspace_in_m(space.m0())),
        Prediction::CenterOfFixedSet => Some(center_of_fixed_set(space)),
    };
    let Some(expected) = expected else {
        return TheoremCheck { predicted: p, computed, matched: false, residual: None };
    };
    let dist = sub.distance(&expected);
    let residual = dist.is_finite().then_some(dist);
    let matched = *kind == SetKind::LinearSubspace && !expected.is_zero() && dist <= SUBSPACE_TOL;
    TheoremCheck { predicted: p, computed, matched, residual }
}

/// Human-readable summary.
pub fn summary_text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let d = &r.dims;
    out.push_str(&format!("{} [{}]\n", r.label, r.space));
    out.push_str(&format!(
        "  dim g = {}, dim h = {}, dim m = {}, dim m0 = {}, dim m' = {}\n",
        d.g, d.h, d.m, d.m0, d.mprime
    ));
    out.push_str(&format!(
        "  commutant dim = {} ({})\n",
        r.commutant_dim,
        if r.isotropy_irreducible { "isotropy irreducible" } else { "isotropy reducible" }
    ));
    match &r.classification {
        Some(c) => out.push_str(&format!("  Randers equigeodesic set: {}\n", computed_name(c.kind, c.basis.len()))),
        None => out.push_str("  Randers equigeodesic set: not classified\n"),
    }
    if let Some(o) = &r.oracle {
        out.push_str(&format!(
            "  oracle: {} samples, max residual {:.3e} ({})\n",
            o.samples,
            o.max_residual,
            if o.pass { "pass" } else { "FAIL" }
        ));
    }
    if let Some(t) = &r.theorem_check {
        out.push_str(&format!("  prediction {:?}: {}\n", t.predicted, if t.matched { "match" } else { "MISMATCH" }));
    }
    for n in &r.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

/// JSON formatter that writes every float with 17 significant digits.
#[derive(Debug, Default)]
pub struct ExactFloatFormatter {
    inner: serde_json::ser::PrettyFormatter<'static>,
}

impl Formatter for ExactFloatFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }
    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }
    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }
    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }
    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }
    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

/// Serializes any value with [`ExactFloatFormatter`].
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloatFormatter::default());
    value.serialize(&mut ser).map_err(|e| Error::InvalidInput(e.to_string()))?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn parse_report(s: &str) -> Result<AnalysisReport> {
    serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("malformed report: {e}")))
}

/// Parses a JSON array of m-coordinates, checking length and rejecting the
/// zero vector.
pub fn parse_vector_json(s: &str, expected_len: usize) -> Result<DVector<f64>> {
    let v: Vec<f64> =
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("expected a JSON array of numbers: {e}")))?;
    if v.len() != expected_len {
        return Err(Error::DimensionMismatch { expected: expected_len, found: v.len() });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    if v.iter().all(|x| *x == 0.0) {
        return Err(Error::ZeroVector);
    }
    Ok(DVector::from_vec(v))
}
