//! JSON problem records and their conversion to and from the checker types.
//!
//! A problem file is `{"version": "1", "problems": [...]}` where every problem
//! carries a `"kind"` tag. Matrices are arrays of rows; rationals are integers
//! or `"p/q"` strings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::exactq::{RationalMatrix, ShapeError};
use crate::groupoid::{FiniteGroupoid, GroupoidError, Presentation};
use crate::homalg::{CochainComplex, CochainMap, GradedSpace};
use crate::ruth::{RuthData, RuthError, RuthMorphismData, Simplex};
use crate::shifted::{OneShiftedFiber, ZeroShiftedFiber};

pub const FORMAT_VERSION: &str = "1";

/// Errors that make a whole file unreadable.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported version {0:?}, expected \"1\"")]
    Version(String),
    #[error("problem {index}: {message}")]
    Record { index: usize, message: String },
}

/// Errors turning one well-formed record into checker input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("`{field}`: {source}")]
    Shape { field: String, source: ShapeError },
    #[error("unknown groupoid {0:?}")]
    UnknownGroupoid(String),
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("operator entry with k = {k} has a tuple of length {len}")]
    TupleLength { k: usize, len: usize },
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Ruth(#[from] RuthError),
}

fn conform(field: &str, m: &RationalMatrix, rows: usize, cols: usize) -> Result<RationalMatrix, ProblemError> {
    m.clone()
        .conform(rows, cols)
        .map_err(|source| ProblemError::Shape { field: field.to_string(), source })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroShiftedRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimTM")]
    pub dim_tm: usize,
    pub rho: RationalMatrix,
    pub theta: RationalMatrix,
    #[serde(rename = "Fnabla")]
    pub fnabla: RationalMatrix,
    pub dtheta: RationalMatrix,
}

impl ZeroShiftedRecord {
    pub fn to_fiber(&self) -> Result<ZeroShiftedFiber, ProblemError> {
        let (a, n) = (self.dim_a, self.dim_tm);
        Ok(ZeroShiftedFiber {
            dim_a: a,
            dim_tm: n,
            anchor: conform("rho", &self.rho, n, a)?,
            form: conform("theta", &self.theta, 1, n)?,
            curvature: conform("Fnabla", &self.fnabla, 1, a)?,
            form_differential: conform("dtheta", &self.dtheta, n, n)?,
        })
    }

    pub fn from_fiber(label: Option<String>, p: &ZeroShiftedFiber) -> Self {
        Self {
            label,
            dim_a: p.dim_a,
            dim_tm: p.dim_tm,
            rho: p.anchor.clone(),
            theta: p.form.clone(),
            fnabla: p.curvature.clone(),
            dtheta: p.form_differential.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneShiftedRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    #[serde(rename = "dimTM")]
    pub dim_tm: usize,
    pub rho: RationalMatrix,
    #[serde(rename = "ellTheta")]
    pub ell_theta: RationalMatrix,
    pub e: RationalMatrix,
    #[serde(rename = "B")]
    pub b: RationalMatrix,
    #[serde(rename = "thetaOnTM", default, skip_serializing_if = "Option::is_none")]
    pub theta_on_tm: Option<RationalMatrix>,
}

impl OneShiftedRecord {
    pub fn to_fiber(&self) -> Result<OneShiftedFiber, ProblemError> {
        let (a, n) = (self.dim_a, self.dim_tm);
        Ok(OneShiftedFiber {
            dim_a: a,
            dim_tm: n,
            anchor: conform("rho", &self.rho, n, a)?,
            algebroid_form: conform("ellTheta", &self.ell_theta, 1, a)?,
            mixed_differential: conform("B", &self.b, a, n)?,
            connection_form: conform("e", &self.e, 1, a)?,
            base_form: self
                .theta_on_tm
                .as_ref()
                .map(|t| conform("thetaOnTM", t, 1, n))
                .transpose()?,
        })
    }

    pub fn from_fiber(label: Option<String>, p: &OneShiftedFiber) -> Self {
        Self {
            label,
            dim_a: p.dim_a,
            dim_tm: p.dim_tm,
            rho: p.anchor.clone(),
            ell_theta: p.algebroid_form.clone(),
            e: p.connection_form.clone(),
            b: p.mixed_differential.clone(),
            theta_on_tm: p.base_form.clone(),
        }
    }
}

/// Degree-keyed maps. JSON object keys are strings, and flattened records are
/// buffered before decoding, so keys are read as strings and parsed here.
mod degree_keys {
    use std::collections::BTreeMap;

    use serde::de::{Deserialize, Deserializer, Error};

    fn parse<E: Error, V>(m: BTreeMap<String, V>) -> Result<BTreeMap<i32, V>, E> {
        m.into_iter()
            .map(|(k, v)| {
                k.trim()
                    .parse::<i32>()
                    .map(|n| (n, v))
                    .map_err(|_| E::custom(format!("degree key {k:?} is not an integer")))
            })
            .collect()
    }

    pub fn flat<'de, D, V>(d: D) -> Result<BTreeMap<i32, V>, D::Error>
    where
        D: Deserializer<'de>,
        V: Deserialize<'de>,
    {
        parse(BTreeMap::<String, V>::deserialize(d)?)
    }

    pub fn nested<'de, D>(d: D) -> Result<BTreeMap<String, BTreeMap<i32, usize>>, D::Error>
    where
        D: Deserializer<'de>,
    {
        BTreeMap::<String, BTreeMap<String, usize>>::deserialize(d)?
            .into_iter()
            .map(|(x, m)| Ok((x, parse(m)?)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowRecord {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidRecord {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowRecord>,
    pub unit: BTreeMap<String, String>,
    pub inv: BTreeMap<String, String>,
    /// Triples `[g, h, g∘h]`.
    pub comp: Vec<[String; 3]>,
}

/// A built-in groupoid name (`trivial`, `Z<n>`, `S3`, `pair<n>`) or an inline table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupoidRef {
    Builtin(String),
    Inline(GroupoidRecord),
}

/// Resolves a built-in groupoid name.
pub fn builtin_groupoid(name: &str) -> Option<FiniteGroupoid> {
    let sized = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<usize>().ok());
    match name {
        "trivial" => Some(FiniteGroupoid::trivial()),
        "S3" => Some(FiniteGroupoid::symmetric3()),
        _ => {
            if let Some(n) = sized("pair").filter(|&n| (1..=16).contains(&n)) {
                Some(FiniteGroupoid::pair(n))
            } else {
                sized("Z").filter(|&n| (1..=64).contains(&n)).map(FiniteGroupoid::cyclic)
            }
        }
    }
}

impl GroupoidRef {
    pub fn resolve(&self) -> Result<FiniteGroupoid, ProblemError> {
        match self {
            GroupoidRef::Builtin(name) => {
                builtin_groupoid(name).ok_or_else(|| ProblemError::UnknownGroupoid(name.clone()))
            }
            GroupoidRef::Inline(r) => Ok(FiniteGroupoid::from_presentation(&Presentation {
                objects: r.objects.clone(),
                arrows: r.arrows.iter().map(|a| (a.id.clone(), a.src.clone(), a.tgt.clone())).collect(),
                units: r.unit.iter().map(|(o, a)| (o.clone(), a.clone())).collect(),
                inverses: r.inv.iter().map(|(a, b)| (a.clone(), b.clone())).collect(),
                compositions: r
                    .comp
                    .iter()
                    .map(|[g, h, gh]| (g.clone(), h.clone(), gh.clone()))
                    .collect(),
            })?),
        }
    }

    pub fn inline(g: &FiniteGroupoid) -> Self {
        let p = g.presentation();
        GroupoidRef::Inline(GroupoidRecord {
            objects: p.objects,
            arrows: p
                .arrows
                .into_iter()
                .map(|(id, src, tgt)| ArrowRecord { id, src, tgt })
                .collect(),
            unit: p.units.into_iter().collect(),
            inv: p.inverses.into_iter().collect(),
            comp: p.compositions.into_iter().map(|(g, h, gh)| [g, h, gh]).collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpRecord {
    pub k: usize,
    /// Arrow ids, or a single object id when `k = 0`.
    pub tuple: Vec<String>,
    pub deg: i32,
    pub matrix: RationalMatrix,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuthBody {
    pub groupoid: GroupoidRef,
    /// Object id → (degree → dimension). Missing objects carry the zero space.
    #[serde(deserialize_with = "degree_keys::nested")]
    pub fibers: BTreeMap<String, BTreeMap<i32, usize>>,
    #[serde(default)]
    pub ops: Vec<OpRecord>,
}

fn resolve_simplex(g: &FiniteGroupoid, k: usize, tuple: &[String]) -> Result<Simplex, ProblemError> {
    if k == 0 {
        let [name] = tuple else {
            return Err(ProblemError::TupleLength { k, len: tuple.len() });
        };
        if let Some(x) = g.object_by_name(name) {
            return Ok(Simplex::Object(x));
        }
        return match g.arrow_by_name(name).filter(|&a| g.is_unit(a)) {
            Some(u) => Ok(Simplex::Object(g.src(u))),
            None => Err(ProblemError::UnknownObject(name.clone())),
        };
    }
    if tuple.len() != k {
        return Err(ProblemError::TupleLength { k, len: tuple.len() });
    }
    let arrows = tuple
        .iter()
        .map(|n| g.arrow_by_name(n).ok_or_else(|| ProblemError::UnknownArrow(n.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Simplex::Arrows(arrows))
}

pub(crate) fn simplex_names(g: &FiniteGroupoid, s: &Simplex) -> Vec<String> {
    match s {
        Simplex::Object(x) => vec![g.object_name(*x).to_string()],
        Simplex::Arrows(t) => t.iter().map(|&a| g.arrow_name(a).to_string()).collect(),
    }
}

fn op_records(g: &FiniteGroupoid, table: &BTreeMap<(Simplex, i32), RationalMatrix>) -> Vec<OpRecord> {
    table
        .iter()
        .map(|((s, n), m)| OpRecord {
            k: s.arity(),
            tuple: simplex_names(g, s),
            deg: *n,
            matrix: m.clone(),
        })
        .collect()
}

impl RuthBody {
    pub fn to_ruth(&self) -> Result<RuthData, ProblemError> {
        self.to_ruth_over(Arc::new(self.groupoid.resolve()?))
    }

    fn to_ruth_over(&self, g: Arc<FiniteGroupoid>) -> Result<RuthData, ProblemError> {
        let mut fibers = vec![GradedSpace::default(); g.object_count()];
        for (name, dims) in &self.fibers {
            let x = g.object_by_name(name).ok_or_else(|| ProblemError::UnknownObject(name.clone()))?;
            fibers[x] = GradedSpace::new(dims.iter().map(|(&n, &d)| (n, d)));
        }
        let mut r = RuthData::new(g.clone(), fibers)?;
        for op in &self.ops {
            let s = resolve_simplex(&g, op.k, &op.tuple)?;
            let (rows, cols) = r.op_shape(&s, op.deg);
            let m = conform(&format!("ops {:?} deg {}", op.tuple, op.deg), &op.matrix, rows, cols)?;
            r.set_op(s, op.deg, m)?;
        }
        Ok(r)
    }

    pub fn from_ruth(r: &RuthData) -> Self {
        let g = r.groupoid();
        Self {
            groupoid: GroupoidRef::inline(g),
            fibers: (0..g.object_count())
                .map(|x| (g.object_name(x).to_string(), r.fiber(x).dims().clone()))
                .collect(),
            ops: op_records(g, r.stored_ops()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuthRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub body: RuthBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuthMorphismRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub source: RuthBody,
    pub target: RuthBody,
    #[serde(default)]
    pub comps: Vec<OpRecord>,
}

impl RuthMorphismRecord {
    pub fn to_morphism(&self) -> Result<RuthMorphismData, ProblemError> {
        let source = self.source.to_ruth()?;
        let target = self.target.to_ruth_over(source.groupoid().clone())?;
        if self.target.groupoid.resolve()? != **source.groupoid() {
            return Err(RuthError::GroupoidMismatch.into());
        }
        let g = source.groupoid().clone();
        let mut m = RuthMorphismData::new(source, target)?;
        for c in &self.comps {
            let s = resolve_simplex(&g, c.k, &c.tuple)?;
            let (rows, cols) = m.component_shape(&s, c.deg);
            let mat = conform(&format!("comps {:?} deg {}", c.tuple, c.deg), &c.matrix, rows, cols)?;
            m.set_component(s, c.deg, mat)?;
        }
        Ok(m)
    }

    pub fn from_morphism(label: Option<String>, m: &RuthMorphismData) -> Self {
        Self {
            label,
            source: RuthBody::from_ruth(m.source()),
            target: RuthBody::from_ruth(m.target()),
            comps: op_records(m.source().groupoid(), m.stored_components()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexBody {
    #[serde(deserialize_with = "degree_keys::flat")]
    pub dims: BTreeMap<i32, usize>,
    #[serde(default, deserialize_with = "degree_keys::flat")]
    pub d: BTreeMap<i32, RationalMatrix>,
}

impl ComplexBody {
    pub fn to_complex(&self) -> Result<CochainComplex, ProblemError> {
        let space = GradedSpace::new(self.dims.iter().map(|(&n, &d)| (n, d)));
        let d = self
            .d
            .iter()
            .map(|(&n, m)| Ok((n, conform(&format!("d {n}"), m, space.dim(n + 1), space.dim(n))?)))
            .collect::<Result<_, ProblemError>>()?;
        Ok(CochainComplex::new(space, d))
    }

    pub fn from_complex(c: &CochainComplex) -> Self {
        Self { dims: c.space().dims().clone(), d: c.stored_differentials().clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub body: ComplexBody,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CochainMapRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub source: ComplexBody,
    pub target: ComplexBody,
    #[serde(default, deserialize_with = "degree_keys::flat")]
    pub f: BTreeMap<i32, RationalMatrix>,
}

impl CochainMapRecord {
    pub fn to_map(&self) -> Result<CochainMap, ProblemError> {
        let source = self.source.to_complex()?;
        let target = self.target.to_complex()?;
        let f = self
            .f
            .iter()
            .map(|(&n, m)| Ok((n, conform(&format!("f {n}"), m, target.dim(n), source.dim(n))?)))
            .collect::<Result<_, ProblemError>>()?;
        Ok(CochainMap::new(source, target, f))
    }

    pub fn from_map(label: Option<String>, f: &CochainMap) -> Self {
        Self {
            label,
            source: ComplexBody::from_complex(f.source()),
            target: ComplexBody::from_complex(f.target()),
            f: f.stored_components().clone(),
        }
    }
}

/// One tagged problem record.
#[derive(Debug, Clone, PartialEq)]
pub enum Record {
    ZeroShifted(ZeroShiftedRecord),
    OneShifted(OneShiftedRecord),
    Ruth(RuthRecord),
    RuthMorphism(RuthMorphismRecord),
    Complex(ComplexRecord),
    CochainMap(CochainMapRecord),
}

/// Checker input produced from a record.
#[derive(Debug, Clone, PartialEq)]
pub enum Problem {
    ZeroShifted(ZeroShiftedFiber),
    OneShifted(OneShiftedFiber),
    Ruth(RuthData),
    RuthMorphism(RuthMorphismData),
    Complex(CochainComplex),
    CochainMap(CochainMap),
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Problem::ZeroShifted(_) => "zero_shifted",
            Problem::OneShifted(_) => "one_shifted",
            Problem::Ruth(_) => "ruth",
            Problem::RuthMorphism(_) => "ruth_morphism",
            Problem::Complex(_) => "complex",
            Problem::CochainMap(_) => "cochain_map",
        }
    }

    pub fn to_record(&self, label: Option<String>) -> Record {
        match self {
            Problem::ZeroShifted(p) => Record::ZeroShifted(ZeroShiftedRecord::from_fiber(label, p)),
            Problem::OneShifted(p) => Record::OneShifted(OneShiftedRecord::from_fiber(label, p)),
            Problem::Ruth(r) => Record::Ruth(RuthRecord { label, body: RuthBody::from_ruth(r) }),
            Problem::RuthMorphism(m) => Record::RuthMorphism(RuthMorphismRecord::from_morphism(label, m)),
            Problem::Complex(c) => Record::Complex(ComplexRecord { label, body: ComplexBody::from_complex(c) }),
            Problem::CochainMap(f) => Record::CochainMap(CochainMapRecord::from_map(label, f)),
        }
    }
}

pub const KINDS: [&str; 6] = ["zero_shifted", "one_shifted", "ruth", "ruth_morphism", "complex", "cochain_map"];

impl Record {
    pub fn kind(&self) -> &'static str {
        match self {
            Record::ZeroShifted(_) => "zero_shifted",
            Record::OneShifted(_) => "one_shifted",
            Record::Ruth(_) => "ruth",
            Record::RuthMorphism(_) => "ruth_morphism",
            Record::Complex(_) => "complex",
            Record::CochainMap(_) => "cochain_map",
        }
    }

    pub fn label(&self) -> Option<&str> {
        match self {
            Record::ZeroShifted(r) => r.label.as_deref(),
            Record::OneShifted(r) => r.label.as_deref(),
            Record::Ruth(r) => r.label.as_deref(),
            Record::RuthMorphism(r) => r.label.as_deref(),
            Record::Complex(r) => r.label.as_deref(),
            Record::CochainMap(r) => r.label.as_deref(),
        }
    }

    pub fn to_problem(&self) -> Result<Problem, ProblemError> {
        Ok(match self {
            Record::ZeroShifted(r) => Problem::ZeroShifted(r.to_fiber()?),
            Record::OneShifted(r) => Problem::OneShifted(r.to_fiber()?),
            Record::Ruth(r) => Problem::Ruth(r.body.to_ruth()?),
            Record::RuthMorphism(r) => Problem::RuthMorphism(r.to_morphism()?),
            Record::Complex(r) => Problem::Complex(r.body.to_complex()?),
            Record::CochainMap(r) => Problem::CochainMap(r.to_map()?),
        })
    }

    fn from_value(v: Value) -> Result<Self, String> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| "missing string field \"kind\"".to_string())?
            .to_string();
        let err = |e: serde_json::Error| e.to_string();
        Ok(match kind.as_str() {
            "zero_shifted" => Record::ZeroShifted(serde_json::from_value(v).map_err(err)?),
            "one_shifted" => Record::OneShifted(serde_json::from_value(v).map_err(err)?),
            "ruth" => Record::Ruth(serde_json::from_value(v).map_err(err)?),
            "ruth_morphism" => Record::RuthMorphism(serde_json::from_value(v).map_err(err)?),
            "complex" => Record::Complex(serde_json::from_value(v).map_err(err)?),
            "cochain_map" => Record::CochainMap(serde_json::from_value(v).map_err(err)?),
            other => return Err(format!("unknown kind {other:?}")),
        })
    }
}

#[derive(Serialize)]
struct Tagged<'a, T> {
    kind: &'static str,
    #[serde(flatten)]
    inner: &'a T,
}

impl Serialize for Record {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let kind = self.kind();
        match self {
            Record::ZeroShifted(r) => Tagged { kind, inner: r }.serialize(s),
            Record::OneShifted(r) => Tagged { kind, inner: r }.serialize(s),
            Record::Ruth(r) => Tagged { kind, inner: r }.serialize(s),
            Record::RuthMorphism(r) => Tagged { kind, inner: r }.serialize(s),
            Record::Complex(r) => Tagged { kind, inner: r }.serialize(s),
            Record::CochainMap(r) => Tagged { kind, inner: r }.serialize(s),
        }
    }
}

/// A parsed problem file.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProblemFile {
    pub version: String,
    pub problems: Vec<Record>,
}

impl ProblemFile {
    pub fn new(problems: Vec<Record>) -> Self {
        Self { version: FORMAT_VERSION.to_string(), problems }
    }

    /// Parses and checks the version and every record's schema.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        #[derive(Deserialize)]
        struct Raw {
            version: String,
            problems: Vec<Value>,
        }
        let raw: Raw = serde_json::from_str(text)?;
        if raw.version != FORMAT_VERSION {
            return Err(ParseError::Version(raw.version));
        }
        let problems = raw
            .problems
            .into_iter()
            .enumerate()
            .map(|(index, v)| Record::from_value(v).map_err(|message| ParseError::Record { index, message }))
            .collect::<Result<_, _>>()?;
        Ok(Self { version: raw.version, problems })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records always serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_shifted_record_round_trip() {
        let text = r#"{"version":"1","problems":[
            {"kind":"zero_shifted","label":"p","dimA":1,"dimTM":2,
             "rho":[[0],[1]],"theta":[[1,0]],"Fnabla":[[-1]],"dtheta":[[0,-1],[1,0]]}]}"#;
        let file = ProblemFile::parse(text).unwrap();
        let again = ProblemFile::parse(&file.to_json()).unwrap();
        assert_eq!(file, again);
        let Problem::ZeroShifted(p) = file.problems[0].to_problem().unwrap() else { panic!() };
        assert!(p.check().unwrap().passes);
    }

    #[test]
    fn empty_matrices_conform() {
        let text = r#"{"version":"1","problems":[
            {"kind":"zero_shifted","dimA":0,"dimTM":0,"rho":[],"theta":[[]],"Fnabla":[[]],"dtheta":[]}]}"#;
        let file = ProblemFile::parse(text).unwrap();
        file.problems[0].to_problem().unwrap();
    }

    #[test]
    fn version_and_kind_rejected() {
        assert!(matches!(
            ProblemFile::parse(r#"{"version":"2","problems":[]}"#),
            Err(ParseError::Version(_))
        ));
        assert!(matches!(
            ProblemFile::parse(r#"{"version":"1","problems":[{"kind":"nope"}]}"#),
            Err(ParseError::Record { index: 0, .. })
        ));
        assert!(matches!(ProblemFile::parse("{"), Err(ParseError::Json(_))));
    }

    #[test]
    fn shape_errors_are_per_problem() {
        let text = r#"{"version":"1","problems":[
            {"kind":"zero_shifted","dimA":1,"dimTM":2,"rho":[[0]],"theta":[[1,0]],"Fnabla":[[-1]],"dtheta":[[0,-1],[1,0]]}]}"#;
        let file = ProblemFile::parse(text).unwrap();
        assert!(matches!(file.problems[0].to_problem(), Err(ProblemError::Shape { .. })));
    }

    #[test]
    fn ruth_record_with_builtin_groupoid() {
        let text = r#"{"version":"1","problems":[
            {"kind":"ruth","groupoid":"Z2","fibers":{"*":{"0":1}},
             "ops":[{"k":1,"tuple":["g1"],"deg":0,"matrix":[[-1]]}]}]}"#;
        let file = ProblemFile::parse(text).unwrap();
        let Problem::Ruth(r) = file.problems[0].to_problem().unwrap() else { panic!() };
        assert!(r.verify().passes);
        let back = Problem::Ruth(r.clone()).to_record(None).to_problem().unwrap();
        assert_eq!(back, Problem::Ruth(r));
    }

    #[test]
    fn complex_and_map_records() {
        let text = r#"{"version":"1","problems":[
            {"kind":"complex","dims":{"0":1,"1":1},"d":{"0":[[1]]}},
            {"kind":"cochain_map","source":{"dims":{"0":1}},"target":{"dims":{"0":1}},"f":{"0":[["1/2"]]}}]}"#;
        let file = ProblemFile::parse(text).unwrap();
        let Problem::Complex(c) = file.problems[0].to_problem().unwrap() else { panic!() };
        assert!(c.is_acyclic().unwrap());
        let Problem::CochainMap(f) = file.problems[1].to_problem().unwrap() else { panic!() };
        assert!(f.is_quasi_iso().unwrap());
        let again = ProblemFile::parse(&file.to_json()).unwrap();
        assert_eq!(again, file);
    }
}
