//! JSON instance files. Scalars are exact strings (`"3/4"`, `"2 mod 7"`), matrices are arrays of rows,
//! and the field is declared once per file.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bialgebroid::{check_bialgebroid, check_comodule_algebra, Bialgebroid, ComoduleAlgebra};
use crate::exactlin::{ExactMatrix, FieldSpec};
use crate::fincat::{validate_category, validate_profunctor, FinCategory, Profunctor};
use crate::report::Report;
use crate::takeuchi::{DoubleModule, FDAlgebra};
use crate::weakbialg::{check_separable_frobenius, check_weak_bialgebra, FrobeniusMonoid, WeakBialgebra};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at `{key}`: {msg}")]
    Schema { key: String, msg: String },
}

fn schema(key: impl Into<String>, msg: impl ToString) -> IoError {
    IoError::Schema { key: key.into(), msg: msg.to_string() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Category,
    Profunctor,
    Algebra,
    DoubleModule,
    Bialgebroid,
    ComoduleAlgebra,
    Frobenius,
    WeakBialgebra,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub payload: Value,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Category(Arc<FinCategory>),
    Profunctor(Profunctor),
    Algebra(Arc<FDAlgebra>),
    DoubleModule(Arc<DoubleModule>),
    Bialgebroid(Arc<Bialgebroid>),
    ComoduleAlgebra(ComoduleAlgebra),
    Frobenius(FrobeniusMonoid),
    WeakBialgebra(WeakBialgebra),
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Category(_) => Kind::Category,
            Instance::Profunctor(_) => Kind::Profunctor,
            Instance::Algebra(_) => Kind::Algebra,
            Instance::DoubleModule(_) => Kind::DoubleModule,
            Instance::Bialgebroid(_) => Kind::Bialgebroid,
            Instance::ComoduleAlgebra(_) => Kind::ComoduleAlgebra,
            Instance::Frobenius(_) => Kind::Frobenius,
            Instance::WeakBialgebra(_) => Kind::WeakBialgebra,
        }
    }

    pub fn field(&self) -> Option<FieldSpec> {
        match self {
            Instance::Category(_) | Instance::Profunctor(_) => None,
            Instance::Algebra(a) => Some(a.field()),
            Instance::DoubleModule(m) => Some(m.field()),
            Instance::Bialgebroid(b) => Some(b.field()),
            Instance::ComoduleAlgebra(m) => Some(m.field()),
            Instance::Frobenius(c) => Some(c.field()),
            Instance::WeakBialgebra(w) => Some(w.field()),
        }
    }
}

// ---- payload schemas ----

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismJson {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryJson {
    objects: Vec<String>,
    morphisms: Vec<MorphismJson>,
    identities: BTreeMap<String, String>,
    compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementJson {
    id: String,
    s: String,
    t: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfunctorJson {
    source: CategoryJson,
    target: CategoryJson,
    elements: Vec<ElementJson>,
    left: Vec<(String, String, String)>,
    right: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraJson {
    dim: usize,
    unit: Vec<String>,
    mult: Vec<(usize, usize, usize, String)>,
}

type MatrixJson = Vec<Vec<String>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionsJson {
    lro: Vec<MatrixJson>,
    ls: Vec<MatrixJson>,
    rro: Vec<MatrixJson>,
    rs: Vec<MatrixJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DoubleModuleJson {
    /// left base, right base
    bases: (AlgebraJson, AlgebraJson),
    dim: usize,
    actions: ActionsJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BialgebroidJson {
    base: AlgebraJson,
    total: AlgebraJson,
    anchor: MatrixJson,
    delta: MatrixJson,
    epsilon: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComoduleJson {
    left: BialgebroidJson,
    right: BialgebroidJson,
    total: AlgebraJson,
    anchor: MatrixJson,
    coaction: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrobeniusJson {
    algebra: AlgebraJson,
    delta: MatrixJson,
    epsilon: MatrixJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeakJson {
    algebra: AlgebraJson,
    #[serde(rename = "Delta")]
    delta: MatrixJson,
    epsilon: MatrixJson,
    base: FrobeniusJson,
    /// defaults to the unit column when the base is one-dimensional
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base_embedding: Option<MatrixJson>,
}

// ---- reading ----

fn from_value<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, IoError> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = e.path().to_string();
        let key = if path == "." { "payload".to_string() } else { format!("payload.{path}") };
        schema(key, e.into_inner())
    })
}

fn scalar(f: FieldSpec, s: &str, key: &str) -> Result<crate::exactlin::Scalar, IoError> {
    f.parse(s).map_err(|e| schema(key, e))
}

fn matrix(f: FieldSpec, m: &MatrixJson, rows: usize, cols: usize, key: &str) -> Result<ExactMatrix, IoError> {
    if m.len() != rows {
        return Err(schema(key, format!("expected {rows} rows, found {}", m.len())));
    }
    let mut parsed = Vec::with_capacity(rows);
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(schema(format!("{key}[{i}]"), format!("expected {cols} entries, found {}", row.len())));
        }
        parsed.push(row.iter().enumerate().map(|(j, s)| scalar(f, s, &format!("{key}[{i}][{j}]"))).collect::<Result<Vec<_>, _>>()?);
    }
    if rows == 0 {
        return Ok(ExactMatrix::zeros(f, 0, cols));
    }
    ExactMatrix::from_rows(f, &parsed).map_err(|e| schema(key, e))
}

fn algebra(f: FieldSpec, a: &AlgebraJson, key: &str) -> Result<Arc<FDAlgebra>, IoError> {
    let unit = a.unit.iter().enumerate().map(|(i, s)| scalar(f, s, &format!("{key}.unit[{i}]"))).collect::<Result<Vec<_>, _>>()?;
    let mut entries = Vec::with_capacity(a.mult.len());
    for (n, (i, j, k, c)) in a.mult.iter().enumerate() {
        entries.push((*i, *j, *k, scalar(f, c, &format!("{key}.mult[{n}]"))?));
    }
    FDAlgebra::new(f, a.dim, unit, &entries).map(Arc::new).map_err(|e| schema(key, e))
}

fn category(c: &CategoryJson, key: &str) -> Result<Arc<FinCategory>, IoError> {
    let morphisms = c.morphisms.iter().map(|m| (m.id.clone(), m.src.clone(), m.tgt.clone())).collect();
    FinCategory::from_named(c.objects.clone(), morphisms, &c.identities, &c.compose).map(Arc::new).map_err(|e| schema(key, e))
}

fn profunctor(p: &ProfunctorJson) -> Result<Profunctor, IoError> {
    let source = category(&p.source, "payload.source")?;
    let target = category(&p.target, "payload.target")?;
    let elements = p.elements.iter().map(|e| (e.id.clone(), e.s.clone(), e.t.clone())).collect();
    Profunctor::from_named(source, target, elements, &p.left, &p.right).map_err(|e| schema("payload.elements", e))
}

fn double_module(f: FieldSpec, m: &DoubleModuleJson) -> Result<Arc<DoubleModule>, IoError> {
    let left = algebra(f, &m.bases.0, "payload.bases[0]")?;
    let right = algebra(f, &m.bases.1, "payload.bases[1]")?;
    let d = m.dim;
    let read = |name: &str, ms: &[MatrixJson]| {
        ms.iter().enumerate().map(|(i, x)| matrix(f, x, d, d, &format!("payload.actions.{name}[{i}]"))).collect::<Result<Vec<_>, _>>()
    };
    let (lro, ls, rro, rs) = (read("lro", &m.actions.lro)?, read("ls", &m.actions.ls)?, read("rro", &m.actions.rro)?, read("rs", &m.actions.rs)?);
    DoubleModule::new(left, right, d, lro, ls, rro, rs).map(Arc::new).map_err(|e| schema("payload.actions", e))
}

fn bialgebroid(f: FieldSpec, b: &BialgebroidJson, key: &str) -> Result<Arc<Bialgebroid>, IoError> {
    let base = algebra(f, &b.base, &format!("{key}.base"))?;
    let total = algebra(f, &b.total, &format!("{key}.total"))?;
    let (d, n) = (base.dim(), total.dim());
    let anchor = matrix(f, &b.anchor, n, d * d, &format!("{key}.anchor"))?;
    let delta = matrix(f, &b.delta, n * n, n, &format!("{key}.delta"))?;
    let epsilon = matrix(f, &b.epsilon, d * d, n, &format!("{key}.epsilon"))?;
    Bialgebroid::new(base, total, anchor, delta, epsilon).map(Arc::new).map_err(|e| schema(key, e))
}

fn comodule(f: FieldSpec, m: &ComoduleJson) -> Result<ComoduleAlgebra, IoError> {
    let left = bialgebroid(f, &m.left, "payload.left")?;
    let right = bialgebroid(f, &m.right, "payload.right")?;
    let total = algebra(f, &m.total, "payload.total")?;
    let n = total.dim();
    let anchor = matrix(f, &m.anchor, n, left.base().dim() * right.base().dim(), "payload.anchor")?;
    let coaction = matrix(f, &m.coaction, left.total().dim() * n * right.total().dim(), n, "payload.coaction")?;
    ComoduleAlgebra::new(left, right, total, anchor, coaction).map_err(|e| schema("payload", e))
}

fn frobenius(f: FieldSpec, c: &FrobeniusJson, key: &str) -> Result<FrobeniusMonoid, IoError> {
    let a = algebra(f, &c.algebra, &format!("{key}.algebra"))?;
    let n = a.dim();
    let delta = matrix(f, &c.delta, n * n, n, &format!("{key}.delta"))?;
    let epsilon = matrix(f, &c.epsilon, 1, n, &format!("{key}.epsilon"))?;
    FrobeniusMonoid::new(a, delta, epsilon).map_err(|e| schema(key, e))
}

fn weak(f: FieldSpec, w: &WeakJson) -> Result<WeakBialgebra, IoError> {
    let a = algebra(f, &w.algebra, "payload.algebra")?;
    let n = a.dim();
    let delta = matrix(f, &w.delta, n * n, n, "payload.Delta")?;
    let epsilon = matrix(f, &w.epsilon, 1, n, "payload.epsilon")?;
    let base = frobenius(f, &w.base, "payload.base")?;
    let emb = match &w.base_embedding {
        Some(m) => matrix(f, m, n, base.dim(), "payload.base_embedding")?,
        None if base.dim() == 1 => ExactMatrix::from_sparse_columns(f, n, vec![a.unit().clone()]),
        None => return Err(schema("payload.base_embedding", "required when the base is not k")),
    };
    WeakBialgebra::new(a, delta, epsilon, Arc::new(base), emb).map_err(|e| schema("payload", e))
}

/// Parses an instance file; `default_field` applies when the file declares none.
pub fn parse_instance(text: &str, default_field: Option<FieldSpec>) -> Result<Instance, IoError> {
    if text.trim().is_empty() {
        return Err(IoError::Parse("empty input".into()));
    }
    let raw: Value = serde_json::from_str(text).map_err(|e| IoError::Parse(e.to_string()))?;
    let file: InstanceFile = serde_path_to_error::deserialize(raw).map_err(|e| schema(e.path().to_string(), e.into_inner()))?;
    let field = match &file.field {
        Some(s) => s.parse::<FieldSpec>().map_err(|e| schema("field", e))?,
        None => default_field.unwrap_or(FieldSpec::Rationals),
    };
    let p = file.payload;
    Ok(match file.kind {
        Kind::Category => Instance::Category(category(&from_value(p)?, "payload")?),
        Kind::Profunctor => Instance::Profunctor(profunctor(&from_value(p)?)?),
        Kind::Algebra => Instance::Algebra(algebra(field, &from_value(p)?, "payload")?),
        Kind::DoubleModule => Instance::DoubleModule(double_module(field, &from_value(p)?)?),
        Kind::Bialgebroid => Instance::Bialgebroid(bialgebroid(field, &from_value(p)?, "payload")?),
        Kind::ComoduleAlgebra => Instance::ComoduleAlgebra(comodule(field, &from_value(p)?)?),
        Kind::Frobenius => Instance::Frobenius(frobenius(field, &from_value(p)?, "payload")?),
        Kind::WeakBialgebra => Instance::WeakBialgebra(weak(field, &from_value(p)?)?),
    })
}

// ---- writing ----

fn matrix_json(m: &ExactMatrix) -> MatrixJson {
    let f = m.field();
    m.to_rows().iter().map(|r| r.iter().map(|x| f.format(x)).collect()).collect()
}

fn algebra_json(a: &FDAlgebra) -> AlgebraJson {
    let f = a.field();
    AlgebraJson {
        dim: a.dim(),
        unit: crate::exactlin::sparse::to_dense(f, a.unit(), a.dim()).iter().map(|x| f.format(x)).collect(),
        mult: a.structure_constants().into_iter().map(|(i, j, k, c)| (i, j, k, f.format(&c))).collect(),
    }
}

fn category_json(c: &FinCategory) -> CategoryJson {
    CategoryJson {
        objects: c.objects().to_vec(),
        morphisms: c
            .morphisms()
            .iter()
            .map(|m| MorphismJson { id: m.id.clone(), src: c.object_name(m.src).into(), tgt: c.object_name(m.tgt).into() })
            .collect(),
        identities: (0..c.num_objects()).map(|x| (c.object_name(x).to_string(), c.morphism(c.id(x)).id.clone())).collect(),
        compose: c.composition_triples(),
    }
}

fn bialgebroid_json(b: &Bialgebroid) -> BialgebroidJson {
    BialgebroidJson {
        base: algebra_json(b.base()),
        total: algebra_json(b.total()),
        anchor: matrix_json(b.anchor()),
        delta: matrix_json(b.delta()),
        epsilon: matrix_json(b.epsilon()),
    }
}

fn frobenius_json(c: &FrobeniusMonoid) -> FrobeniusJson {
    FrobeniusJson { algebra: algebra_json(c.carrier()), delta: matrix_json(c.delta()), epsilon: matrix_json(c.epsilon()) }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("payload serializes")
}

pub fn instance_to_file(inst: &Instance) -> InstanceFile {
    let payload = match inst {
        Instance::Category(c) => to_value(&category_json(c)),
        Instance::Profunctor(p) => to_value(&ProfunctorJson {
            source: category_json(p.source()),
            target: category_json(p.target()),
            elements: p
                .elements()
                .iter()
                .map(|e| ElementJson {
                    id: e.id.clone(),
                    s: p.source().object_name(e.s).into(),
                    t: p.target().object_name(e.t).into(),
                })
                .collect(),
            left: p.left_triples(),
            right: p.right_triples(),
        }),
        Instance::Algebra(a) => to_value(&algebra_json(a)),
        Instance::DoubleModule(m) => to_value(&DoubleModuleJson {
            bases: (algebra_json(m.left_base()), algebra_json(m.right_base())),
            dim: m.dim(),
            actions: ActionsJson {
                lro: m.lro().iter().map(matrix_json).collect(),
                ls: m.ls().iter().map(matrix_json).collect(),
                rro: m.rro().iter().map(matrix_json).collect(),
                rs: m.rs().iter().map(matrix_json).collect(),
            },
        }),
        Instance::Bialgebroid(b) => to_value(&bialgebroid_json(b)),
        Instance::ComoduleAlgebra(m) => to_value(&ComoduleJson {
            left: bialgebroid_json(m.left()),
            right: bialgebroid_json(m.right()),
            total: algebra_json(m.total()),
            anchor: matrix_json(m.anchor()),
            coaction: matrix_json(m.coaction_raw()),
        }),
        Instance::Frobenius(c) => to_value(&frobenius_json(c)),
        Instance::WeakBialgebra(w) => to_value(&WeakJson {
            algebra: algebra_json(w.carrier()),
            delta: matrix_json(w.delta()),
            epsilon: matrix_json(w.epsilon()),
            base: frobenius_json(w.base()),
            base_embedding: Some(matrix_json(w.base_embedding())),
        }),
    };
    InstanceFile { kind: inst.kind(), field: inst.field().map(|f| f.to_string()), payload }
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&instance_to_file(inst)).expect("instance serializes")
}

/// The full axiom report for the instance's kind.
pub fn validate_instance(inst: &Instance) -> Report {
    match inst {
        Instance::Category(c) => validate_category(c),
        Instance::Profunctor(p) => {
            let mut r = Report::new("profunctor");
            r.absorb("source", validate_category(p.source()));
            r.absorb("target", validate_category(p.target()));
            r.absorb("", validate_profunctor(p));
            r
        }
        Instance::Algebra(a) => a.validate(),
        Instance::DoubleModule(m) => m.validate(),
        Instance::Bialgebroid(b) => check_bialgebroid(b),
        Instance::ComoduleAlgebra(m) => {
            let mut r = Report::new("comodule algebra");
            r.absorb("left", check_bialgebroid(m.left()));
            if m.right() != m.left() {
                r.absorb("right", check_bialgebroid(m.right()));
            }
            r.absorb("", check_comodule_algebra(m));
            r
        }
        Instance::Frobenius(c) => check_separable_frobenius(c),
        Instance::WeakBialgebra(w) => check_weak_bialgebra(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::hom_profunctor;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn round_trip(inst: Instance) -> Instance {
        let text = instance_to_json(&inst);
        let back = parse_instance(&text, None).unwrap();
        assert_eq!(instance_to_json(&back), text);
        back
    }

    #[test]
    fn every_kind_round_trips() {
        let c = Arc::new(FinCategory::arrow());
        round_trip(Instance::Category(c.clone()));
        round_trip(Instance::Profunctor(hom_profunctor(&c).unwrap()));
        round_trip(Instance::Algebra(Arc::new(FDAlgebra::matrix_algebra(Q, 2))));
        let b = Arc::new(Bialgebroid::cyclic_group(Q, 2).unwrap());
        round_trip(Instance::DoubleModule(b.module().clone()));
        round_trip(Instance::Bialgebroid(b.clone()));
        round_trip(Instance::ComoduleAlgebra(ComoduleAlgebra::regular(&b).unwrap()));
        round_trip(Instance::Frobenius(FrobeniusMonoid::matrix(Q, 2).unwrap()));
        round_trip(Instance::WeakBialgebra(WeakBialgebra::cyclic_group(Q, 2).unwrap()));
        let f7 = FieldSpec::prime(7).unwrap();
        let back = round_trip(Instance::Frobenius(FrobeniusMonoid::matrix(f7, 2).unwrap()));
        assert_eq!(back.field(), Some(f7));
    }

    #[test]
    fn errors_name_the_key() {
        assert!(matches!(parse_instance("", None), Err(IoError::Parse(_))));
        let bad = r#"{"kind":"algebra","payload":{"dim":1,"unit":["1"],"mult":[[0,0,0,"x"]]}}"#;
        match parse_instance(bad, None) {
            Err(IoError::Schema { key, .. }) => assert_eq!(key, "payload.mult[0]"),
            other => panic!("{other:?}"),
        }
        let missing = r#"{"kind":"frobenius","payload":{"algebra":{"dim":1,"unit":["1"],"mult":[]},"delta":[["1"]]}}"#;
        match parse_instance(missing, None) {
            Err(IoError::Schema { key, msg }) => assert!(key.starts_with("payload") && msg.contains("epsilon"), "{key}: {msg}"),
            other => panic!("{other:?}"),
        }
        let short = r#"{"kind":"frobenius","payload":{"algebra":{"dim":1,"unit":["1"],"mult":[[0,0,0,"1"]]},"delta":[["1"]],"epsilon":[["1","2"]]}}"#;
        match parse_instance(short, None) {
            Err(IoError::Schema { key, .. }) => assert_eq!(key, "payload.epsilon[0]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn default_field_applies_when_undeclared() {
        let text = r#"{"kind":"algebra","payload":{"dim":1,"unit":["1"],"mult":[[0,0,0,"8"]]}}"#;
        let f7 = FieldSpec::prime(7).unwrap();
        let Instance::Algebra(a) = parse_instance(text, Some(f7)).unwrap() else { panic!() };
        assert!(a.validate().passed());
        let Instance::Algebra(a) = parse_instance(text, None).unwrap() else { panic!() };
        assert!(!a.validate().passed());
    }
}
