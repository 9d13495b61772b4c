//! Named examples with their expected invariants.
//!
//! Entries are JSON documents compiled into the library. Setting
//! `NODAL_CATALOG_DIR` adds every `*.json` file of that directory on top,
//! replacing embedded entries of the same name.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arnold::BoundsTable;
use crate::chmutov::{
    chmutov_nodes, node_count_formula, verify_all, Chart, NodalVariety, Node, NodeSet, SignPattern, VarietyKind,
};
use crate::defect::{betti_report, defect_exact, defect_modular};
use crate::exactfield::{ExactMatrix, Field, MinimalPolynomial, NumberFieldElement, Rational};
use crate::polycheb::json::{CoeffJson, PolynomialJson};
use crate::reslattice::{
    build_lattice_from_relations, count_projective, nullhomologous_columns, CountOptions, IntersectionMatrix,
};
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const DIR_ENV: &str = "NODAL_CATALOG_DIR";

macro_rules! embedded {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../catalog/", $name, ".json")))),*]
    };
}

const EMBEDDED: &[(&str, &str)] = embedded!(
    "chmutov-cubic",
    "chmutov-quartic-ppmm",
    "chmutov-quartic-pppm",
    "chmutov-quartic-pppp",
    "chmutov-quintic",
    "ci-quadrics-s6",
    "cubic-d4-matrix",
    "kummer-16",
    "kummer-double-solid",
    "mu3-bounds",
    "mu4-bounds",
    "octic-9x9-block",
    "octic-double-solid-1",
    "octic-double-solid-2",
    "octic-double-solid-3",
    "octic-double-solid-4",
    "quadric-node",
    "quartic-double-solid-1",
    "quartic-double-solid-2",
    "quartic-double-solid-3",
    "quartic-double-solid-4",
    "relations-quartic-double-solid-1",
    "relations-quartic-double-solid-2",
    "schoen-quintic",
    "sextic-double-solid-1",
    "sextic-double-solid-2",
    "sextic-double-solid-3",
    "sextic-double-solid-4",
    "todd-quartic",
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Variety,
    RelationSet,
    IntersectionMatrix,
    BoundsDatum,
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntryKind::Variety => "variety",
            EntryKind::RelationSet => "relation-set",
            EntryKind::IntersectionMatrix => "intersection-matrix",
            EntryKind::BoundsDatum => "bounds-datum",
        })
    }
}

/// Whether an expected value was published or computed here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Published,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expectation {
    pub value: Value,
    pub tag: Tag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub schema_version: u32,
    pub name: String,
    pub kind: EntryKind,
    pub provenance: String,
    #[serde(default)]
    pub description: String,
    pub data: Value,
    #[serde(default)]
    pub expected: BTreeMap<String, Expectation>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationList {
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "lowercase")]
pub enum Construction {
    Chmutov { signs: String },
    Explicit { field: Vec<i64>, chart: Chart, equation: PolynomialJson, nodes: Vec<Vec<Value>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VarietySpec {
    pub variety_kind: VarietyKind,
    pub degree: u32,
    #[serde(flatten)]
    pub construction: Construction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationList>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RelationSetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variety: Option<String>,
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowerBound {
    pub d: u32,
    pub value: u64,
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundsSpec {
    pub n: u32,
    pub degrees: Vec<u32>,
    #[serde(default)]
    pub known_lower: Vec<LowerBound>,
    /// Claims that were later withdrawn; kept for reference only.
    #[serde(default)]
    pub superseded: Vec<LowerBound>,
}

/// An entry turned into the objects it describes.
#[derive(Clone, Debug)]
pub enum Object {
    Variety { variety: NodalVariety, nodes: NodeSet, relations: Option<RelationList> },
    RelationSet { spec: RelationSetSpec, lattice: IntersectionMatrix },
    Matrix { matrix: IntersectionMatrix, relation_basis: Option<Vec<Vec<i64>>> },
    Bounds { spec: BoundsSpec, table: BoundsTable },
}

#[derive(Clone, Debug)]
pub struct Loaded {
    pub entry: Entry,
    pub object: Object,
}

impl Loaded {
    /// The lattice A spanned by the rows, or the one cut out by relations.
    pub fn lattice(&self) -> Result<IntersectionMatrix> {
        match &self.object {
            Object::Variety { relations: Some(rel), .. } => {
                build_lattice_from_relations(&to_rational_rows(&rel.vectors), rel.labels.len())?
                    .with_labels(rel.labels.clone())
            }
            Object::RelationSet { lattice, .. } => Ok(lattice.clone()),
            Object::Matrix { matrix, .. } => Ok(matrix.clone()),
            _ => Err(Error::Invalid(format!("`{}` carries no intersection data", self.entry.name))),
        }
    }
}

/// Result of comparing one expected value with a fresh computation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub entry: String,
    pub key: String,
    pub tag: Tag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub expected: Value,
    pub actual: Option<Value>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    entries: BTreeMap<String, Entry>,
}

/// Parses one entry document; `origin` names it in error messages.
pub fn parse_entry(text: &str, origin: &str) -> Result<Entry> {
    let entry: Entry =
        serde_json::from_str(text).map_err(|e| Error::CatalogData(format!("{origin}: {e}")))?;
    if entry.schema_version != SCHEMA_VERSION {
        return Err(Error::CatalogData(format!(
            "{origin}: schema version {} (expected {SCHEMA_VERSION})",
            entry.schema_version
        )));
    }
    Ok(entry)
}

fn invalid(entry: &str, check: impl Into<String>) -> Error {
    Error::Validation { entry: entry.to_string(), check: check.into() }
}

fn data<T: serde::de::DeserializeOwned>(entry: &Entry) -> Result<T> {
    T::deserialize(&entry.data).map_err(|e| Error::CatalogData(format!("{}: {e}", entry.name)))
}

fn to_rational_rows(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect()
}

impl Catalog {
    pub fn embedded() -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (name, text) in EMBEDDED {
            let entry = parse_entry(text, name)?;
            if entry.name != *name {
                return Err(Error::CatalogData(format!("{name}.json declares name `{}`", entry.name)));
            }
            entries.insert(entry.name.clone(), entry);
        }
        Ok(Catalog { entries })
    }

    /// Embedded entries plus those in `NODAL_CATALOG_DIR`, if set.
    pub fn open() -> Result<Self> {
        let mut cat = Catalog::embedded()?;
        if let Some(dir) = std::env::var_os(DIR_ENV) {
            cat.add_dir(Path::new(&dir))?;
        }
        Ok(cat)
    }

    pub fn add_dir(&mut self, dir: &Path) -> Result<()> {
        let mut paths: Vec<_> = std::fs::read_dir(dir)?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<Vec<_>>>()?;
        paths.retain(|p| p.extension().is_some_and(|x| x == "json"));
        paths.sort();
        for p in paths {
            let text = std::fs::read_to_string(&p)?;
            self.insert(parse_entry(&text, &p.display().to_string())?);
        }
        Ok(())
    }

    pub fn insert(&mut self, entry: Entry) {
        self.entries.insert(entry.name.clone(), entry);
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = &Entry> {
        self.entries.values()
    }

    pub fn entry(&self, name: &str) -> Result<&Entry> {
        self.entries.get(name).ok_or_else(|| Error::UnknownEntry(name.to_string()))
    }

    /// Builds and validates an entry: nodes are checked to be ordinary
    /// double points, labels are matched and relation bases are checked to
    /// be orthogonal to their matrix.
    pub fn load(&self, name: &str) -> Result<Loaded> {
        let entry = self.entry(name)?.clone();
        let object = match entry.kind {
            EntryKind::Variety => self.load_variety(&entry)?,
            EntryKind::RelationSet => self.load_relation_set(&entry)?,
            EntryKind::IntersectionMatrix => load_matrix(&entry)?,
            EntryKind::BoundsDatum => load_bounds(&entry)?,
        };
        Ok(Loaded { entry, object })
    }

    fn load_variety(&self, entry: &Entry) -> Result<Object> {
        let spec: VarietySpec = data(entry)?;
        let name = &entry.name;
        let (variety, nodes) = match &spec.construction {
            Construction::Chmutov { signs } => {
                let signs = SignPattern::parse(signs)?;
                let (mut v, nodes) = chmutov_nodes(spec.variety_kind, spec.degree, &signs)?;
                v.name = name.clone();
                let formula = node_count_formula(spec.variety_kind, spec.degree, &signs)?;
                if formula != BigUint::from(nodes.len()) {
                    return Err(invalid(name, format!("{} nodes enumerated, count formula gives {formula}", nodes.len())));
                }
                (v, nodes)
            }
            Construction::Explicit { field, chart, equation, nodes } => {
                let field = Arc::new(MinimalPolynomial::from_i64(field)?);
                let template = NumberFieldElement::zero(&field);
                let f = equation.to_poly(&template)?;
                let v = NodalVariety::new(name.clone(), spec.variety_kind, spec.degree, field, f, *chart)?;
                let nodes = nodes
                    .iter()
                    .map(|p| p.iter().map(|c| NumberFieldElement::from_json(c, &template)).collect::<Result<Vec<_>>>())
                    .map(|c| c.map(Node::new))
                    .collect::<Result<Vec<_>>>()?;
                check_distinct(name, *chart, &nodes)?;
                (v, NodeSet { nodes })
            }
        };
        if let Some((i, status)) = verify_all(&variety, &nodes.nodes, true)? {
            return Err(invalid(name, format!("node {} is not an ordinary double point ({status:?})", i + 1)));
        }
        if let Some(rel) = &spec.relations {
            check_labels(name, &rel.labels, &nodes.labels(&variety))?;
            check_vectors(name, &rel.vectors, rel.labels.len())?;
        }
        Ok(Object::Variety { variety, nodes, relations: spec.relations })
    }

    fn load_relation_set(&self, entry: &Entry) -> Result<Object> {
        let spec: RelationSetSpec = data(entry)?;
        let name = &entry.name;
        check_vectors(name, &spec.vectors, spec.labels.len())?;
        let mut sorted = spec.labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != spec.labels.len() {
            return Err(invalid(name, "labels are not distinct"));
        }
        if let Some(v) = &spec.variety {
            let Object::Variety { variety, nodes, .. } = self.load(v)?.object else {
                return Err(invalid(name, format!("`{v}` is not a variety")));
            };
            check_labels(name, &spec.labels, &nodes.labels(&variety))?;
        }
        let lattice = build_lattice_from_relations(&to_rational_rows(&spec.vectors), spec.labels.len())?
            .with_labels(spec.labels.clone())?;
        Ok(Object::RelationSet { spec, lattice })
    }

    /// Recomputes every expected value of one entry.
    pub fn run_expectations(&self, name: &str) -> Result<Vec<CheckOutcome>> {
        let loaded = self.load(name)?;
        let mut ctx = Context { loaded: &loaded, defect: None };
        let mut out = Vec::new();
        for (key, exp) in &loaded.entry.expected {
            let (actual, error) = match ctx.evaluate(key, exp) {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            };
            out.push(CheckOutcome {
                entry: name.to_string(),
                key: key.clone(),
                tag: exp.tag,
                prime: exp.prime,
                passed: actual.as_ref() == Some(&exp.value),
                expected: exp.value.clone(),
                actual,
                error,
            });
        }
        Ok(out)
    }

    pub fn run_all(&self) -> Result<Vec<CheckOutcome>> {
        let mut out = Vec::new();
        for name in self.names() {
            out.extend(self.run_expectations(name)?);
        }
        Ok(out)
    }
}

/// Loads one entry from the default catalog.
pub fn load(name: &str) -> Result<Loaded> {
    Catalog::open()?.load(name)
}

/// Runs the expectations of one entry, or of every entry for `None`.
pub fn run_expectations(name: Option<&str>) -> Result<Vec<CheckOutcome>> {
    let cat = Catalog::open()?;
    match name {
        Some(n) => cat.run_expectations(n),
        None => cat.run_all(),
    }
}

fn check_labels(name: &str, given: &[String], nodes: &[String]) -> Result<()> {
    let mut a = given.to_vec();
    let mut b = nodes.to_vec();
    a.sort();
    b.sort();
    if a != b {
        return Err(invalid(name, format!("labels {given:?} do not match the node labels {nodes:?}")));
    }
    Ok(())
}

fn check_vectors(name: &str, vectors: &[Vec<i64>], s: usize) -> Result<()> {
    if let Some(v) = vectors.iter().find(|v| v.len() != s) {
        return Err(invalid(name, format!("relation {v:?} does not have {s} entries")));
    }
    Ok(())
}

fn normalized(chart: Chart, p: &Node) -> Result<Vec<NumberFieldElement>> {
    if chart == Chart::Affine {
        return Ok(p.coords.clone());
    }
    let Some(lead) = p.coords.iter().find(|x| !x.is_zero()) else {
        return Ok(p.coords.clone());
    };
    let inv = lead.inv()?;
    Ok(p.coords.iter().map(|x| x.mul(&inv)).collect())
}

fn check_distinct(name: &str, chart: Chart, nodes: &[Node]) -> Result<()> {
    let normal = nodes.iter().map(|p| normalized(chart, p)).collect::<Result<Vec<_>>>()?;
    for i in 0..normal.len() {
        if let Some(j) = (i + 1..normal.len()).find(|&j| normal[j] == normal[i]) {
            return Err(invalid(name, format!("nodes {} and {} coincide", i + 1, j + 1)));
        }
    }
    Ok(())
}

fn load_matrix(entry: &Entry) -> Result<Object> {
    let matrix: IntersectionMatrix = data(entry)?;
    let relation_basis: Option<Vec<Vec<i64>>> = match entry.data.get("relation_basis") {
        Some(v) => Some(Vec::<Vec<i64>>::deserialize(v).map_err(|e| Error::CatalogData(format!("{}: {e}", entry.name)))?),
        None => None,
    };
    if let Some(basis) = &relation_basis {
        check_vectors(&entry.name, basis, matrix.s())?;
        for b in to_rational_rows(basis) {
            if matrix.apply(&b).iter().any(|x| !num_traits::Zero::is_zero(x)) {
                return Err(invalid(&entry.name, "relation basis is not orthogonal to the matrix rows"));
            }
        }
    }
    Ok(Object::Matrix { matrix, relation_basis })
}

fn load_bounds(entry: &Entry) -> Result<Object> {
    let spec: BoundsSpec = data(entry)?;
    let mut table = BoundsTable::for_dimension(spec.n, spec.degrees.iter().copied())?;
    for lb in &spec.known_lower {
        let Some(row) = table.rows.iter().find(|r| r.d == lb.d) else {
            return Err(invalid(&entry.name, format!("lower bound for degree {} outside the table", lb.d)));
        };
        if BigUint::from(lb.value) > row.combined_upper {
            return Err(invalid(
                &entry.name,
                format!("lower bound {} exceeds the upper bound {} in degree {}", lb.value, row.combined_upper, lb.d),
            ));
        }
        table.set_lower(lb.d, lb.value.into(), &lb.source);
    }
    Ok(Object::Bounds { spec, table })
}

struct Context<'a> {
    loaded: &'a Loaded,
    defect: Option<usize>,
}

fn big_value(x: &BigUint) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

impl Context<'_> {
    fn exact_defect(&mut self) -> Result<usize> {
        if let Some(d) = self.defect {
            return Ok(d);
        }
        let Object::Variety { variety, nodes, .. } = &self.loaded.object else {
            return Err(Error::Invalid("defects need a variety".into()));
        };
        let d = defect_exact(variety, &nodes.nodes)?.defect;
        self.defect = Some(d);
        Ok(d)
    }

    fn evaluate(&mut self, key: &str, exp: &Expectation) -> Result<Value> {
        let obj = &self.loaded.object;
        Ok(match (key, obj) {
            ("nodes", Object::Variety { nodes, .. }) => json!(nodes.len()),
            ("defect", Object::Variety { .. }) => json!(self.exact_defect()?),
            ("modular_defect", Object::Variety { variety, nodes, .. }) => {
                let p = exp.prime.ok_or_else(|| Error::CatalogData("modular_defect needs a prime".into()))?;
                json!(defect_modular(variety, &nodes.nodes, p)?.defect)
            }
            ("betti", Object::Variety { variety, nodes, .. }) => {
                let (kind, n, s) = (variety.kind, variety.degree, nodes.len() as i64);
                let r = betti_report(kind, n, s, self.exact_defect()? as i64, 0)?;
                json!({"b2": r.small.b2, "b3": r.small.b3, "e": r.small.e, "h11": r.h11, "h21": r.h21})
            }
            ("rank", Object::RelationSet { spec, .. }) => json!(ExactMatrix::from_rows(to_rational_rows(&spec.vectors))?.rank()),
            ("rank", Object::Matrix { matrix, .. }) => json!(matrix.rank()),
            ("dim_a", _) => json!(self.loaded.lattice()?.rank()),
            ("count", _) => json!(count_projective(&self.loaded.lattice()?, &CountOptions::default())?.projective_count),
            ("nullhomologous", _) => json!(nullhomologous_columns(&self.loaded.lattice()?)),
            ("arnold", Object::Bounds { table, .. }) => table.rows.iter().map(|r| big_value(&r.arnold)).collect(),
            ("bruce", Object::Bounds { table, .. }) => table.rows.iter().map(|r| big_value(&r.bruce)).collect(),
            ("combined_upper", Object::Bounds { table, .. }) => {
                table.rows.iter().map(|r| big_value(&r.combined_upper)).collect()
            }
            ("known_lower", Object::Bounds { table, .. }) => {
                table.rows.iter().map(|r| r.known_lower.as_ref().map_or(Value::Null, big_value)).collect()
            }
            _ => return Err(Error::CatalogData(format!("cannot evaluate `{key}` for a {}", self.loaded.entry.kind))),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_entries_parse() {
        let cat = Catalog::embedded().unwrap();
        assert_eq!(cat.names().count(), EMBEDDED.len());
        for e in cat.entries() {
            assert!(!e.expected.is_empty(), "{} has no expectations", e.name);
            assert!(e.provenance.starts_with("published") || e.provenance.starts_with("derived"));
        }
    }

    #[test]
    fn cubic_expectations_hold() {
        let cat = Catalog::embedded().unwrap();
        let out = cat.run_expectations("chmutov-cubic").unwrap();
        assert_eq!(out.len(), 4);
        assert!(out.iter().all(|c| c.passed), "{out:?}");
    }

    #[test]
    fn matrix_entries() {
        let cat = Catalog::embedded().unwrap();
        for name in ["cubic-d4-matrix", "ci-quadrics-s6", "octic-9x9-block"] {
            let out = cat.run_expectations(name).unwrap();
            assert!(out.iter().all(|c| c.passed), "{out:?}");
        }
    }

    #[test]
    fn bounds_entries() {
        let cat = Catalog::embedded().unwrap();
        for name in ["mu3-bounds", "mu4-bounds"] {
            let out = cat.run_expectations(name).unwrap();
            assert!(out.iter().all(|c| c.passed), "{out:?}");
        }
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(Catalog::embedded().unwrap().load("nope"), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn broken_node_fails_validation() {
        let mut cat = Catalog::embedded().unwrap();
        let mut e = cat.entry("quadric-node").unwrap().clone();
        e.data["nodes"] = json!([[1, 0, 0, 0]]);
        cat.insert(e);
        assert!(matches!(cat.load("quadric-node"), Err(Error::Validation { .. })));
    }

    #[test]
    fn non_orthogonal_basis_fails_validation() {
        let mut cat = Catalog::embedded().unwrap();
        let mut e = cat.entry("cubic-d4-matrix").unwrap().clone();
        e.data["relation_basis"][0] = json!([1, 0, 0, 0, 0, 0, 0, 0, 0]);
        cat.insert(e);
        assert!(matches!(cat.load("cubic-d4-matrix"), Err(Error::Validation { .. })));
    }

    #[test]
    fn relation_labels_must_match_nodes() {
        let mut cat = Catalog::embedded().unwrap();
        let mut e = cat.entry("relations-quartic-double-solid-1").unwrap().clone();
        e.data["labels"][0] = json!("+++");
        cat.insert(e);
        assert!(matches!(cat.load("relations-quartic-double-solid-1"), Err(Error::Validation { .. })));
    }
}
