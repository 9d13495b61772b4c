//! The lattice side of small resolutions: the decomposition Q^s = A ⊥ B,
//! sign flips, strict-positivity feasibility and projective counting.

mod count;
mod oracle;
mod simplex;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactfield::json::{format_rational, RationalRepr};
use crate::exactfield::{ExactMatrix, Rational};
use crate::{Error, Result};

pub use count::{count_projective, CountOptions, CountReport, FlipWitness, DEFAULT_CAP};
use oracle::Prepared;
pub use simplex::feasible_point;

/// Generators of A as rows; one column per exceptional curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    s: usize,
    labels: Vec<String>,
    rows: Vec<Vec<Rational>>,
}

impl IntersectionMatrix {
    pub fn new(rows: Vec<Vec<Rational>>, s: usize, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(bad) = rows.iter().position(|r| r.len() != s) {
            return Err(Error::Dimension(format!("row {bad} has {} entries, expected {s}", rows[bad].len())));
        }
        let labels = match labels {
            Some(l) if l.len() != s => {
                return Err(Error::Dimension(format!("{} labels for {s} columns", l.len())));
            }
            Some(l) => l,
            None => Vec::new(),
        };
        Ok(IntersectionMatrix { s, labels, rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let s = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        Self::new(rows, s, None)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.s {
            return Err(Error::Dimension(format!("{} labels for {} columns", labels.len(), self.s)));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Column labels; empty when none were given.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    fn exact(&self) -> ExactMatrix<Rational> {
        if self.rows.is_empty() {
            return ExactMatrix::empty(0);
        }
        ExactMatrix::from_rows(self.rows.clone()).expect("rows have equal length")
    }

    /// dim A, the rank of the row space.
    pub fn rank(&self) -> usize {
        if self.rows.is_empty() || self.s == 0 {
            return 0;
        }
        self.exact().rank()
    }

    /// `λᵀ M`.
    pub fn combine(&self, lambda: &[Rational]) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.s];
        for (l, row) in lambda.iter().zip(&self.rows) {
            if l.is_zero() {
                continue;
            }
            for (x, m) in v.iter_mut().zip(row) {
                *x += l * m;
            }
        }
        v
    }

    /// `M y`.
    pub fn apply(&self, y: &[Rational]) -> Vec<Rational> {
        self.rows.iter().map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum()).collect()
    }
}

impl fmt::Display for IntersectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.labels.is_empty() {
            writeln!(f, "{}", self.labels.join("\t"))?;
        }
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    s: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    labels: Vec<String>,
    rows: Vec<Vec<RationalRepr>>,
}

impl Serialize for IntersectionMatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            s: self.s,
            labels: self.labels.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(RationalRepr::from).collect()).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for IntersectionMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(de)?;
        let rows = raw
            .rows
            .into_iter()
            .map(|r| r.into_iter().map(RationalRepr::into_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let labels = (!raw.labels.is_empty()).then_some(raw.labels);
        IntersectionMatrix::new(rows, raw.s, labels).map_err(serde::de::Error::custom)
    }
}

/// Basis of B = A^⊥ in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationBasis {
    pub s: usize,
    pub vectors: Vec<Vec<Rational>>,
}

impl RelationBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }
}

/// A vector in {±1}^s.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(eps: Vec<i8>) -> Result<Self> {
        if eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::Invalid("sign vector entries must be +1 or -1".into()));
        }
        Ok(SignVector(eps))
    }

    pub fn all_plus(s: usize) -> Self {
        SignVector(vec![1; s])
    }

    /// Bit j of `mask` set means entry j is −1.
    pub fn from_mask(s: usize, mask: u64) -> Self {
        SignVector((0..s).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn negated(&self) -> Self {
        SignVector(self.0.iter().map(|e| -e).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{}", if *e > 0 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

/// Outcome of the feasibility test, with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Projectivity {
    /// `lambda` combines the rows into `vector`, every entry of which is at least 1.
    Projective { lambda: Vec<Rational>, vector: Vec<Rational> },
    /// A nonzero `relation >= 0` with `M relation = 0`, normalised to sum 1.
    Blocked { relation: Vec<Rational> },
}

impl Projectivity {
    pub fn is_projective(&self) -> bool {
        matches!(self, Projectivity::Projective { .. })
    }
}

/// Reduced echelon basis of the span of `vectors` in Q^s.
fn echelon(vectors: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    if vectors.is_empty() || vectors[0].is_empty() {
        return Vec::new();
    }
    let m = ExactMatrix::from_rows(vectors).expect("vectors have equal length");
    let (r, pivots) = m.rref().expect("rational elimination cannot fail");
    r.rows().take(pivots.len()).map(<[Rational]>::to_vec).collect()
}

fn nullspace(rows: &[Vec<Rational>], s: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return (0..s).map(|j| unit(s, j)).collect();
    }
    ExactMatrix::from_rows(rows.to_vec()).expect("rows have equal length").nullspace().expect("rational elimination cannot fail")
}

fn unit(s: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); s];
    v[j] = Rational::one();
    v
}

/// Basis of B, the orthogonal complement of the row space.
pub fn relations(m: &IntersectionMatrix) -> RelationBasis {
    RelationBasis { s: m.s, vectors: echelon(nullspace(&m.rows, m.s)) }
}

/// Rows forming an echelon basis of the complement of the given relations.
pub fn build_lattice_from_relations(relations: &[Vec<Rational>], s: usize) -> Result<IntersectionMatrix> {
    if let Some(bad) = relations.iter().position(|r| r.len() != s) {
        return Err(Error::Dimension(format!("relation {bad} has length {}, expected {s}", relations[bad].len())));
    }
    let rows = echelon(nullspace(relations, s));
    IntersectionMatrix::new(rows, s, None)
}

pub fn flip(m: &IntersectionMatrix, eps: &SignVector) -> Result<IntersectionMatrix> {
    if eps.len() != m.s {
        return Err(Error::Dimension(format!("sign vector of length {} for {} columns", eps.len(), m.s)));
    }
    let rows = m
        .rows
        .iter()
        .map(|row| row.iter().zip(&eps.0).map(|(x, &e)| if e < 0 { -x } else { x.clone() }).collect())
        .collect();
    Ok(IntersectionMatrix { s: m.s, labels: m.labels.clone(), rows })
}

/// Indices of all-zero columns; each one puts a unit vector into B.
pub fn nullhomologous_columns(m: &IntersectionMatrix) -> Vec<usize> {
    (0..m.s).filter(|&j| m.rows.iter().all(|r| r[j].is_zero())).collect()
}

/// Some λ with every entry of λᵀM at least 1.
pub fn primal_oracle(m: &IntersectionMatrix) -> Option<Vec<Rational>> {
    Prepared::new(m).primal(&SignVector::all_plus(m.s))
}

/// Some y >= 0 summing to 1 with `M y = 0`.
pub fn dual_oracle(m: &IntersectionMatrix) -> Option<Vec<Rational>> {
    Prepared::new(m).dual(&SignVector::all_plus(m.s))
}

/// Runs both oracles and returns the certificate of the one that succeeds.
/// Exactly one of them must succeed.
pub fn is_projective(m: &IntersectionMatrix) -> Result<Projectivity> {
    Prepared::new(m).decide(&SignVector::all_plus(m.s))
}
