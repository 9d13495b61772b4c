//! Defect of a nodal variety from the rank of monomials evaluated at its
//! nodes, exactly or modulo an inert prime, plus the Betti and Euler numbers
//! that follow from `s` and `d`.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::chmutov::{Chart, NodalVariety, Node, VarietyKind};
use crate::exactfield::{
    gaussian_rank, is_inert, reduce_matrix, ExactMatrix, FiniteField, NumberFieldElement, Rational,
};
use crate::polycheb::{binomial, MonomialBasis};
use crate::{Error, Result};

/// Degree of the monomials whose vanishing at the nodes measures the
/// defect: `2n - 5` in P⁴, `3n/2 - 4` for double solids. `None` when
/// negative, i.e. the basis is empty.
pub fn basis_degree(kind: VarietyKind, n: u32) -> Option<u32> {
    let d = match kind {
        VarietyKind::HypersurfaceP4 => 2 * n as i64 - 5,
        VarietyKind::DoubleSolidP3 => 3 * n as i64 / 2 - 4,
    };
    u32::try_from(d).ok()
}

/// Expected column count `binom(2n-1, 4)` or `binom(3n/2-1, 3)`.
pub fn expected_columns(kind: VarietyKind, n: u32) -> usize {
    match basis_degree(kind, n) {
        None => 0,
        Some(d) => {
            let vars = kind.affine_vars() as u64 + 1;
            binomial(d as u64 + vars - 1, vars - 1).try_into().expect("column count fits usize")
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvaluationMatrix {
    pub basis: MonomialBasis,
    pub matrix: ExactMatrix<NumberFieldElement>,
    /// Integer each homogenized node was multiplied by.
    pub row_scales: Vec<BigInt>,
}

impl EvaluationMatrix {
    pub fn nrows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.basis.len()
    }
}

/// Homogeneous coordinates of a node, scaled into Z[α] by the lcm of every
/// rational denominator in its power-basis coefficients.
pub fn cleared_homogeneous(v: &NodalVariety, p: &Node) -> (Vec<NumberFieldElement>, BigInt) {
    let mut coords = match v.chart {
        Chart::Affine => {
            let mut c = Vec::with_capacity(p.coords.len() + 1);
            c.push(NumberFieldElement::one(&v.field));
            c.extend(p.coords.iter().cloned());
            c
        }
        Chart::Projective => p.coords.clone(),
    };
    let l = coords.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
    let lq = Rational::from_integer(l.clone());
    for x in coords.iter_mut() {
        *x = x.scale(&lq);
    }
    (coords, l)
}

pub fn evaluation_matrix(v: &NodalVariety, nodes: &[Node]) -> Result<EvaluationMatrix> {
    let Some(deg) = basis_degree(v.kind, v.degree) else {
        return Ok(EvaluationMatrix {
            basis: MonomialBasis::empty(v.kind.affine_vars() + 1),
            matrix: ExactMatrix::empty(nodes.len()),
            row_scales: vec![BigInt::one(); nodes.len()],
        });
    };
    let nvars = v.kind.affine_vars() + 1;
    let basis = MonomialBasis::new(nvars, deg);
    let want = match v.chart {
        Chart::Affine => nvars - 1,
        Chart::Projective => nvars,
    };
    if let Some(bad) = nodes.iter().find(|p| p.coords.len() != want) {
        return Err(Error::Dimension(format!("node with {} coordinates, chart needs {want}", bad.coords.len())));
    }
    let rows: Vec<(Vec<NumberFieldElement>, BigInt)> = nodes
        .par_iter()
        .map(|p| {
            let (h, l) = cleared_homogeneous(v, p);
            (basis.evaluate_all(&h), l)
        })
        .collect();
    let mut entries = Vec::with_capacity(nodes.len() * basis.len());
    let mut row_scales = Vec::with_capacity(nodes.len());
    for (r, l) in rows {
        entries.extend(r);
        row_scales.push(l);
    }
    let matrix = ExactMatrix::new(nodes.len(), basis.len(), entries)?;
    Ok(EvaluationMatrix { basis, matrix, row_scales })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    Modular(u64),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Exact => write!(f, "exact"),
            Method::Modular(p) => write!(f, "modular({p})"),
        }
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub s: usize,
    pub cols: usize,
    pub rank: usize,
    pub defect: usize,
    pub method: Method,
    pub vanishing_dim: usize,
    pub runtime_ms: Option<u64>,
}

impl DefectReport {
    fn new(s: usize, cols: usize, rank: usize, method: Method, started: Instant) -> Self {
        DefectReport {
            s,
            cols,
            rank,
            defect: s - rank,
            method,
            vanishing_dim: cols - rank,
            runtime_ms: Some(started.elapsed().as_millis() as u64),
        }
    }

    /// Same report with the wall-clock field cleared, for reproducible output.
    pub fn without_timing(mut self) -> Self {
        self.runtime_ms = None;
        self
    }
}

/// `d = s - rank` over the node field.
pub fn defect_exact(v: &NodalVariety, nodes: &[Node]) -> Result<DefectReport> {
    let started = Instant::now();
    let em = evaluation_matrix(v, nodes)?;
    let rank = em.matrix.rank();
    Ok(DefectReport::new(nodes.len(), em.ncols(), rank, Method::Exact, started))
}

/// Same as `defect_exact` but with plain Gaussian elimination over the field,
/// an independent route to the rank.
pub fn defect_exact_gaussian(v: &NodalVariety, nodes: &[Node]) -> Result<DefectReport> {
    let started = Instant::now();
    let em = evaluation_matrix(v, nodes)?;
    let rank = gaussian_rank(&em.matrix);
    Ok(DefectReport::new(nodes.len(), em.ncols(), rank, Method::Exact, started))
}

/// `d'(p) = s - rank` of the cleared matrix reduced modulo an inert prime.
/// Reduction can only lose rank, so `d <= d'(p)`.
pub fn defect_modular(v: &NodalVariety, nodes: &[Node], p: u64) -> Result<DefectReport> {
    let started = Instant::now();
    if !is_inert(&v.field, p)? {
        return Err(Error::UnsuitablePrime { p, reason: format!("{} is not irreducible modulo {p}", v.field) });
    }
    let em = evaluation_matrix(v, nodes)?;
    let rank = if em.ncols() == 0 {
        0
    } else {
        let field = FiniteField::new(&v.field, p)?;
        reduce_matrix(&em.matrix, &field)?.rank()
    };
    Ok(DefectReport::new(nodes.len(), em.ncols(), rank, Method::Modular(p), started))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BettiData {
    pub b2: i64,
    pub b3: i64,
    pub b4: i64,
    pub e: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiReport {
    pub kind: VarietyKind,
    pub n: u32,
    pub s: i64,
    pub d: i64,
    pub s1: i64,
    /// `β₃` and `e` of a smooth member of the family.
    pub b3_smooth: i64,
    pub e_smooth: i64,
    /// The nodal variety.
    pub nodal: BettiData,
    /// Small resolution.
    pub small: BettiData,
    /// Big resolution, every node blown up.
    pub big: BettiData,
    /// Mixed resolution, `s1` nodes blown up.
    pub mixed: BettiData,
    pub h11: i64,
    /// `(β₃ - 2)/2` of the small resolution; absent when that is not a
    /// non-negative integer.
    pub h21: Option<i64>,
}

pub fn b3_smooth(kind: VarietyKind, n: u32) -> i64 {
    let n = n as i64;
    match kind {
        VarietyKind::HypersurfaceP4 => n.pow(4) - 5 * n.pow(3) + 10 * n * n - 10 * n + 4,
        VarietyKind::DoubleSolidP3 => n.pow(3) - 4 * n * n + 6 * n - 4,
    }
}

pub fn betti_report(kind: VarietyKind, n: u32, s: i64, d: i64, s1: i64) -> Result<BettiReport> {
    if s < 0 || d < 0 || s1 < 0 {
        return Err(Error::InconsistentBetti("s, d and s1 must be non-negative".into()));
    }
    if d > s {
        return Err(Error::InconsistentBetti(format!("d = {d} exceeds s = {s}")));
    }
    if s1 > s {
        return Err(Error::InconsistentBetti(format!("s1 = {s1} exceeds s = {s}")));
    }
    if kind == VarietyKind::DoubleSolidP3 && n % 2 == 1 {
        return Err(Error::InconsistentBetti(format!("double solids need an even degree, got {n}")));
    }
    let b3t = b3_smooth(kind, n);
    let et = 4 - b3t;
    let nodal = BettiData { b2: 1, b3: b3t - s + d, b4: 1 + d, e: et + s };
    let small = BettiData { b2: 1 + d, b3: b3t - 2 * s + 2 * d, b4: 1 + d, e: et + 2 * s };
    let big = BettiData { b2: 1 + d + s, b3: small.b3, b4: 1 + d + s, e: small.e + 2 * s };
    let mixed = BettiData { b2: 1 + d + s1, b3: small.b3, b4: 1 + d + s1, e: small.e + 2 * s1 };
    for (name, b) in [("V", &nodal), ("small resolution", &small)] {
        if b.b3 < 0 {
            return Err(Error::InconsistentBetti(format!(
                "beta_3 of {name} would be {} for n = {n}, s = {s}, d = {d}",
                b.b3
            )));
        }
    }
    let h21 = (small.b3 >= 2 && small.b3 % 2 == 0).then(|| (small.b3 - 2) / 2);
    Ok(BettiReport { kind, n, s, d, s1, b3_smooth: b3t, e_smooth: et, nodal, small, big, mixed, h11: small.b2, h21 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chmutov::{chmutov_nodes, SignPattern};

    #[test]
    fn columns() {
        assert_eq!(expected_columns(VarietyKind::HypersurfaceP4, 2), 0);
        assert_eq!(expected_columns(VarietyKind::HypersurfaceP4, 3), 5);
        assert_eq!(expected_columns(VarietyKind::HypersurfaceP4, 5), 126);
        assert_eq!(expected_columns(VarietyKind::DoubleSolidP3, 4), 10);
        assert_eq!(expected_columns(VarietyKind::DoubleSolidP3, 8), 165);
    }

    #[test]
    fn cubic_defect() {
        let (v, nodes) = chmutov_nodes(VarietyKind::HypersurfaceP4, 3, &SignPattern::parse("++++").unwrap()).unwrap();
        let em = evaluation_matrix(&v, &nodes.nodes).unwrap();
        assert_eq!((em.nrows(), em.ncols()), (6, 5));
        assert!(em.row_scales.iter().all(|l| *l == BigInt::from(2)));
        let r = defect_exact(&v, &nodes.nodes).unwrap();
        assert_eq!((r.rank, r.defect, r.vanishing_dim), (4, 2, 1));
        assert_eq!(defect_exact_gaussian(&v, &nodes.nodes).unwrap().defect, 2);
        assert_eq!(defect_modular(&v, &nodes.nodes, 7).unwrap().defect, 2);
    }

    #[test]
    fn method_json() {
        assert_eq!(serde_json::to_string(&Method::Modular(181)).unwrap(), "\"modular(181)\"");
        assert_eq!(serde_json::to_string(&Method::Exact).unwrap(), "\"exact\"");
    }

    #[test]
    fn quintic_hodge_numbers() {
        let b = betti_report(VarietyKind::HypersurfaceP4, 5, 96, 10, 0).unwrap();
        assert_eq!((b.small.b2, b.small.b3, b.small.e, b.h11, b.h21), (11, 32, -8, 11, Some(15)));
        assert_eq!(b.mixed, b.small);
    }

    #[test]
    fn octic_double_solid_hodge_numbers() {
        let b = betti_report(VarietyKind::DoubleSolidP3, 8, 144, 9, 0).unwrap();
        assert_eq!(b.b3_smooth, 300);
        assert_eq!((b.small.b2, b.small.b3, b.small.e, b.h11, b.h21), (10, 30, -8, 10, Some(14)));
    }

    #[test]
    fn inconsistent_inputs() {
        assert!(betti_report(VarietyKind::HypersurfaceP4, 3, 6, 7, 0).is_err());
        assert!(betti_report(VarietyKind::HypersurfaceP4, 3, 6, 2, 7).is_err());
        assert!(betti_report(VarietyKind::HypersurfaceP4, 3, 20, 0, 0).is_err());
    }
}
