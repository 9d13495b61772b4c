use serde::Serialize;

use super::{Chart, NodalVariety, Node};
use crate::exactfield::{ExactMatrix, Field, NumberFieldElement};
use crate::polycheb::SparsePolynomial;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeStatus {
    Ok,
    NotOnVariety,
    NotSingular,
    /// Singular, but the Hessian is degenerate: not an ordinary double point.
    Degenerate,
}

/// Affine equation, gradient and Hessian, computed once per chart.
pub struct NodeChecker {
    charts: Vec<Option<ChartData>>,
    chart: Chart,
}

struct ChartData {
    f: SparsePolynomial<NumberFieldElement>,
    grad: Vec<SparsePolynomial<NumberFieldElement>>,
    hess: Vec<Vec<SparsePolynomial<NumberFieldElement>>>,
}

impl ChartData {
    fn new(f: SparsePolynomial<NumberFieldElement>) -> Self {
        let grad = f.gradient();
        let hess = grad.iter().map(|g| g.gradient()).collect();
        ChartData { f, grad, hess }
    }
}

impl NodeChecker {
    pub fn new(v: &NodalVariety) -> Self {
        match v.chart {
            Chart::Affine => NodeChecker { charts: vec![Some(ChartData::new(v.defining.clone()))], chart: Chart::Affine },
            Chart::Projective => NodeChecker {
                charts: (0..v.defining.nvars()).map(|_| None).collect(),
                chart: Chart::Projective,
            },
        }
    }

    pub fn check(&mut self, v: &NodalVariety, p: &Node, nondegenerate: bool) -> Result<NodeStatus> {
        let (idx, point) = match self.chart {
            Chart::Affine => {
                if p.coords.len() != v.defining.nvars() {
                    return Err(Error::Dimension(format!("node has {} coordinates, chart has {}", p.coords.len(), v.defining.nvars())));
                }
                (0, p.coords.clone())
            }
            Chart::Projective => {
                if p.coords.len() != v.defining.nvars() {
                    return Err(Error::Dimension(format!("node has {} coordinates, P^{} needs {}", p.coords.len(), v.defining.nvars() - 1, v.defining.nvars())));
                }
                let Some(i) = p.coords.iter().position(|x| !x.is_zero()) else {
                    return Err(Error::Invalid("all homogeneous coordinates vanish".into()));
                };
                let inv = p.coords[i].inv()?;
                let pt: Vec<NumberFieldElement> =
                    p.coords.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.mul(&inv)).collect();
                if self.charts[i].is_none() {
                    self.charts[i] = Some(ChartData::new(v.defining.dehomogenize(i)));
                }
                (i, pt)
            }
        };
        let data = self.charts[idx].as_ref().expect("chart prepared");
        if let Some(first) = point.first() {
            if first.minpoly().as_ref() != v.field.as_ref() {
                return Err(Error::FieldMismatch);
            }
        }
        if !data.f.evaluate(&point)?.is_zero() {
            return Ok(NodeStatus::NotOnVariety);
        }
        for g in &data.grad {
            if !g.evaluate(&point)?.is_zero() {
                return Ok(NodeStatus::NotSingular);
            }
        }
        if nondegenerate {
            let rows = data
                .hess
                .iter()
                .map(|row| row.iter().map(|h| h.evaluate(&point)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let det = ExactMatrix::from_rows(rows)?.determinant()?;
            if det.is_zero() {
                return Ok(NodeStatus::Degenerate);
            }
        }
        Ok(NodeStatus::Ok)
    }
}

/// Exact check that `F(P) = 0` and `∇F(P) = 0`, plus `det Hess(P) != 0` when
/// `nondegenerate` is set. Projective nodes are checked in the chart of
/// their first nonzero coordinate.
pub fn verify_node(v: &NodalVariety, p: &Node, nondegenerate: bool) -> Result<NodeStatus> {
    NodeChecker::new(v).check(v, p, nondegenerate)
}

/// Checks every node, stopping at the first failure.
pub fn verify_all(v: &NodalVariety, nodes: &[Node], nondegenerate: bool) -> Result<Option<(usize, NodeStatus)>> {
    let mut checker = NodeChecker::new(v);
    for (i, p) in nodes.iter().enumerate() {
        let st = checker.check(v, p, nondegenerate)?;
        if st != NodeStatus::Ok {
            return Ok(Some((i, st)));
        }
    }
    Ok(None)
}
