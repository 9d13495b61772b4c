use num_bigint::BigUint;
use num_traits::Zero;

use super::{chmutov_variety, NodalVariety, SignPattern, VarietyKind};
use crate::exactfield::NumberFieldElement;
use crate::polycheb::Sign;
use crate::{Error, Result};

/// A node given by coordinates in the variety's chart; Chmutov nodes also
/// carry their index tuple `(k_1, ..., k_m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub coords: Vec<NumberFieldElement>,
    pub indices: Option<Vec<u32>>,
}

impl Node {
    pub fn new(coords: Vec<NumberFieldElement>) -> Self {
        Node { coords, indices: None }
    }

    /// `e`/`o` per coordinate index.
    pub fn parity(&self) -> Option<String> {
        self.indices
            .as_ref()
            .map(|ks| ks.iter().map(|k| if k % 2 == 0 { 'e' } else { 'o' }).collect())
    }

    /// Sign of each coordinate `cos(kπ/n)`: `+`, `0` or `-`.
    pub fn sign_label(&self, n: u32) -> Option<String> {
        self.indices.as_ref().map(|ks| {
            ks.iter()
                .map(|&k| match (2 * k).cmp(&n) {
                    std::cmp::Ordering::Less => '+',
                    std::cmp::Ordering::Equal => '0',
                    std::cmp::Ordering::Greater => '-',
                })
                .collect()
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct NodeSet {
    pub nodes: Vec<Node>,
}

impl NodeSet {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Node> {
        self.nodes.iter()
    }

    /// Labels for the exceptional curves: sign labels for Chmutov nodes,
    /// `P1, P2, ...` otherwise.
    pub fn labels(&self, v: &NodalVariety) -> Vec<String> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, p)| match (v.cosine_field(), p.sign_label(v.degree)) {
                (Some(_), Some(l)) => l,
                _ => format!("P{}", i + 1),
            })
            .collect()
    }
}

fn constant_value(signs: &SignPattern) -> i64 {
    signs.constant.map_or(0, Sign::value)
}

/// All index tuples in `[1, n-1]^m`, lexicographic, whose signed values
/// `β_j (-1)^{k_j}` plus the constant sum to zero.
pub fn enumerate_nodes(v: &NodalVariety) -> Result<NodeSet> {
    let (Some(signs), Some(field)) = (v.signs.as_ref(), v.cosine_field()) else {
        return Err(Error::Invalid(format!("{} is not a Chmutov variety", v.name)));
    };
    let n = v.degree;
    let m = signs.beta.len();
    let alphas: Vec<NumberFieldElement> = (0..n).map(|k| field.cos(k)).collect();
    let c0 = constant_value(signs);
    let mut nodes = Vec::new();
    let mut k = vec![1u32; m];
    loop {
        let total: i64 = signs
            .beta
            .iter()
            .zip(&k)
            .map(|(s, &kj)| s.value() * if kj % 2 == 0 { 1 } else { -1 })
            .sum::<i64>()
            + c0;
        if total == 0 {
            nodes.push(Node { coords: k.iter().map(|&kj| alphas[kj as usize].clone()).collect(), indices: Some(k.clone()) });
        }
        // advance the odometer, last coordinate fastest
        let mut j = m;
        loop {
            if j == 0 {
                return Ok(NodeSet { nodes });
            }
            j -= 1;
            if k[j] + 1 < n {
                k[j] += 1;
                for kk in k.iter_mut().skip(j + 1) {
                    *kk = 1;
                }
                break;
            }
        }
    }
}

/// Closed-form node count: the coefficient of `t^P` in
/// `Π_j (minus_j + plus_j t)` with `P = (m - β_0)/2`.
pub fn node_count_formula(kind: VarietyKind, n: u32, signs: &SignPattern) -> Result<BigUint> {
    if signs.beta.len() != kind.affine_vars() {
        return Err(Error::Invalid(format!("{kind} needs {} signs", kind.affine_vars())));
    }
    if n < 2 {
        return Err(Error::Invalid(format!("degree {n} has no critical points")));
    }
    let even = u64::from((n - 1) / 2);
    let odd = u64::from(n / 2);
    let m = signs.beta.len() as i64;
    let twice_p = m - constant_value(signs);
    if twice_p < 0 || twice_p % 2 == 1 {
        return Ok(BigUint::zero());
    }
    let p = (twice_p / 2) as usize;
    let mut poly = vec![BigUint::from(1u32)];
    for s in &signs.beta {
        let (plus, minus) = match s {
            Sign::Plus => (even, odd),
            Sign::Minus => (odd, even),
        };
        let mut next = vec![BigUint::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c * minus;
            next[i + 1] += c * plus;
        }
        poly = next;
    }
    Ok(poly.get(p).cloned().unwrap_or_default())
}

/// Convenience: the variety and its enumerated nodes.
pub fn chmutov_nodes(kind: VarietyKind, n: u32, signs: &SignPattern) -> Result<(NodalVariety, NodeSet)> {
    let v = chmutov_variety(kind, n, signs)?;
    let nodes = enumerate_nodes(&v)?;
    Ok((v, nodes))
}
