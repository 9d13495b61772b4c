//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nodal::exactfield::Rational;
use nodal::reslattice::{IntersectionMatrix, SignVector};
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Is there a λ with Σ_i λ_i rows[i][j] ≥ 1 for every column j?
/// Decided by Fourier–Motzkin elimination of the λ_i.
pub fn fm_feasible(rows: &[Vec<Rational>]) -> bool {
    let k = rows.len();
    let s = rows.first().map_or(0, Vec::len);
    // constraint: coeffs · λ ≥ rhs
    let mut cons: Vec<(Vec<Rational>, Rational)> =
        (0..s).map(|j| ((0..k).map(|i| rows[i][j].clone()).collect(), Rational::one())).collect();
    let mut remaining: Vec<usize> = (0..k).collect();
    while !remaining.is_empty() {
        // eliminate the variable producing the fewest new constraints
        let (pos_idx, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = cons.iter().filter(|c| c.0[v].is_positive()).count();
                let n = cons.iter().filter(|c| c.0[v].is_negative()).count();
                p * n
            })
            .expect("nonempty");
        remaining.swap_remove(pos_idx);
        let mut next = BTreeSet::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for c in cons {
            if c.0[var].is_positive() {
                pos.push(c);
            } else if c.0[var].is_negative() {
                neg.push(c);
            } else {
                next.insert(c);
            }
        }
        for p in &pos {
            for n in &neg {
                let a = &p.0[var];
                let b = -&n.0[var];
                let coeffs: Vec<Rational> = p.0.iter().zip(&n.0).map(|(x, y)| x * &b + y * a).collect();
                let rhs = &p.1 * &b + &n.1 * a;
                next.insert((coeffs, rhs));
            }
        }
        cons = Vec::with_capacity(next.len());
        for (c, r) in next {
            if c.iter().all(Zero::is_zero) {
                if r.is_positive() {
                    return false;
                }
                continue;
            }
            cons.push(normalize(c, r));
        }
        cons.sort();
        cons.dedup();
    }
    true
}

fn normalize(c: Vec<Rational>, r: Rational) -> (Vec<Rational>, Rational) {
    let scale = c.iter().find(|x| !x.is_zero()).map(|x| x.abs()).expect("nonzero");
    (c.iter().map(|x| x / &scale).collect(), r / scale)
}

/// Number of sign flips ε for which `fm_feasible` holds on the flipped matrix.
pub fn fm_count(m: &IntersectionMatrix) -> u64 {
    let s = m.s();
    (0..1u64 << s)
        .filter(|&mask| {
            let eps = SignVector::from_mask(s, mask);
            let rows: Vec<Vec<Rational>> = m
                .rows()
                .iter()
                .map(|r| r.iter().zip(eps.entries()).map(|(x, &e)| if e < 0 { -x } else { x.clone() }).collect())
                .collect();
            fm_feasible(&rows)
        })
        .count() as u64
}

/// Regions of the central arrangement cut out by the columns, by
/// Zaslavsky's theorem: Σ over column subsets S of (-1)^(|S| - rank S).
/// Equals the number of projective flips when no column vanishes.
pub fn zaslavsky(m: &IntersectionMatrix) -> i64 {
    let cols: Vec<Vec<Rational>> = (0..m.s()).map(|j| m.rows().iter().map(|r| r[j].clone()).collect()).collect();
    fn walk(cols: &[Vec<Rational>], j: usize, basis: &mut Vec<Vec<Rational>>, size: usize) -> i64 {
        if j == cols.len() {
            return if (size - basis.len()) % 2 == 0 { 1 } else { -1 };
        }
        let skip = walk(cols, j + 1, basis, size);
        let reduced = reduce(basis, &cols[j]);
        let take = match reduced {
            Some(v) => {
                basis.push(v);
                let t = walk(cols, j + 1, basis, size + 1);
                basis.pop();
                t
            }
            None => walk(cols, j + 1, basis, size + 1),
        };
        skip + take
    }
    walk(&cols, 0, &mut Vec::new(), 0)
}

/// Reduces `v` against an echelon list; `None` if it lies in the span.
fn reduce(basis: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let mut v = v.to_vec();
    for b in basis {
        let p = b.iter().position(|x| !x.is_zero()).expect("basis vectors are nonzero");
        if !v[p].is_zero() {
            let f = &v[p] / &b[p];
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &f * y;
            }
        }
    }
    v.iter().any(|x| !x.is_zero()).then_some(v)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, k: usize, s: usize, bound: i64) -> IntersectionMatrix {
    let rows: Vec<Vec<Rational>> = (0..k).map(|_| (0..s).map(|_| q(rng.gen_range(-bound..=bound))).collect()).collect();
    IntersectionMatrix::new(rows, s, None).expect("well-formed")
}

/// All tuples in [1, d-1]^n whose sum S satisfies (n-2)d + 2 < 2S <= nd.
pub fn arnold_brute_force(n: u32, d: u32) -> u64 {
    fn rec(n: u32, d: u32, left: u32, sum: u32) -> u64 {
        if left == 0 {
            let two = 2 * sum;
            return u64::from(two > (n - 2) * d + 2 && two <= n * d);
        }
        (1..d).map(|k| rec(n, d, left - 1, sum + k)).sum()
    }
    if d < 2 {
        return 0;
    }
    rec(n, d, n, 0)
}
