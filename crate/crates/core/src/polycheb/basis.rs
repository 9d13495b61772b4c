use num_bigint::BigUint;
use num_traits::One;

use super::Monomial;
use crate::exactfield::Field;

/// All monomials of one degree in `nvars` variables, descending lex order
/// (`x0^D` first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    degree: u32,
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: u32) -> Self {
        let mut monomials = Vec::new();
        if nvars > 0 {
            let mut cur = vec![0u32; nvars];
            fill(&mut cur, 0, degree, &mut monomials);
        }
        MonomialBasis { nvars, degree, monomials }
    }

    /// The basis of a negative degree: no monomials at all.
    pub fn empty(nvars: usize) -> Self {
        MonomialBasis { nvars, degree: 0, monomials: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// `binom(D + nvars - 1, nvars - 1)`.
    pub fn expected_size(nvars: usize, degree: u32) -> BigUint {
        if nvars == 0 {
            return BigUint::from(0u32);
        }
        binomial(degree as u64 + nvars as u64 - 1, nvars as u64 - 1)
    }

    /// Values of every basis monomial at `point`, sharing one power table.
    pub fn evaluate_all<F: Field>(&self, point: &[F]) -> Vec<F> {
        assert_eq!(point.len(), self.nvars, "point arity");
        if self.monomials.is_empty() {
            return Vec::new();
        }
        let powers: Vec<Vec<F>> = point
            .iter()
            .map(|x| {
                let mut row = Vec::with_capacity(self.degree as usize + 1);
                row.push(x.one_like());
                for e in 1..=self.degree as usize {
                    row.push(row[e - 1].mul(x));
                }
                row
            })
            .collect();
        self.monomials
            .iter()
            .map(|m| {
                let mut acc: Option<F> = None;
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let p = &powers[i][e as usize];
                    acc = Some(match acc {
                        None => p.clone(),
                        Some(a) => a.mul(p),
                    });
                }
                acc.unwrap_or_else(|| point[0].one_like())
            })
            .collect()
    }
}

fn fill(cur: &mut Vec<u32>, i: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if i == cur.len() - 1 {
        cur[i] = remaining;
        out.push(Monomial::new(cur.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        cur[i] = e;
        fill(cur, i + 1, remaining - e, out);
    }
    cur[i] = 0;
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
