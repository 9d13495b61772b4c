// Both feasibility oracles, with per-matrix data reused across sign flips.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::simplex::{feasible_int, IntRows};
use super::{relations, IntersectionMatrix, Projectivity, SignVector};
use crate::exactfield::{ExactMatrix, Rational};
use crate::{Error, Result};

pub(crate) struct Prepared<'a> {
    m: &'a IntersectionMatrix,
    m_int: Vec<Vec<BigInt>>,
    b_int: Vec<Vec<BigInt>>,
    small: Option<(Vec<Vec<i64>>, Vec<Vec<i64>>)>,
    // λ on `lead_rows` is v on `lead_cols` times `lead_inv`
    lead_rows: Vec<usize>,
    lead_cols: Vec<usize>,
    lead_inv: Vec<Vec<Rational>>,
}

fn clear(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| (q * &l).to_integer()).collect()
}

fn to_i64(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<i64>>> {
    rows.iter().map(|r| r.iter().map(ToPrimitive::to_i64).collect()).collect()
}

fn pivots(rows: Vec<Vec<Rational>>) -> Vec<usize> {
    if rows.is_empty() || rows[0].is_empty() {
        return Vec::new();
    }
    ExactMatrix::from_rows(rows).expect("rows have equal length").rref().expect("rational elimination cannot fail").1
}

fn inverse(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let r = a.len();
    if r == 0 {
        return Vec::new();
    }
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut x = row.clone();
            x.extend((0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            x
        })
        .collect();
    let (red, _) = ExactMatrix::from_rows(aug).expect("square").rref().expect("invertible minor");
    (0..r).map(|i| red.row(i)[r..].to_vec()).collect()
}

impl<'a> Prepared<'a> {
    pub(crate) fn new(m: &'a IntersectionMatrix) -> Self {
        let m_int: Vec<Vec<BigInt>> = m.rows().iter().map(|r| clear(r)).collect();
        let b_int: Vec<Vec<BigInt>> = relations(m).vectors.iter().map(|r| clear(r)).collect();
        let small = to_i64(&m_int).zip(to_i64(&b_int));
        let lead_cols = pivots(m.rows().to_vec());
        let transposed: Vec<Vec<Rational>> = (0..m.s()).map(|j| m.rows().iter().map(|r| r[j].clone()).collect()).collect();
        let lead_rows = pivots(transposed);
        let minor: Vec<Vec<Rational>> =
            lead_rows.iter().map(|&i| lead_cols.iter().map(|&j| m.rows()[i][j].clone()).collect()).collect();
        Prepared { m, m_int, b_int, small, lead_rows, lead_cols, lead_inv: inverse(&minor) }
    }

    // Flipped rows with a constant right-hand side, plus an optional row of
    // ones with right-hand side 1.
    fn flipped(&self, big: &[Vec<BigInt>], small: Option<&[Vec<i64>]>, eps: &[i8], rhs: &[i64], ones: bool) -> IntRows {
        let s = eps.len();
        match small {
            Some(rows) => {
                let mut out: Vec<Vec<i64>> = rows
                    .iter()
                    .zip(rhs)
                    .map(|(r, &c)| r.iter().zip(eps).map(|(&x, &e)| x * i64::from(e)).chain([c]).collect())
                    .collect();
                if ones {
                    out.push(vec![1; s + 1]);
                }
                IntRows::Narrow(out)
            }
            None => {
                let mut out: Vec<Vec<BigInt>> = big
                    .iter()
                    .zip(rhs)
                    .map(|(r, &c)| r.iter().zip(eps).map(|(x, &e)| if e < 0 { -x } else { x.clone() }).chain([c.into()]).collect())
                    .collect();
                if ones {
                    out.push(vec![BigInt::one(); s + 1]);
                }
                IntRows::Big(out)
            }
        }
    }

    /// λ with every entry of λᵀ M_ε at least 1.
    pub(crate) fn primal(&self, eps: &SignVector) -> Option<Vec<Rational>> {
        let eps = eps.entries();
        let s = eps.len();
        // v = 1 + u lies in the row space iff B_ε u = −B_ε 1
        let small = self.small.as_ref().and_then(|(_, b)| {
            let rhs = b
                .iter()
                .map(|r| r.iter().zip(eps).try_fold(0i64, |acc, (&x, &e)| acc.checked_sub(x * i64::from(e))))
                .collect::<Option<Vec<i64>>>()?;
            Some(self.flipped(&self.b_int, Some(b), eps, &rhs, false))
        });
        let rows = small.unwrap_or_else(|| {
            IntRows::Big(
                self.b_int
                    .iter()
                    .map(|r| {
                        let flipped: Vec<BigInt> = r.iter().zip(eps).map(|(x, &e)| if e < 0 { -x } else { x.clone() }).collect();
                        let rhs: BigInt = -flipped.iter().sum::<BigInt>();
                        flipped.into_iter().chain([rhs]).collect()
                    })
                    .collect(),
            )
        });
        let u = feasible_int(rows, s)?;
        let mut lambda = vec![Rational::zero(); self.m.k()];
        for (a, &i) in self.lead_rows.iter().enumerate() {
            let mut acc = Rational::zero();
            for (b, &j) in self.lead_cols.iter().enumerate() {
                let v = &u[j] + Rational::one();
                let v = if eps[j] < 0 { -v } else { v };
                acc += v * &self.lead_inv[b][a];
            }
            lambda[i] = acc;
        }
        Some(lambda)
    }

    /// y >= 0 summing to 1 with M_ε y = 0.
    pub(crate) fn dual(&self, eps: &SignVector) -> Option<Vec<Rational>> {
        let eps = eps.entries();
        if eps.is_empty() {
            return None;
        }
        let small = self.small.as_ref().map(|(m, _)| m.as_slice());
        let zeros = vec![0; self.m_int.len()];
        feasible_int(self.flipped(&self.m_int, small, eps, &zeros, true), eps.len())
    }

    /// Runs both oracles on the flip by `eps` and checks the certificate.
    pub(crate) fn decide(&self, eps: &SignVector) -> Result<Projectivity> {
        if eps.len() != self.m.s() {
            return Err(Error::Dimension(format!("sign vector of length {} for {} columns", eps.len(), self.m.s())));
        }
        let e = eps.entries();
        match (self.primal(eps), self.dual(eps)) {
            (Some(lambda), None) => {
                let mut vector = self.m.combine(&lambda);
                for (x, &sign) in vector.iter_mut().zip(e) {
                    if sign < 0 {
                        *x = -&*x;
                    }
                }
                if vector.iter().any(|v| v < &Rational::one()) {
                    return Err(Error::DualityViolation("primal certificate is not strictly positive".into()));
                }
                Ok(Projectivity::Projective { lambda, vector })
            }
            (None, Some(relation)) => {
                let signed: Vec<Rational> = relation.iter().zip(e).map(|(y, &sign)| if sign < 0 { -y } else { y.clone() }).collect();
                if relation.iter().any(Signed::is_negative) || self.m.apply(&signed).iter().any(|x| !x.is_zero()) {
                    return Err(Error::DualityViolation("dual certificate is not a nonnegative relation".into()));
                }
                Ok(Projectivity::Blocked { relation })
            }
            (Some(_), Some(_)) => Err(Error::DualityViolation("both oracles succeeded".into())),
            (None, None) => Err(Error::DualityViolation("both oracles failed".into())),
        }
    }
}
