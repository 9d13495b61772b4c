use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly;
use crate::{Error, Result};

/// Monic irreducible integer polynomial `c0 + c1 x + ... + x^k` defining a
/// number field. Degree one (`x`) stands for Q itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinimalPolynomial {
    coeffs: Vec<BigInt>,
}

impl MinimalPolynomial {
    /// Validates monicity, squarefreeness and the absence of rational roots.
    /// Full irreducibility for degree four and up is checked by the number
    /// field itself when an inversion fails.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        let mut coeffs = coeffs;
        upoly::trim(&mut coeffs);
        if coeffs.len() < 2 {
            return Err(Error::InvalidMinimalPolynomial("degree must be at least 1".into()));
        }
        if !coeffs.last().unwrap().is_one() {
            return Err(Error::InvalidMinimalPolynomial("leading coefficient must be 1".into()));
        }
        let mp = MinimalPolynomial { coeffs };
        let k = mp.degree();
        if k > 1 {
            if let Some(r) = mp.integer_root() {
                return Err(Error::InvalidMinimalPolynomial(format!("{mp} has the rational root {r}")));
            }
            let q = upoly::q_from_int(&mp.coeffs);
            let (g, _) = upoly::q_ext_gcd(&q, &upoly::q_derivative(&q));
            if g.len() > 1 {
                return Err(Error::InvalidMinimalPolynomial(format!("{mp} is not squarefree")));
            }
            if k <= 3 {
                // no rational root means irreducible in degree 2 and 3
            } else if let Some(f) = mp.quadratic_factor() {
                return Err(Error::InvalidMinimalPolynomial(format!("{mp} has the factor {f}")));
            }
        }
        Ok(mp)
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The polynomial `x`, whose field is Q.
    pub fn rational() -> Self {
        MinimalPolynomial { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        let mut out: Vec<u64> = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect();
        upoly::trim(&mut out);
        out
    }

    fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    fn integer_root(&self) -> Option<BigInt> {
        let c0 = self.coeffs[0].abs();
        if c0.is_zero() {
            return Some(BigInt::zero());
        }
        for d in divisors(&c0) {
            for cand in [d.clone(), -d] {
                if self.eval_int(&cand).is_zero() {
                    return Some(cand);
                }
            }
        }
        None
    }

    // Quartic without rational roots: look for a monic quadratic factor
    // x^2 + a x + b with b | c0 and |a| bounded by the coefficients.
    fn quadratic_factor(&self) -> Option<String> {
        if self.degree() != 4 {
            return None;
        }
        let c0 = self.coeffs[0].abs();
        let bound: i64 = self.coeffs.iter().map(|c| c.abs().to_i64().unwrap_or(i64::MAX / 4)).max().unwrap_or(1);
        let q = upoly::q_from_int(&self.coeffs);
        for b in divisors(&c0) {
            for b in [b.clone(), -b] {
                for a in -2 * bound - 2..=2 * bound + 2 {
                    let f = upoly::q_from_int(&[b.clone(), BigInt::from(a), BigInt::one()]);
                    let (_, r) = upoly::q_divrem(&q, &f);
                    if r.is_empty() {
                        return Some(format!("x^2 + ({a})x + ({b})"));
                    }
                }
            }
        }
        None
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
