use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{upoly, Field, MinimalPolynomial, Rational};
use crate::{Error, Result};

/// Element `Σ c_i α^i` of Q[x]/(m), stored in the power basis. The
/// coefficient vector always has length `deg m`.
#[derive(Clone, Debug)]
pub struct NumberFieldElement {
    minpoly: Arc<MinimalPolynomial>,
    coeffs: Vec<Rational>,
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl Eq for NumberFieldElement {}

impl NumberFieldElement {
    /// Builds an element from power-basis coefficients; longer inputs are
    /// reduced modulo the minimal polynomial.
    pub fn new(minpoly: Arc<MinimalPolynomial>, coeffs: Vec<Rational>) -> Self {
        let k = minpoly.degree();
        let coeffs = if coeffs.len() <= k {
            let mut c = coeffs;
            c.resize(k, Rational::zero());
            c
        } else {
            reduce(&minpoly, coeffs)
        };
        NumberFieldElement { minpoly, coeffs }
    }

    pub fn from_rational(minpoly: &Arc<MinimalPolynomial>, q: Rational) -> Self {
        Self::new(minpoly.clone(), vec![q])
    }

    pub fn from_int(minpoly: &Arc<MinimalPolynomial>, n: i64) -> Self {
        Self::from_rational(minpoly, Rational::from_integer(n.into()))
    }

    pub fn zero(minpoly: &Arc<MinimalPolynomial>) -> Self {
        Self::new(minpoly.clone(), Vec::new())
    }

    pub fn one(minpoly: &Arc<MinimalPolynomial>) -> Self {
        Self::from_int(minpoly, 1)
    }

    /// The class of `x`. In Q this is 0, the root of `x`.
    pub fn generator(minpoly: &Arc<MinimalPolynomial>) -> Self {
        Self::new(minpoly.clone(), vec![Rational::zero(), Rational::one()])
    }

    pub fn minpoly(&self) -> &Arc<MinimalPolynomial> {
        &self.minpoly
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        NumberFieldElement {
            minpoly: self.minpoly.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Integer coefficients when the element lies in Z[α].
    pub fn integral_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect()
    }

    fn check(&self, other: &Self) {
        assert!(self.same_field(other), "number field mismatch: {} vs {}", self.minpoly, other.minpoly);
    }

    fn add_impl(&self, rhs: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        NumberFieldElement { minpoly: self.minpoly.clone(), coeffs }
    }

    fn sub_impl(&self, rhs: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        NumberFieldElement { minpoly: self.minpoly.clone(), coeffs }
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        let k = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * k - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    prod[i + j] += a * b;
                }
            }
        }
        NumberFieldElement { minpoly: self.minpoly.clone(), coeffs: reduce(&self.minpoly, prod) }
    }

    fn inv_impl(&self) -> Result<Self> {
        if Field::is_zero(self) {
            return Err(Error::DivisionByZero);
        }
        let m = upoly::q_from_int(self.minpoly.coeffs());
        let mut a = self.coeffs.clone();
        upoly::trim(&mut a);
        let (g, s) = upoly::q_ext_gcd(&a, &m);
        if g.len() != 1 {
            return Err(Error::CatalogData(format!(
                "{} is reducible: inversion met a common factor of degree {}",
                self.minpoly,
                g.len() - 1
            )));
        }
        Ok(NumberFieldElement::new(self.minpoly.clone(), s))
    }
}

// Folds x^i for i >= k back using x^k = -Σ m_j x^j.
fn reduce(minpoly: &MinimalPolynomial, mut c: Vec<Rational>) -> Vec<Rational> {
    let m = minpoly.coeffs();
    let k = minpoly.degree();
    for i in (k..c.len()).rev() {
        if Zero::is_zero(&c[i]) {
            continue;
        }
        let top = std::mem::replace(&mut c[i], Rational::zero());
        for (j, mj) in m.iter().enumerate().take(k) {
            if !mj.is_zero() {
                c[i - k + j] -= &top * mj;
            }
        }
    }
    c.truncate(k);
    c.resize(k, Rational::zero());
    c
}

impl Field for NumberFieldElement {
    fn zero_like(&self) -> Self {
        Self::zero(&self.minpoly)
    }
    fn one_like(&self) -> Self {
        Self::one(&self.minpoly)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check(rhs);
        self.add_impl(rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.check(rhs);
        self.sub_impl(rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check(rhs);
        self.mul_impl(rhs)
    }
    fn neg(&self) -> Self {
        NumberFieldElement { minpoly: self.minpoly.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    fn inv(&self) -> Result<Self> {
        self.inv_impl()
    }
    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.minpoly, &other.minpoly) || self.minpoly == other.minpoly
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Self::from_int(&self.minpoly, n)
    }

    fn matrix_rank(m: &super::ExactMatrix<Self>) -> usize {
        super::matrix::number_field_rank(m)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&NumberFieldElement> for &NumberFieldElement {
            type Output = NumberFieldElement;
            fn $method(self, rhs: &NumberFieldElement) -> NumberFieldElement {
                self.check(rhs);
                self.$imp(rhs)
            }
        }
        impl $tr for NumberFieldElement {
            type Output = NumberFieldElement;
            fn $method(self, rhs: NumberFieldElement) -> NumberFieldElement {
                $tr::$method(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);

impl Neg for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn neg(self) -> NumberFieldElement {
        Field::neg(self)
    }
}

impl Neg for NumberFieldElement {
    type Output = NumberFieldElement;
    fn neg(self) -> NumberFieldElement {
        Field::neg(&self)
    }
}

/// The four operations exposed to callers that want errors instead of
/// panics on mismatched operands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arithmetic(a: &NumberFieldElement, b: &NumberFieldElement, op: FieldOp) -> Result<NumberFieldElement> {
    if !a.same_field(b) {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        FieldOp::Add => a.add_impl(b),
        FieldOp::Sub => a.sub_impl(b),
        FieldOp::Mul => a.mul_impl(b),
        FieldOp::Div => a.mul_impl(&b.inv_impl()?),
    })
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !One::is_one(&mag) {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "a")?;
                    } else {
                        write!(f, "a^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(c: &[i64]) -> Arc<MinimalPolynomial> {
        Arc::new(MinimalPolynomial::from_i64(c).unwrap())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let k = field(&[-2, 0, 1]);
        let a = NumberFieldElement::generator(&k);
        assert_eq!(&a * &a, NumberFieldElement::from_int(&k, 2));
    }

    #[test]
    fn inverse_in_octic_cosine_field() {
        let k = field(&[2, 0, -4, 0, 1]);
        let a = NumberFieldElement::generator(&k);
        let x = &a + &NumberFieldElement::from_rational(&k, q(3, 7));
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        let k = field(&[-5, 0, 1]);
        assert!(matches!(NumberFieldElement::zero(&k).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = NumberFieldElement::one(&field(&[-2, 0, 1]));
        let b = NumberFieldElement::one(&field(&[-3, 0, 1]));
        assert!(matches!(field_arithmetic(&a, &b, FieldOp::Add), Err(Error::FieldMismatch)));
    }

    #[test]
    #[should_panic]
    fn mismatch_panics_in_operator() {
        let a = NumberFieldElement::one(&field(&[-2, 0, 1]));
        let b = NumberFieldElement::one(&field(&[-3, 0, 1]));
        let _ = &a + &b;
    }

    #[test]
    fn fifth_root_of_unity() {
        let k = field(&[1, 1, 1, 1, 1]);
        let z = NumberFieldElement::generator(&k);
        assert!(z.pow(5).is_one());
        assert!(!z.pow(1).is_one());
    }

    #[test]
    fn display() {
        let k = field(&[-2, 0, 1]);
        let x = NumberFieldElement::new(k, vec![q(-1, 2), q(3, 1)]);
        assert_eq!(x.to_string(), "-1/2 + 3*a");
    }
}
