use std::fmt;

use num_traits::{One, Zero};

use super::{matrix, ExactMatrix, Rational};
use crate::Result;

/// Arithmetic shared by Q, number fields and finite fields. Elements know
/// which field they live in, so `zero_like` and `one_like` take a template.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Sized {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn same_field(&self, other: &Self) -> bool;
    /// Embeds an integer into the field of `self`.
    fn from_i64_like(&self, n: i64) -> Self;

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Rank of a matrix over this field. Fields with a faster exact method
    /// override this.
    fn matrix_rank(m: &ExactMatrix<Self>) -> usize {
        matrix::gaussian_rank(m)
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(crate::Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn same_field(&self, _other: &Self) -> bool {
        true
    }
    fn from_i64_like(&self, n: i64) -> Self {
        Rational::from_integer(n.into())
    }

    fn matrix_rank(m: &ExactMatrix<Self>) -> usize {
        matrix::rational_rank(m)
    }
}
