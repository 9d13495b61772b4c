//! Exact arithmetic: Q, number fields Q[x]/(m), finite fields F_p[x]/(m̄)
//! and dense matrices over any of them.

mod field;
mod finite;
pub mod json;
mod matrix;
mod minpoly;
mod numfield;
mod upoly;

pub use field::Field;
pub use finite::{find_inert_prime, is_inert, is_prime, reduce_matrix, reduce_rational, FiniteField, FiniteFieldElement};
pub use matrix::{gaussian_rank, number_field_rank, rational_rank, ExactMatrix};
pub use minpoly::MinimalPolynomial;
pub use numfield::{field_arithmetic, FieldOp, NumberFieldElement};

pub type Rational = num_rational::BigRational;
