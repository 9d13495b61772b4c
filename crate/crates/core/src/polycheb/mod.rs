//! Sparse multivariate polynomials, monomial bases and Chebyshev identities.

mod basis;
mod chebyshev;
pub mod json;
mod poly;

pub use basis::{binomial, MonomialBasis};
pub use chebyshev::{
    cheb_half, cheb_sum_factors, cheb_sum_factors_in, chebyshev, evaluate_rational, ChebFactorization, CosineField, Sign,
};
pub use poly::{Monomial, SparsePolynomial};
