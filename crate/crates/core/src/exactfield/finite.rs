use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::upoly::{self, invmod, mulmod, powmod};
use super::{ExactMatrix, Field, MinimalPolynomial, NumberFieldElement, Rational};
use crate::{Error, Result};

/// F_p[x]/(m̄) for an odd prime `p` at which `m̄` stays irreducible.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u64,
    modulus: Vec<u64>,
}

impl FiniteField {
    /// Checks inertness before building the field.
    pub fn new(minpoly: &MinimalPolynomial, p: u64) -> Result<Arc<Self>> {
        if !is_inert(minpoly, p)? {
            return Err(Error::UnsuitablePrime { p, reason: format!("{minpoly} splits modulo {p}") });
        }
        Ok(Arc::new(FiniteField { p, modulus: minpoly.reduce_mod(p) }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> BigInt {
        BigInt::from(self.p).pow(self.degree() as u32)
    }
}

#[derive(Clone, Debug)]
pub struct FiniteFieldElement {
    field: Arc<FiniteField>,
    coeffs: Vec<u64>,
}

impl PartialEq for FiniteFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl FiniteFieldElement {
    pub fn new(field: &Arc<FiniteField>, coeffs: Vec<u64>) -> Self {
        let p = field.p;
        let mut c: Vec<u64> = coeffs.into_iter().map(|x| x % p).collect();
        upoly::trim(&mut c);
        let mut c = upoly::fp_rem(&c, &field.modulus, p);
        c.resize(field.degree(), 0);
        FiniteFieldElement { field: field.clone(), coeffs: c }
    }

    pub fn from_u64(field: &Arc<FiniteField>, n: u64) -> Self {
        Self::new(field, vec![n])
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Reduction of an element of Z_(p)[α]. Fails when `p` divides a
    /// coefficient denominator.
    pub fn reduce(x: &NumberFieldElement, field: &Arc<FiniteField>) -> Result<Self> {
        let coeffs = x
            .coeffs()
            .iter()
            .map(|c| reduce_rational(c, field.p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(field, coeffs))
    }

    fn trimmed(&self) -> Vec<u64> {
        let mut c = self.coeffs.clone();
        upoly::trim(&mut c);
        c
    }
}

pub fn reduce_rational(q: &Rational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let d = q.denom().mod_floor(&pb).to_u64().unwrap();
    if d == 0 {
        return Err(Error::PrimeDividesDenominator(p));
    }
    let n = q.numer().mod_floor(&pb).to_u64().unwrap();
    Ok(mulmod(n, invmod(d, p), p))
}

impl Field for FiniteFieldElement {
    fn zero_like(&self) -> Self {
        Self::from_u64(&self.field, 0)
    }
    fn one_like(&self) -> Self {
        Self::from_u64(&self.field, 1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
    fn add(&self, rhs: &Self) -> Self {
        assert!(self.same_field(rhs), "finite field mismatch");
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + b) % p).collect();
        FiniteFieldElement { field: self.field.clone(), coeffs }
    }
    fn sub(&self, rhs: &Self) -> Self {
        assert!(self.same_field(rhs), "finite field mismatch");
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| (a + p - b) % p).collect();
        FiniteFieldElement { field: self.field.clone(), coeffs }
    }
    fn mul(&self, rhs: &Self) -> Self {
        assert!(self.same_field(rhs), "finite field mismatch");
        let p = self.field.p;
        let prod = upoly::fp_mul(&self.trimmed(), &rhs.trimmed(), p);
        let mut c = upoly::fp_rem(&prod, &self.field.modulus, p);
        c.resize(self.field.degree(), 0);
        FiniteFieldElement { field: self.field.clone(), coeffs: c }
    }
    fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FiniteFieldElement { field: self.field.clone(), coeffs }
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p;
        let (g, s) = upoly::fp_ext_gcd(&self.trimmed(), &self.field.modulus, p);
        if g.len() != 1 {
            return Err(Error::UnsuitablePrime { p, reason: "residue ring is not a field".into() });
        }
        Ok(Self::new(&self.field, s))
    }
    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }
    fn from_i64_like(&self, n: i64) -> Self {
        let p = self.field.p as i64;
        Self::from_u64(&self.field, n.rem_euclid(p) as u64)
    }
}

impl fmt::Display for FiniteFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}*a"),
                _ => format!("{c}*a^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0 (mod {})", self.field.p)
        } else {
            write!(f, "{} (mod {})", parts.join(" + "), self.field.p)
        }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Whether `m` stays irreducible modulo `p`. Rejects 2, composites and
/// primes where `m̄` acquires a repeated factor.
pub fn is_inert(m: &MinimalPolynomial, p: u64) -> Result<bool> {
    if p == 2 {
        return Err(Error::UnsuitablePrime { p, reason: "2 is excluded".into() });
    }
    if !is_prime(p) {
        return Err(Error::UnsuitablePrime { p, reason: "not prime".into() });
    }
    let mbar = m.reduce_mod(p);
    if upoly::fp_gcd(&mbar, &upoly::fp_derivative(&mbar, p), p).len() != 1 {
        return Err(Error::UnsuitablePrime { p, reason: format!("{p} divides the discriminant of {m}") });
    }
    let k = m.degree();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=k / 2 {
        h = upoly::fp_powmod_poly(&h, p, &mbar, p);
        let diff = upoly::fp_sub(&h, &x, p);
        if upoly::fp_gcd(&diff, &mbar, p).len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest inert prime in `[start, cap]`, skipping unsuitable ones.
pub fn find_inert_prime(m: &MinimalPolynomial, start: u64, cap: u64) -> Result<u64> {
    for p in start.max(3)..=cap {
        if !is_prime(p) {
            continue;
        }
        match is_inert(m, p) {
            Ok(true) => return Ok(p),
            Ok(false) | Err(Error::UnsuitablePrime { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoInertPrime { start, cap })
}

/// Entrywise reduction of a matrix over Z_(p)[α].
pub fn reduce_matrix(m: &ExactMatrix<NumberFieldElement>, field: &Arc<FiniteField>) -> Result<ExactMatrix<FiniteFieldElement>> {
    let entries = m
        .entries()
        .iter()
        .map(|x| FiniteFieldElement::reduce(x, field))
        .collect::<Result<Vec<_>>>()?;
    ExactMatrix::new(m.nrows(), m.ncols(), entries)
}
