use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, SparsePolynomial};
use crate::exactfield::{Field, MinimalPolynomial, NumberFieldElement, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    /// Parses a string of `+`/`-` characters.
    pub fn parse_all(s: &str) -> Result<Vec<Sign>> {
        s.chars().map(|c| Sign::from_str(&c.to_string())).collect()
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "+1" | "1" | "plus" => Ok(Sign::Plus),
            "-" | "-1" | "minus" => Ok(Sign::Minus),
            other => Err(Error::Parse(format!("expected a sign, got `{other}`"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

fn int_coeffs(n: u32) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn univariate(coeffs: &[Rational]) -> SparsePolynomial<Rational> {
    SparsePolynomial::from_terms(
        1,
        coeffs.iter().enumerate().map(|(i, c)| (Monomial::new(vec![i as u32]), c.clone())),
    )
}

fn dense(p: &SparsePolynomial<Rational>) -> Vec<Rational> {
    let d = p.degree().unwrap_or(0) as usize;
    let mut out = vec![Rational::zero(); d + 1];
    for (m, c) in p.terms() {
        out[m.exponents()[0] as usize] = c.clone();
    }
    out
}

/// Chebyshev polynomial of the first kind, from the three-term recurrence.
pub fn chebyshev(n: u32) -> SparsePolynomial<Rational> {
    let c: Vec<Rational> = int_coeffs(n).into_iter().map(Rational::from_integer).collect();
    univariate(&c)
}

/// The monic `F_n` of degree `n/2` with `T_n + 1 = 2^(n-1) F_n^2`, taken as
/// the exact polynomial square root and then checked by expansion.
pub fn cheb_half(n: u32) -> Result<SparsePolynomial<Rational>> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Invalid(format!("F_n needs an even n >= 2, got {n}")));
    }
    let scale = Rational::from_integer(BigInt::one() << (n - 1));
    let target = chebyshev(n).add(&SparsePolynomial::constant(1, Rational::one()));
    let g = dense(&target.scale(&scale.recip()));
    let h = (n / 2) as usize;
    let mut f = vec![Rational::zero(); h + 1];
    f[h] = Rational::one();
    for j in (0..h).rev() {
        let mut acc = g[h + j].clone();
        for i in j + 1..h {
            let l = h + j - i;
            if l > j && l < h {
                acc -= &f[i] * &f[l];
            }
        }
        f[j] = acc / Rational::from_integer(2.into());
    }
    let fp = univariate(&f);
    let residual = target.sub(&fp.mul(&fp).scale(&scale));
    if !residual.is_zero() {
        return Err(Error::Invalid(format!("T_{n} + 1 is not 2^{} times a square", n - 1)));
    }
    Ok(fp)
}

/// Exact home for `cos(kπ/n)`: a number field and `c = cos(π/n)` inside it.
/// Then `cos(kπ/n) = T_k(c)`.
#[derive(Clone, Debug)]
pub struct CosineField {
    n: u32,
    minpoly: Arc<MinimalPolynomial>,
    c: NumberFieldElement,
}

impl CosineField {
    pub const SUPPORTED: [u32; 6] = [2, 3, 4, 5, 6, 8];

    pub fn for_degree(n: u32) -> Result<Self> {
        let q = |a: i64, b: i64| Rational::new(a.into(), b.into());
        let (mp, c): (&[i64], Vec<Rational>) = match n {
            2 => (&[0, 1], vec![q(0, 1)]),
            3 => (&[0, 1], vec![q(1, 2)]),
            4 => (&[-2, 0, 1], vec![q(0, 1), q(1, 2)]),
            5 => (&[-5, 0, 1], vec![q(1, 4), q(1, 4)]),
            6 => (&[-3, 0, 1], vec![q(0, 1), q(1, 2)]),
            8 => (&[2, 0, -4, 0, 1], vec![q(0, 1), q(1, 2)]),
            _ => return Err(Error::UnsupportedDegree { n, supported: Self::SUPPORTED.to_vec() }),
        };
        let minpoly = Arc::new(MinimalPolynomial::from_i64(mp)?);
        let c = NumberFieldElement::new(minpoly.clone(), c);
        Self::custom(n, minpoly, c)
    }

    /// A user-supplied field for other `n`; `c` must satisfy `T_n(c) = -1`
    /// and `T_k(c) != -1` for `0 < k < n`.
    pub fn custom(n: u32, minpoly: Arc<MinimalPolynomial>, c: NumberFieldElement) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("cosine field needs n >= 2, got {n}")));
        }
        if c.minpoly().as_ref() != minpoly.as_ref() {
            return Err(Error::FieldMismatch);
        }
        let field = CosineField { n, minpoly, c };
        let minus_one = field.one().neg();
        if field.cos(n) != minus_one {
            return Err(Error::Invalid(format!("T_{n}(c) != -1, so c is not cos(pi/{n})")));
        }
        if let Some(k) = (1..n).find(|&k| field.cos(k) == minus_one) {
            return Err(Error::Invalid(format!("T_{k}(c) = -1 already, so c is not cos(pi/{n})")));
        }
        Ok(field)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn minpoly(&self) -> &Arc<MinimalPolynomial> {
        &self.minpoly
    }

    pub fn one(&self) -> NumberFieldElement {
        NumberFieldElement::one(&self.minpoly)
    }

    pub fn element(&self, q: Rational) -> NumberFieldElement {
        NumberFieldElement::from_rational(&self.minpoly, q)
    }

    /// `cos(kπ/n)` for any `k >= 0`.
    pub fn cos(&self, k: u32) -> NumberFieldElement {
        evaluate_rational(&chebyshev(k), &self.c)
    }

    /// `sin²(kπ/n) = 1 - cos²(kπ/n)`.
    pub fn sin_squared(&self, k: u32) -> NumberFieldElement {
        let c = self.cos(k);
        self.one().sub(&c.mul(&c))
    }

    /// Embeds a rational polynomial into this field.
    pub fn embed(&self, p: &SparsePolynomial<Rational>) -> SparsePolynomial<NumberFieldElement> {
        p.map_coeffs(|q| self.element(q.clone()))
    }
}

/// Horner evaluation of a univariate rational polynomial at a field element.
pub fn evaluate_rational(p: &SparsePolynomial<Rational>, x: &NumberFieldElement) -> NumberFieldElement {
    let coeffs = dense(p);
    let m = x.minpoly();
    coeffs
        .iter()
        .rev()
        .fold(NumberFieldElement::zero(m), |acc, c| acc.mul(x).add(&NumberFieldElement::from_rational(m, c.clone())))
}

/// Factors of `T_n(x) ± T_n(y)` together with the scalar `c` making the
/// product exact.
#[derive(Clone, Debug)]
pub struct ChebFactorization {
    pub n: u32,
    pub sign: Sign,
    pub factors: Vec<(u32, SparsePolynomial<NumberFieldElement>)>,
    pub scalar: NumberFieldElement,
    pub target: SparsePolynomial<NumberFieldElement>,
}

impl ChebFactorization {
    pub fn product(&self) -> SparsePolynomial<NumberFieldElement> {
        let one = self.scalar.one_like();
        self.factors
            .iter()
            .fold(SparsePolynomial::constant(2, one), |acc, (_, f)| acc.mul(f))
            .scale(&self.scalar)
    }
}

pub fn cheb_sum_factors(n: u32, sign: Sign) -> Result<ChebFactorization> {
    cheb_sum_factors_in(&CosineField::for_degree(n)?, sign)
}

pub fn cheb_sum_factors_in(field: &CosineField, sign: Sign) -> Result<ChebFactorization> {
    let n = field.n();
    let one = field.one();
    let x = SparsePolynomial::var(2, 0, &one);
    let y = SparsePolynomial::var(2, 1, &one);
    let tn = field.embed(&chebyshev(n));
    let target = {
        let tx = tn.embed(2, &[0]);
        let ty = tn.embed(2, &[1]).scale(&one.from_i64_like(sign.value()));
        tx.add(&ty)
    };
    let mus: Vec<u32> = (0..=n)
        .filter(|mu| match sign {
            Sign::Plus => mu % 2 == 1,
            Sign::Minus => mu % 2 == 0,
        })
        .collect();
    let mut factors = Vec::with_capacity(mus.len());
    for mu in mus {
        let f = if mu == 0 {
            y.sub(&x)
        } else if mu == n {
            y.add(&x)
        } else {
            let two_cos = field.cos(mu).scale(&Rational::from_integer(2.into()));
            x.mul(&x)
                .add(&y.mul(&y))
                .sub(&x.mul(&y).scale(&two_cos))
                .sub(&SparsePolynomial::constant(2, field.sin_squared(mu)))
        };
        factors.push((mu, f));
    }
    let raw = factors.iter().fold(SparsePolynomial::constant(2, one.clone()), |acc, (_, f)| acc.mul(f));
    let xn = Monomial::new(vec![n, 0]);
    let lead = raw
        .coeff(&xn)
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("product has no x^{n} term")))?;
    let target_lead = target.coeff(&xn).cloned().expect("T_n has degree n");
    let scalar = target_lead.div(&lead)?;
    let out = ChebFactorization { n, sign, factors, scalar, target };
    if out.product() != out.target {
        return Err(Error::Invalid(format!("c * prod C(mu) != T_{n}(x) {} T_{n}(y)", sign.as_char())));
    }
    Ok(out)
}
