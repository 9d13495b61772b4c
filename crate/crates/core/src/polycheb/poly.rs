use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::exactfield::Field;
use crate::{Error, Result};

/// Exponent vector, one slot per variable. Ordered graded-lexicographically
/// with `x0` the largest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn evaluate<F: Field>(&self, point: &[F]) -> F {
        let one = point[0].one_like();
        self.0
            .iter()
            .zip(point)
            .filter(|(&e, _)| e > 0)
            .fold(one, |acc, (&e, x)| acc.mul(&x.pow(e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Sparse polynomial with nonzero coefficients in one exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct SparsePolynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> SparsePolynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        SparsePolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::from_terms(nvars, vec![(Monomial::one(nvars), c)])
    }

    /// The coordinate function `x_i`, with coefficients in the field of `one`.
    pub fn var(nvars: usize, i: usize, one: &F) -> Self {
        Self::from_terms(nvars, vec![(Monomial::var(nvars, i, 1), one.one_like())])
    }

    /// Sums like terms and drops zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut map: BTreeMap<Monomial, F> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        SparsePolynomial { nvars, terms: map }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&F> {
        self.terms.get(m)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    /// Any coefficient, used as a template for the field.
    pub fn some_coeff(&self) -> Option<&F> {
        self.terms.values().next()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_arity(other);
        Self::from_terms(self.nvars, self.terms.clone().into_iter().chain(other.terms.clone()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SparsePolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.nvars, self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut acc: BTreeMap<Monomial, F> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(x) => *x = x.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        SparsePolynomial { nvars: self.nvars, terms: acc }
    }

    pub fn pow(&self, e: u32, one: &F) -> Self {
        let mut acc = Self::constant(self.nvars, one.one_like());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitutes `inner` for the variable of the univariate `self`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if self.nvars != 1 {
            return Err(Error::Dimension("compose expects a univariate outer polynomial".into()));
        }
        let top = self.degree().unwrap_or(0);
        let mut acc = Self::zero(inner.nvars);
        for e in (0..=top).rev() {
            acc = acc.mul(inner);
            if let Some(c) = self.terms.get(&Monomial::new(vec![e])) {
                acc = acc.add(&SparsePolynomial::constant(inner.nvars, c.clone()));
            }
        }
        Ok(acc)
    }

    /// Re-indexes a polynomial into more variables: variable `i` of `self`
    /// becomes variable `slots[i]`.
    pub fn embed(&self, nvars: usize, slots: &[usize]) -> Self {
        assert_eq!(slots.len(), self.nvars);
        Self::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0; nvars];
                for (i, &k) in m.exponents().iter().enumerate() {
                    e[slots[i]] += k;
                }
                (Monomial::new(e), c.clone())
            }),
        )
    }

    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().filter(|(m, _)| m.exponents()[var] > 0).map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                let k = e[var];
                e[var] -= 1;
                (Monomial::new(e), c.mul(&c.from_i64_like(k as i64)))
            }),
        )
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.derivative(i)).collect()
    }

    pub fn hessian(&self) -> Vec<Vec<Self>> {
        self.gradient().iter().map(|g| g.gradient()).collect()
    }

    pub fn evaluate(&self, point: &[F]) -> Result<F> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!("point of length {} for {} variables", point.len(), self.nvars)));
        }
        let Some(first) = point.first().or(self.some_coeff()) else {
            return Err(Error::Dimension("cannot evaluate a zero-variable zero polynomial".into()));
        };
        if point.iter().any(|x| !x.same_field(first)) {
            return Err(Error::FieldMismatch);
        }
        let mut acc = first.zero_like();
        for (m, c) in &self.terms {
            if !c.same_field(first) {
                return Err(Error::FieldMismatch);
            }
            let v = if point.is_empty() { c.clone() } else { c.mul(&m.evaluate(point)) };
            acc = acc.add(&v);
        }
        Ok(acc)
    }

    /// Homogenizes to degree `deg` with a new variable in front.
    pub fn homogenize(&self, deg: u32) -> Result<Self> {
        if self.degree().unwrap_or(0) > deg {
            return Err(Error::Invalid(format!("cannot homogenize degree {:?} to {deg}", self.degree())));
        }
        Ok(Self::from_terms(
            self.nvars + 1,
            self.terms.iter().map(|(m, c)| {
                let mut e = Vec::with_capacity(self.nvars + 1);
                e.push(deg - m.degree());
                e.extend_from_slice(m.exponents());
                (Monomial::new(e), c.clone())
            }),
        ))
    }

    /// Sets variable `var` to 1 and drops it.
    pub fn dehomogenize(&self, var: usize) -> Self {
        Self::from_terms(
            self.nvars - 1,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.remove(var);
                (Monomial::new(e), c.clone())
            }),
        )
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> SparsePolynomial<G> {
        SparsePolynomial::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials in different numbers of variables");
    }
}

impl<F: Field> fmt::Display for SparsePolynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(m, c)| {
                let mono = m.to_string();
                if mono == "1" {
                    format!("({c})")
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
