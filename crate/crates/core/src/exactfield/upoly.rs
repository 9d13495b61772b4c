// Dense univariate polynomials, coefficients stored low degree first and
// trimmed so the last entry is nonzero. The zero polynomial is empty.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn q_from_int(p: &[BigInt]) -> Vec<Rational> {
    let mut out: Vec<Rational> = p.iter().cloned().map(Rational::from_integer).collect();
    trim(&mut out);
    out
}

pub(crate) fn q_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
        let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

pub(crate) fn q_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn q_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn q_derivative(a: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

/// Extended Euclid: returns `(g, s)` with `s*a ≡ g (mod b)`, `g` monic.
pub(crate) fn q_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if let Some(lead) = r0.last().cloned() {
        for c in r0.iter_mut() {
            *c /= &lead;
        }
        for c in s0.iter_mut() {
            *c /= &lead;
        }
    }
    (r0, s0)
}

// ---- polynomials over F_p ----

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

pub(crate) fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (_, r) = fp_divrem(a, b, p);
    r
}

pub(crate) fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv_lead = invmod(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = mulmod(*r.last().unwrap(), inv_lead, p);
        for (j, &y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] + p - mulmod(c, y, p)) % p;
        }
        q[shift] = c;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let r = fp_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
    }
    if let Some(&lead) = r0.last() {
        let inv = invmod(lead, p);
        for c in r0.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    r0
}

pub(crate) fn fp_derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulmod(c, i as u64 % p, p))
        .collect();
    trim(&mut out);
    out
}

/// `base^e mod m` in F_p[x].
pub(crate) fn fp_powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = fp_rem(&[1], m, p);
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_rem(&fp_mul(&result, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Extended Euclid over F_p: `(g, s)` with `s*a ≡ g (mod b)`, `g` monic.
pub(crate) fn fp_ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if let Some(&lead) = r0.last() {
        let inv = invmod(lead, p);
        for c in r0.iter_mut().chain(s0.iter_mut()) {
            *c = mulmod(*c, inv, p);
        }
    }
    (r0, s0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vec<Rational> {
        q_from_int(&v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn divrem_reconstructs() {
        let a = q(&[3, -1, 0, 2, 5]);
        let b = q(&[1, 0, 2]);
        let (qq, r) = q_divrem(&a, &b);
        assert!(r.len() < b.len());
        let back = q_sub(&q_mul(&qq, &b), &q_sub(&[], &r));
        assert_eq!(back, a);
    }

    #[test]
    fn ext_gcd_gives_inverse() {
        let m = q(&[-2, 0, 1]);
        let a = q(&[1, 1]);
        let (g, s) = q_ext_gcd(&a, &m);
        assert_eq!(g, q(&[1]));
        let (_, r) = q_divrem(&q_mul(&s, &a), &m);
        assert_eq!(r, q(&[1]));
    }

    #[test]
    fn fp_gcd_detects_common_root() {
        // (x-1)(x-2) and (x-2)(x-3) over F_7
        let a = fp_mul(&[6, 1], &[5, 1], 7);
        let b = fp_mul(&[5, 1], &[4, 1], 7);
        assert_eq!(fp_gcd(&a, &b, 7), vec![5, 1]);
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        // x^p ≡ x mod (x^2 - 3) fails when x^2-3 is irreducible mod p
        let m = [4u64, 0, 1]; // x^2 - 3 over F_7: 3 is a non-residue mod 7
        let xp = fp_powmod_poly(&[0, 1], 7, &m, 7);
        assert_ne!(xp, vec![0, 1]);
    }
}
