//! Upper bounds for the number of nodes of a degree-d hypersurface in P^n,
//! Chmutov densities and the exact slab volumes a_n.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::exactfield::Rational;
use crate::polycheb::binomial;
use crate::{Error, Result};

fn check_nd(n: u32, d: u32) -> Result<()> {
    if n < 2 || d < 2 {
        return Err(Error::Invalid(format!("bounds need n >= 2 and d >= 2, got n = {n}, d = {d}")));
    }
    Ok(())
}

/// Coefficients of (x + x^2 + … + x^{d−1})^n.
fn power_coefficients(n: u32, d: u32) -> Vec<BigUint> {
    let mut c = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::zero(); c.len() + d as usize - 1];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for k in 1..d as usize {
                next[i + k] += ci;
            }
        }
        c = next;
    }
    c
}

/// Lattice points k ∈ (0, d)^n with (n − 2)d/2 + 1 < Σk ≤ nd/2.
pub fn arnold_number(n: u32, d: u32) -> Result<BigUint> {
    check_nd(n, d)?;
    let (n64, d64) = (u64::from(n), u64::from(d));
    let coeffs = power_coefficients(n, d);
    // compare 2Σ against the doubled thresholds to stay in integers
    let low = (n64 - 2) * d64 + 2;
    let high = n64 * d64;
    Ok(coeffs
        .iter()
        .enumerate()
        .filter(|&(sum, _)| {
            let twice = 2 * sum as u64;
            twice > low && twice <= high
        })
        .map(|(_, c)| c)
        .sum())
}

/// The applicable one of the three degree/dimension parity cases, floored.
pub fn bruce_bound(n: u32, d: u32) -> Result<BigUint> {
    check_nd(n, d)?;
    let d_big = BigUint::from(d);
    let p = (&d_big - 1u32).pow(n);
    Ok(if n % 2 == 0 {
        (p * (&d_big + 1u32) + (&d_big - 1u32)) / (2u32 * &d_big)
    } else if d % 2 == 1 {
        p / 2u32
    } else {
        (p * (&d_big + 1u32) + 1u32) / (2u32 * &d_big)
    })
}

/// floor(4d(d − 1)²/9) for surfaces; `None` below degree 3.
pub fn miyaoka_bound(d: u32) -> Option<BigUint> {
    (d >= 3).then(|| {
        let d = BigUint::from(d);
        let dm = &d - 1u32;
        4u32 * d * &dm * &dm / 9u32
    })
}

fn big_number<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn big_number_opt<S: Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => big_number(v, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub n: u32,
    pub d: u32,
    #[serde(serialize_with = "big_number")]
    pub arnold: BigUint,
    #[serde(serialize_with = "big_number")]
    pub bruce: BigUint,
    #[serde(serialize_with = "big_number_opt")]
    pub miyaoka: Option<BigUint>,
    #[serde(serialize_with = "big_number")]
    pub combined_upper: BigUint,
    #[serde(serialize_with = "big_number_opt")]
    pub known_lower: Option<BigUint>,
    pub source: Option<String>,
}

impl BoundsRow {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        let arnold = arnold_number(n, d)?;
        let bruce = bruce_bound(n, d)?;
        let miyaoka = if n == 3 { miyaoka_bound(d) } else { None };
        let mut combined = arnold.clone().min(bruce.clone());
        if let Some(m) = &miyaoka {
            combined = combined.min(m.clone());
        }
        Ok(BoundsRow { n, d, arnold, bruce, miyaoka, combined_upper: combined, known_lower: None, source: None })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsTable {
    pub rows: Vec<BoundsRow>,
}

pub const CSV_HEADER: &str = "d,arnold,bruce,miyaoka,combined_upper,known_lower,source";

impl BoundsTable {
    /// Bounds for every d in `degrees` in dimension `n`, one cell per worker task.
    pub fn for_dimension(n: u32, degrees: impl IntoIterator<Item = u32>) -> Result<Self> {
        let ds: Vec<u32> = degrees.into_iter().collect();
        let rows = ds.par_iter().map(|&d| BoundsRow::new(n, d)).collect::<Result<Vec<_>>>()?;
        Ok(BoundsTable { rows })
    }

    /// Attaches a known lower bound to the row of degree `d`.
    pub fn set_lower(&mut self, d: u32, lower: BigUint, source: &str) {
        if let Some(row) = self.rows.iter_mut().find(|r| r.d == d) {
            row.known_lower = Some(lower);
            row.source = Some(source.to_string());
        }
    }

    pub fn upper_row(&self) -> Vec<BigUint> {
        self.rows.iter().map(|r| r.combined_upper.clone()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let opt = |x: &Option<BigUint>| x.as_ref().map(ToString::to_string).unwrap_or_default();
            let source = r.source.as_deref().unwrap_or("");
            let source = if source.contains([',', '"']) { format!("\"{}\"", source.replace('"', "\"\"")) } else { source.to_string() };
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.d,
                r.arnold,
                r.bruce,
                opt(&r.miyaoka),
                r.combined_upper,
                opt(&r.known_lower),
                source
            ));
        }
        out
    }
}

/// Combined upper bounds for surfaces in P^3.
pub fn mu3_upper_row(degrees: impl IntoIterator<Item = u32>) -> Result<BoundsTable> {
    BoundsTable::for_dimension(3, degrees)
}

/// binom(n, ⌊n/2⌋) / 2^n.
pub fn chmutov_density(n: u32) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Invalid("chmutov density needs n >= 1".into()));
    }
    let num = BigInt::from(binomial(n.into(), (n / 2).into()));
    Ok(Rational::new(num, BigInt::one() << n as usize))
}

/// a_n as an exact rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlabVolume {
    pub n: u32,
    pub value: Rational,
}

// Vol{x ∈ [0,1]^n : Σx ≤ t} by inclusion–exclusion.
fn cube_slice(n: u32, t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..=n {
        let shift = t - Rational::from_integer(k.into());
        if !shift.is_positive() {
            break;
        }
        let term = Rational::from_integer(BigInt::from(binomial(n.into(), k.into()))) * num_traits::pow(shift, n as usize);
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    acc / Rational::from_integer(fact)
}

/// Volume of the slab (n − 2)/2 ≤ Σx ≤ n/2 in the unit cube.
pub fn slab_volume(n: u32) -> Result<SlabVolume> {
    if n < 2 {
        return Err(Error::Invalid("slab volume needs n >= 2".into()));
    }
    let half = |k: u32| Rational::new(k.into(), 2.into());
    let value = cube_slice(n, &half(n)) - cube_slice(n, &half(n - 2));
    Ok(SlabVolume { n, value })
}

const PI_60: &str = "3.141592653589793238462643383279502884197169399375105820974944";
pub const DIGITS: usize = 50;

fn parse_decimal(s: &str) -> Rational {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let num: BigInt = format!("{int}{frac}").parse().expect("decimal literal");
    Rational::new(num, BigInt::from(10).pow(frac.len() as u32))
}

/// sqrt(q) truncated to `digits` decimals.
pub fn sqrt_decimal(q: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(2 * digits as u32);
    let scaled = (q * Rational::from_integer(scale)).to_integer();
    let root = scaled.sqrt();
    render(&root, digits)
}

/// q truncated to `digits` decimals.
pub fn decimal(q: &Rational, digits: usize) -> String {
    let scaled = (q * Rational::from_integer(BigInt::from(10).pow(digits as u32))).to_integer();
    render(&scaled, digits)
}

fn render(scaled: &BigInt, digits: usize) -> String {
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let s = format!("{:0>width$}", s, width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

fn sqrt_rational(q: &Rational, digits: usize) -> Rational {
    parse_decimal(&sqrt_decimal(q, digits))
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticRow {
    pub n: u32,
    pub a_n: String,
    pub c_n: String,
    pub sqrt_n_a_n: String,
    pub sqrt_n_c_n: String,
    /// Relative deviations from the limits, in percent.
    pub deviation_a: f64,
    pub deviation_c: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticReport {
    pub limit_a: String,
    pub limit_c: String,
    pub rows: Vec<AsymptoticRow>,
    /// a_n strictly decreasing for 3 ≤ n ≤ n_max.
    pub a_decreasing: bool,
    /// |√n·a_n − limit| nonincreasing over the second half of the range.
    pub a_approach_monotone: bool,
    pub c_approach_monotone: bool,
}

/// Exact a_n and c_n for 2 ≤ n ≤ n_max compared with √(6/π) and √(2/π).
pub fn asymptotic_check(n_max: u32) -> Result<AsymptoticReport> {
    if n_max < 10 {
        return Err(Error::Invalid("asymptotic check needs n_max >= 10".into()));
    }
    let pi = parse_decimal(PI_60);
    let limit_a = sqrt_rational(&(Rational::from_integer(6.into()) / &pi), DIGITS + 5);
    let limit_c = sqrt_rational(&(Rational::from_integer(2.into()) / &pi), DIGITS + 5);
    let mut rows = Vec::new();
    let mut a_values = Vec::new();
    let mut gaps_a = Vec::new();
    let mut gaps_c = Vec::new();
    for n in 2..=n_max {
        let a = slab_volume(n)?.value;
        let c = chmutov_density(n)?;
        let nq = Rational::from_integer(n.into());
        let sa = sqrt_rational(&(&nq * &a * &a), DIGITS + 5);
        let sc = sqrt_rational(&(&nq * &c * &c), DIGITS + 5);
        let dev = |x: &Rational, l: &Rational| ((x - l) / l * Rational::from_integer(100.into())).to_f64().unwrap_or(f64::NAN);
        gaps_a.push((&sa - &limit_a).abs());
        gaps_c.push((&sc - &limit_c).abs());
        rows.push(AsymptoticRow {
            n,
            a_n: decimal(&a, DIGITS),
            c_n: decimal(&c, DIGITS),
            sqrt_n_a_n: decimal(&sa, DIGITS),
            sqrt_n_c_n: decimal(&sc, DIGITS),
            deviation_a: dev(&sa, &limit_a),
            deviation_c: dev(&sc, &limit_c),
        });
        a_values.push((n, a));
    }
    let a_decreasing = a_values.windows(2).filter(|w| w[0].0 >= 3).all(|w| w[1].1 < w[0].1);
    let tail = gaps_a.len() / 2;
    let nonincreasing = |g: &[Rational]| g[tail..].windows(2).all(|w| w[1] <= w[0]);
    Ok(AsymptoticReport {
        limit_a: decimal(&limit_a, DIGITS),
        limit_c: decimal(&limit_c, DIGITS),
        rows,
        a_decreasing,
        a_approach_monotone: nonincreasing(&gaps_a),
        c_approach_monotone: nonincreasing(&gaps_c),
    })
}

/// a_n = (2/π) ∫₀^∞ (sin u / u)^n · sin(2u)/(2u) du by adaptive Simpson
/// on panels of width π/2, truncated where the tail is below `tol`.
pub fn slab_volume_quadrature(n: u32, tol: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::Invalid("the quadrature cross-check needs n >= 3".into()));
    }
    let sinc = |u: f64| if u.abs() < 1e-8 { 1.0 - u * u / 6.0 } else { u.sin() / u };
    let f = |u: f64| sinc(u).powi(n as i32) * sinc(2.0 * u);
    // |f| ≤ u^{-n-1}/2, so the tail beyond U is at most U^{-n}/(2n)
    let upper = (1.0 / (2.0 * f64::from(n) * tol * 0.1)).powf(1.0 / f64::from(n));
    let panel = std::f64::consts::FRAC_PI_2;
    let panels = (upper / panel).ceil() as usize;
    let local_tol = tol * 0.5 / panels as f64;
    let mut total = 0.0;
    for k in 0..panels {
        let (a, b) = (k as f64 * panel, (k + 1) as f64 * panel);
        total += adaptive_simpson(&f, a, b, local_tol, 40);
    }
    Ok(total * 2.0 / std::f64::consts::PI)
}

fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let simpson = |a: f64, b: f64| (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b));
    fn rec(f: &impl Fn(f64) -> f64, a: f64, b: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = (a + b) / 2.0;
        let s = |a: f64, b: f64| (b - a) / 6.0 * (f(a) + 4.0 * f((a + b) / 2.0) + f(b));
        let (left, right) = (s(a, m), s(m, b));
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        rec(f, a, m, left, tol / 2.0, depth - 1) + rec(f, m, b, right, tol / 2.0, depth - 1)
    }
    rec(f, a, b, simpson(a, b), tol, depth)
}
