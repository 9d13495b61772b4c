use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Field, NumberFieldElement, Rational};
use crate::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(first) = entries.first() {
            if entries.iter().any(|e| !e.same_field(first)) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// An `rows x 0` matrix has no entries; it still has a row count.
    pub fn empty(rows: usize) -> Self {
        ExactMatrix { rows, cols: 0, entries: Vec::new() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[F]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ExactMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn rank(&self) -> usize {
        F::matrix_rank(self)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> Result<(Self, Vec<usize>)> {
        let mut a: Vec<Vec<F>> = self.rows().map(<[F]>::to_vec).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][c].inv()?;
            for x in a[r].iter_mut() {
                *x = x.mul(&inv);
            }
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in 0..self.cols {
                        let t = f.mul(&a[r][j]);
                        a[i][j] = a[i][j].sub(&t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        Ok((ExactMatrix { rows: self.rows, cols: self.cols, entries: a.into_iter().flatten().collect() }, pivots))
    }

    /// Basis of the right nullspace `{v : M v = 0}`, one vector per free
    /// column, read off the RREF.
    pub fn nullspace(&self) -> Result<Vec<Vec<F>>> {
        let Some(template) = self.entries.first() else {
            return Ok(Vec::new());
        };
        let (rref, pivots) = self.rref()?;
        let zero = template.zero_like();
        let one = template.one_like();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![zero.clone(); self.cols];
            v[free] = one.clone();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = rref.get(i, free).neg();
            }
            basis.push(v);
        }
        Ok(basis)
    }

    /// Determinant by Gaussian elimination. Square matrices only.
    pub fn determinant(&self) -> Result<F> {
        if self.rows != self.cols {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let Some(template) = self.entries.first() else {
            return Err(Error::Dimension("determinant of an empty matrix needs a field".into()));
        };
        let n = self.rows;
        let mut a: Vec<Vec<F>> = self.rows().map(<[F]>::to_vec).collect();
        let mut det = template.one_like();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
                return Ok(template.zero_like());
            };
            if p != c {
                a.swap(p, c);
                det = det.neg();
            }
            det = det.mul(&a[c][c]);
            let inv = a[c][c].inv()?;
            for i in c + 1..n {
                if a[i][c].is_zero() {
                    continue;
                }
                let f = a[i][c].mul(&inv);
                for j in c..n {
                    let t = f.mul(&a[c][j]);
                    a[i][j] = a[i][j].sub(&t);
                }
            }
        }
        Ok(det)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok(self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(row[0].zero_like(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect())
    }
}

/// Plain Gaussian elimination, first nonzero pivot in each column.
pub fn gaussian_rank<F: Field>(m: &ExactMatrix<F>) -> usize {
    let mut a: Vec<Vec<F>> = m.rows().map(<[F]>::to_vec).collect();
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot is invertible");
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].mul(&inv);
            for j in c..cols {
                let t = f.mul(&a[r][j]);
                a[i][j] = a[i][j].sub(&t);
            }
        }
        r += 1;
    }
    r
}

/// Rank over Q: rows are scaled to integers, then fraction-free elimination.
pub fn rational_rank(m: &ExactMatrix<Rational>) -> usize {
    let rows: Vec<Vec<Vec<BigInt>>> = m
        .rows()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| vec![(q * Rational::from_integer(l.clone())).to_integer()]).collect()
        })
        .collect();
    bareiss_rank(rows, m.ncols(), &[BigInt::zero(), BigInt::one()])
}

/// Rank over Q[x]/(m): each row is cleared of denominators, then
/// fraction-free elimination runs in Z[α].
pub fn number_field_rank(m: &ExactMatrix<NumberFieldElement>) -> usize {
    let Some(first) = m.entries().first() else {
        return 0;
    };
    let minpoly = first.minpoly().clone();
    let rows: Vec<Vec<Vec<BigInt>>> = m
        .rows()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(&x.denominator_lcm()));
            let lq = Rational::from_integer(l);
            row.iter()
                .map(|x| x.scale(&lq).integral_coeffs().expect("cleared row is integral"))
                .collect()
        })
        .collect();
    bareiss_rank(rows, m.ncols(), minpoly.coeffs())
}

// Z[α] arithmetic with α a root of the monic integer polynomial `m`.
fn zmul(a: &[BigInt], b: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let k = a.len();
    if k == 1 {
        return vec![&a[0] * &b[0]];
    }
    let mut prod = vec![BigInt::zero(); 2 * k - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    for i in (k..prod.len()).rev() {
        if prod[i].is_zero() {
            continue;
        }
        let top = std::mem::take(&mut prod[i]);
        for (j, mj) in m.iter().enumerate().take(k) {
            if !mj.is_zero() {
                prod[i - k + j] -= &top * mj;
            }
        }
    }
    prod.truncate(k);
    prod
}

fn zsub(a: Vec<BigInt>, b: &[BigInt]) -> Vec<BigInt> {
    a.into_iter().zip(b).map(|(x, y)| x - y).collect()
}

fn zis_zero(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}

// Inverse of a nonzero element of Z[α] written as w / D with w integral.
struct ZInverse {
    w: Vec<BigInt>,
    d: BigInt,
}

impl ZInverse {
    fn of(a: &[BigInt], m: &[BigInt]) -> Self {
        let k = a.len();
        if k == 1 {
            let s = if a[0].is_negative() { -BigInt::one() } else { BigInt::one() };
            return ZInverse { w: vec![s], d: a[0].abs() };
        }
        let mp = std::sync::Arc::new(super::MinimalPolynomial::new(m.to_vec()).expect("validated minimal polynomial"));
        let x = NumberFieldElement::new(mp, a.iter().cloned().map(Rational::from_integer).collect());
        let inv = x.inv().expect("nonzero element of a field is invertible");
        let d = inv.denominator_lcm();
        let w = inv
            .scale(&Rational::from_integer(d.clone()))
            .integral_coeffs()
            .expect("scaled inverse is integral");
        ZInverse { w, d }
    }

    // x / a, known to lie in Z[α].
    fn exact_div(&self, x: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
        zmul(x, &self.w, m)
            .into_iter()
            .map(|c| {
                let (q, r) = c.div_rem(&self.d);
                debug_assert!(r.is_zero(), "Bareiss division is exact");
                q
            })
            .collect()
    }
}

/// Fraction-free Bareiss elimination in Z[α] with column skipping. Every
/// intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact.
pub(crate) fn bareiss_rank(mut a: Vec<Vec<Vec<BigInt>>>, cols: usize, m: &[BigInt]) -> usize {
    let rows = a.len();
    let mut prev: Option<ZInverse> = None;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !zis_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        let prev_ref = prev.as_ref();
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            let lead_zero = zis_zero(&lead);
            for j in c + 1..cols {
                let mut v = zmul(piv, &row[j], m);
                if !lead_zero && !zis_zero(&pivot_row[j]) {
                    v = zsub(v, &zmul(&lead, &pivot_row[j], m));
                }
                row[j] = match prev_ref {
                    Some(inv) => inv.exact_div(&v, m),
                    None => v,
                };
            }
            row[c] = vec![BigInt::zero(); piv.len()];
        }
        prev = Some(ZInverse::of(piv, m));
        r += 1;
    }
    r
}
