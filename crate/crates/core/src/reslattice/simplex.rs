// Phase-one simplex with Bland's rule, using fraction-free integer pivoting:
// every tableau entry is the true value times the last pivot, and each
// update divides exactly. Runs in checked i128 and repeats in big integers
// if anything overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactfield::Rational;

trait Int: Clone + Ord + Zero + One + Signed {
    fn try_sub(&self, rhs: &Self) -> Option<Self>;
    fn try_mul(&self, rhs: &Self) -> Option<Self>;
    fn exact_div(&self, rhs: &Self) -> Self;
    fn big(&self) -> BigInt;
}

impl Int for BigInt {
    fn try_sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn try_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn exact_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn big(&self) -> BigInt {
        self.clone()
    }
}

macro_rules! machine_int {
    ($t:ty) => {
        impl Int for $t {
            fn try_sub(&self, rhs: &Self) -> Option<Self> {
                self.checked_sub(*rhs)
            }
            fn try_mul(&self, rhs: &Self) -> Option<Self> {
                self.checked_mul(*rhs)
            }
            fn exact_div(&self, rhs: &Self) -> Self {
                self / rhs
            }
            fn big(&self) -> BigInt {
                BigInt::from(*self)
            }
        }
    };
}

machine_int!(i64);
machine_int!(i128);

struct Overflow;

/// Integer rows `[a_1 .. a_n | b]` of a system `A x = b`.
pub(crate) enum IntRows {
    Narrow(Vec<Vec<i64>>),
    Big(Vec<Vec<BigInt>>),
}

impl IntRows {
    pub(crate) fn from_big(rows: Vec<Vec<BigInt>>) -> Self {
        let narrow: Option<Vec<Vec<i64>>> = rows.iter().map(|r| r.iter().map(ToPrimitive::to_i64).collect()).collect();
        match narrow {
            Some(n) => IntRows::Narrow(n),
            None => IntRows::Big(rows),
        }
    }
}

/// A point `x >= 0` with `A x = b`, or `None` if there is none.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first().map_or(0, Vec::len);
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let l = row.iter().chain([rhs]).fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().chain([rhs]).map(|q| (q * &l).to_integer()).collect()
        })
        .collect();
    feasible_int(IntRows::from_big(rows), n)
}

/// `feasible_point` on rows with integer entries.
pub(crate) fn feasible_int(rows: IntRows, n: usize) -> Option<Vec<Rational>> {
    let big = match rows {
        IntRows::Narrow(r) => {
            if let Ok(x) = solve(&r, n) {
                return x;
            }
            let wide: Vec<Vec<i128>> = r.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
            if let Ok(x) = solve(&wide, n) {
                return x;
            }
            r.into_iter().map(|row| row.into_iter().map(BigInt::from).collect()).collect()
        }
        IntRows::Big(r) => {
            let wide: Option<Vec<Vec<i128>>> = r.iter().map(|row| row.iter().map(ToPrimitive::to_i128).collect()).collect();
            if let Some(w) = wide {
                if let Ok(x) = solve(&w, n) {
                    return x;
                }
            }
            r
        }
    };
    match solve(&big, n) {
        Ok(x) => x,
        Err(Overflow) => unreachable!("big integers do not overflow"),
    }
}

fn solve<T: Int>(rows: &[Vec<T>], n: usize) -> Result<Option<Vec<Rational>>, Overflow> {
    let m = rows.len();
    if m == 0 {
        return Ok(Some(vec![Rational::zero(); n]));
    }
    // columns: n originals, m artificials, right-hand side; the last row is
    // the reduced cost of "minimise the sum of artificials"
    let width = n + m + 1;
    let mut t: Vec<Vec<T>> = Vec::with_capacity(m + 1);
    for (i, r) in rows.iter().enumerate() {
        let neg = r[n].is_negative();
        let mut row = Vec::with_capacity(width);
        row.extend(r[..n].iter().map(|x| if neg { -x.clone() } else { x.clone() }));
        row.extend((0..m).map(|k| if k == i { T::one() } else { T::zero() }));
        row.push(if neg { -r[n].clone() } else { r[n].clone() });
        t.push(row);
    }
    let mut cost = vec![T::zero(); width];
    for row in &t {
        for j in (0..n).chain([width - 1]) {
            cost[j] = cost[j].try_sub(&row[j]).ok_or(Overflow)?;
        }
    }
    t.push(cost);
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut d = T::one();

    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let better = match leave {
                None => true,
                Some(l) => {
                    // rhs_i / t_i < rhs_l / t_l with both denominators positive
                    let lhs = t[i][width - 1].try_mul(&t[l][enter]).ok_or(Overflow)?;
                    let rhs = t[l][width - 1].try_mul(&t[i][enter]).ok_or(Overflow)?;
                    lhs < rhs || (lhs == rhs && basis[i] < basis[l])
                }
            };
            if better {
                leave = Some(i);
            }
        }
        // phase one is bounded below by zero, so a leaving row always exists
        let r = leave.expect("phase-one objective is bounded");
        let p = t[r][enter].clone();
        let prow = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[enter].clone();
            for (x, pj) in row.iter_mut().zip(&prow) {
                let v = p.try_mul(x).ok_or(Overflow)?.try_sub(&f.try_mul(pj).ok_or(Overflow)?).ok_or(Overflow)?;
                *x = v.exact_div(&d);
            }
        }
        d = p;
        basis[r] = enter;
    }

    if !t[m][width - 1].is_zero() {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    let d = d.big();
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = Rational::new(t[i][width - 1].big(), d.clone());
        }
    }
    Ok(Some(x))
}
