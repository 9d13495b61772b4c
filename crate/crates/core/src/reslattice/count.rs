use rayon::prelude::*;
use serde::Serialize;

use super::{nullhomologous_columns, IntersectionMatrix, Prepared, Projectivity, SignVector};
use crate::exactfield::json::format_rational;
use crate::exactfield::Rational;
use crate::{Error, Result};

pub const DEFAULT_CAP: usize = 20;

#[derive(Clone, Debug)]
pub struct CountOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
    pub cap: usize,
    pub witnesses: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { workers: None, cap: DEFAULT_CAP, witnesses: false }
    }
}

/// Coefficients λ of an ample class on the flipped generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipWitness {
    pub flip: String,
    pub lambda: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub s: usize,
    #[serde(rename = "dimA")]
    pub dim_a: usize,
    pub total: u64,
    pub projective_count: u64,
    pub nullhomologous_columns: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<FlipWitness>>,
}

/// Counts sign flips whose row space has a strictly positive vector.
///
/// Only flips with ε₀ = +1 are solved; ε and −ε always agree.
pub fn count_projective(m: &IntersectionMatrix, opts: &CountOptions) -> Result<CountReport> {
    let s = m.s();
    if s > opts.cap || s >= 64 {
        return Err(Error::FlipCap { s, cap: opts.cap.min(63) });
    }
    let prepared = Prepared::new(m);
    let run = || -> Result<Vec<(u64, Option<Vec<Rational>>)>> {
        if s == 0 {
            return Ok(vec![(0, solve(&prepared, s, 0)?)]);
        }
        let half = 1u64 << (s - 1);
        (0..half).into_par_iter().map(|h| solve(&prepared, s, h << 1).map(|w| (h << 1, w))).collect()
    };
    let solved = match opts.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Invalid(format!("cannot start worker pool: {e}")))?
            .install(run)?,
        None => run()?,
    };

    let full = if s == 0 { 0 } else { (1u64 << s) - 1 };
    let mut count = 0u64;
    let mut witnesses = Vec::new();
    for (mask, lambda) in solved {
        let Some(lambda) = lambda else { continue };
        count += if s == 0 { 1 } else { 2 };
        if opts.witnesses {
            witnesses.push((mask, lambda.iter().map(format_rational).collect::<Vec<_>>()));
            if s > 0 {
                witnesses.push((mask ^ full, lambda.iter().map(|x| format_rational(&-x)).collect()));
            }
        }
    }
    witnesses.sort();

    Ok(CountReport {
        s,
        dim_a: m.rank(),
        total: 1u64 << s,
        projective_count: count,
        nullhomologous_columns: nullhomologous_columns(m),
        witnesses: opts.witnesses.then(|| {
            witnesses
                .into_iter()
                .map(|(mask, lambda)| FlipWitness { flip: SignVector::from_mask(s, mask).to_string(), lambda })
                .collect()
        }),
    })
}

fn solve(p: &Prepared, s: usize, mask: u64) -> Result<Option<Vec<Rational>>> {
    Ok(match p.decide(&SignVector::from_mask(s, mask))? {
        Projectivity::Projective { lambda, .. } => Some(lambda),
        Projectivity::Blocked { .. } => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslattice::build_lattice_from_relations;

    fn qv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn cubic_relations_give_six() {
        let rels = vec![
            qv(&[1, -1, 0, 0, 0, 0]),
            qv(&[0, 0, 1, -1, 0, 0]),
            qv(&[0, 0, 0, 0, 1, -1]),
            qv(&[1, 0, -1, 0, -1, 0]),
        ];
        let m = build_lattice_from_relations(&rels, 6).unwrap();
        let r = count_projective(&m, &CountOptions::default()).unwrap();
        assert_eq!((r.s, r.dim_a, r.total, r.projective_count), (6, 2, 64, 6));
    }

    #[test]
    fn cubic_d4_matrix_gives_102() {
        let m = IntersectionMatrix::from_i64(&[
            &[1, 1, 0, 1, 0, 0, 1, 0, 0],
            &[1, 0, 1, 0, 1, 1, 0, 0, 0],
            &[-1, 0, 0, -1, -1, 0, 0, 0, -1],
            &[-1, -1, -1, 0, 0, 0, 0, -1, 0],
            &[0, 0, 0, 0, 0, -1, -1, 1, 1],
        ])
        .unwrap();
        let r = count_projective(&m, &CountOptions::default()).unwrap();
        assert_eq!(r.projective_count, 102);
        assert_eq!(r.total, 512);
    }

    #[test]
    fn complete_intersection_gives_46() {
        let m = IntersectionMatrix::from_i64(&[
            &[1, 1, 0, 0, 0, 0],
            &[0, 0, 1, 1, 0, 0],
            &[0, 0, 0, 0, 1, 1],
            &[1, 0, 1, 0, 1, 0],
        ])
        .unwrap();
        let opts = CountOptions { witnesses: true, ..CountOptions::default() };
        let r = count_projective(&m, &opts).unwrap();
        assert_eq!(r.projective_count, 46);
        let w = r.witnesses.unwrap();
        assert_eq!(w.len(), 46);
        assert!(w.iter().any(|x| x.flip == "++++++"));
    }

    #[test]
    fn cap_is_enforced() {
        let m = IntersectionMatrix::from_i64(&[&[1; 8]]).unwrap();
        let opts = CountOptions { cap: 7, ..CountOptions::default() };
        assert!(matches!(count_projective(&m, &opts), Err(Error::FlipCap { s: 8, cap: 7 })));
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let m = IntersectionMatrix::from_i64(&[&[1, 2, 0, -1, 1], &[0, 1, 1, 1, -2]]).unwrap();
        let one = count_projective(&m, &CountOptions { workers: Some(1), witnesses: true, ..Default::default() });
        let many = count_projective(&m, &CountOptions { workers: Some(4), witnesses: true, ..Default::default() });
        assert_eq!(one.unwrap(), many.unwrap());
    }
}
