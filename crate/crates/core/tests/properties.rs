mod common;

use std::sync::Arc;

use common::{arnold_brute_force, fm_feasible, q, zaslavsky};
use nodal::arnold::{arnold_number, bruce_bound, miyaoka_bound, BoundsRow};
use nodal::chmutov::VarietyKind;
use nodal::defect::betti_report;
use nodal::exactfield::{Field, FiniteField, FiniteFieldElement, MinimalPolynomial, NumberFieldElement, Rational};
use nodal::polycheb::chebyshev;
use nodal::reslattice::{
    build_lattice_from_relations, count_projective, dual_oracle, flip, is_projective, nullhomologous_columns,
    primal_oracle, relations, CountOptions, IntersectionMatrix, Projectivity, SignVector,
};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix_strategy(max_k: usize, max_s: usize, bound: i64) -> impl Strategy<Value = IntersectionMatrix> {
    (1..=max_k, 1..=max_s).prop_flat_map(move |(k, s)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, s), k).prop_map(move |rows| {
            let rows = rows.into_iter().map(|r| r.into_iter().map(q).collect()).collect();
            IntersectionMatrix::new(rows, s, None).unwrap()
        })
    })
}

fn count(m: &IntersectionMatrix) -> u64 {
    count_projective(m, &CountOptions { workers: Some(1), ..Default::default() }).unwrap().projective_count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exactly_one_oracle_succeeds(m in matrix_strategy(5, 10, 3)) {
        let primal = primal_oracle(&m);
        let dual = dual_oracle(&m);
        prop_assert!(primal.is_some() != dual.is_some());
        if let Some(lambda) = primal {
            prop_assert!(m.combine(&lambda).iter().all(|x| *x >= q(1)));
        }
        if let Some(y) = dual {
            prop_assert!(y.iter().all(|x| !x.is_negative()));
            prop_assert_eq!(y.iter().fold(q(0), |a, b| a + b), q(1));
            prop_assert!(m.apply(&y).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn lp_agrees_with_fourier_motzkin(m in matrix_strategy(4, 6, 3)) {
        let lp = is_projective(&m).unwrap().is_projective();
        prop_assert_eq!(lp, fm_feasible(m.rows()));
    }

    #[test]
    fn some_flip_is_projective_iff_no_zero_column(m in matrix_strategy(4, 8, 2)) {
        let zero = !nullhomologous_columns(&m).is_empty();
        prop_assert_eq!(count(&m) > 0, !zero);
    }

    #[test]
    fn count_matches_zaslavsky(m in matrix_strategy(4, 8, 3)) {
        prop_assume!(nullhomologous_columns(&m).is_empty());
        prop_assert_eq!(count(&m) as i64, zaslavsky(&m));
    }

    #[test]
    fn count_is_even_and_flip_invariant(m in matrix_strategy(3, 7, 3), mask in 0u64..128) {
        let c = count(&m);
        prop_assert_eq!(c % 2, 0);
        let eps = SignVector::from_mask(m.s(), mask & ((1 << m.s()) - 1));
        prop_assert_eq!(count(&flip(&m, &eps).unwrap()), c);
    }

    #[test]
    fn flip_is_an_involution(m in matrix_strategy(4, 8, 3), mask in 0u64..256) {
        let eps = SignVector::from_mask(m.s(), mask & ((1 << m.s()) - 1));
        prop_assert_eq!(flip(&flip(&m, &eps).unwrap(), &eps).unwrap(), m);
    }

    #[test]
    fn relations_complement_the_rows(m in matrix_strategy(5, 9, 3)) {
        let b = relations(&m);
        prop_assert_eq!(b.dim() + m.rank(), m.s());
        for v in &b.vectors {
            prop_assert!(m.apply(v).iter().all(Zero::is_zero));
        }
        let back = build_lattice_from_relations(&b.vectors, m.s()).unwrap();
        prop_assert_eq!(back.rank(), m.rank());
        for r in back.rows() {
            // rows of the rebuilt lattice lie in the original row space
            let mut stacked = m.rows().to_vec();
            stacked.push(r.clone());
            prop_assert_eq!(IntersectionMatrix::new(stacked, m.s(), None).unwrap().rank(), m.rank());
        }
    }

    #[test]
    fn certificates_are_consistent(m in matrix_strategy(4, 8, 3)) {
        match is_projective(&m).unwrap() {
            Projectivity::Projective { lambda, vector } => {
                prop_assert_eq!(m.combine(&lambda), vector.clone());
                prop_assert!(vector.iter().all(|x| *x >= q(1)));
            }
            Projectivity::Blocked { relation } => {
                prop_assert!(relation.iter().all(|x| !x.is_negative()));
                prop_assert!(m.apply(&relation).iter().all(Zero::is_zero));
            }
        }
    }

    #[test]
    fn json_round_trip(m in matrix_strategy(4, 8, 5)) {
        let text = serde_json::to_string(&m).unwrap();
        let back: IntersectionMatrix = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, m);
    }

    #[test]
    fn big_resolution_euler_number(hyp in any::<bool>(), n in 2u32..10, s in 0i64..150, d in 0i64..40, s1 in 0i64..150) {
        let (kind, n) = if hyp { (VarietyKind::HypersurfaceP4, n) } else { (VarietyKind::DoubleSolidP3, 2 * n) };
        prop_assume!(d <= s && s1 <= s);
        if let Ok(r) = betti_report(kind, n, s, d, s1) {
            prop_assert_eq!(r.big.e, r.e_smooth + 4 * s);
            prop_assert_eq!(r.small.e, r.e_smooth + 2 * s);
            prop_assert_eq!(r.nodal.e, r.e_smooth + s);
            prop_assert_eq!(r.small.b2, 1 + d);
            prop_assert_eq!(r.mixed.e, r.small.e + 2 * s1);
        }
    }

    #[test]
    fn arnold_matches_brute_force(n in 2u32..=4, d in 2u32..=9) {
        prop_assert_eq!(arnold_number(n, d).unwrap(), arnold_brute_force(n, d).into());
    }

    #[test]
    fn combined_bound_is_the_minimum(n in 3u32..=5, d in 2u32..=14) {
        let row = BoundsRow::new(n, d).unwrap();
        prop_assert!(row.combined_upper <= arnold_number(n, d).unwrap());
        prop_assert!(row.combined_upper <= bruce_bound(n, d).unwrap());
        if n == 3 {
            if let Some(m) = miyaoka_bound(d) {
                prop_assert!(row.combined_upper <= m);
            }
        }
    }

    #[test]
    fn chebyshev_composition(m in 0u32..=6, n in 0u32..=6) {
        prop_assert_eq!(chebyshev(m).compose(&chebyshev(n)).unwrap(), chebyshev(m * n));
    }

    #[test]
    fn chebyshev_at_rationals(n in 2u32..=12, num in -20i64..=20) {
        // T_n(x) = 2x T_{n-1}(x) - T_{n-2}(x)
        let x = Rational::new(num.into(), 7.into());
        let t = |k: u32| nodal::polycheb::chebyshev(k).evaluate(&[x.clone()]).unwrap();
        prop_assert_eq!(t(n), q(2) * &x * t(n - 1) - t(n - 2));
        prop_assert_eq!(t(n).abs() <= q(1), x.abs() <= q(1));
    }
}

fn element(m: &Arc<MinimalPolynomial>, c: &[i64]) -> NumberFieldElement {
    NumberFieldElement::new(m.clone(), c.iter().map(|&x| Rational::new(x.into(), 3.into())).collect())
}

fn coeffs(deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, deg)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn number_field_axioms(a in coeffs(4), b in coeffs(4), c in coeffs(4)) {
        let m = Arc::new(MinimalPolynomial::from_i64(&[1, 1, 1, 1, 1]).unwrap());
        let (a, b, c) = (element(&m, &a), element(&m, &b), element(&m, &c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn reduction_is_a_ring_map(a in coeffs(4), b in coeffs(4)) {
        let m = Arc::new(MinimalPolynomial::from_i64(&[2, 0, -4, 0, 1]).unwrap());
        let f = FiniteField::new(&m, 181).unwrap();
        let (a, b) = (element(&m, &a), element(&m, &b));
        let r = |x: &NumberFieldElement| FiniteFieldElement::reduce(x, &f).unwrap();
        prop_assert_eq!(r(&a.mul(&b)), r(&a).mul(&r(&b)));
        prop_assert_eq!(r(&a.add(&b)), r(&a).add(&r(&b)));
    }

    #[test]
    fn sign_vector_masks(s in 1usize..20, mask in any::<u64>()) {
        let mask = mask & ((1u64 << s) - 1);
        let v = SignVector::from_mask(s, mask);
        prop_assert_eq!(v.len(), s);
        prop_assert_eq!(v.negated().negated(), v.clone());
        prop_assert_eq!(v.to_string().len(), s);
    }
}
