//! Property tests for the invariants of mutation, log forms and reduction.

use cluster_reduce::forms::log_jacobian;
use cluster_reduce::linalg::rational_to_f64;
use cluster_reduce::maps::{LogMap, Mutation};
use cluster_reduce::reduction::log_relative_error;
use cluster_reduce::*;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn skew(n: usize, upper: &[i64]) -> ExchangeMatrix {
    let mut rows = vec![vec![0_i64; n]; n];
    let mut it = upper.iter();
    for i in 0..n {
        for j in i + 1..n {
            let x = *it.next().expect("enough entries");
            rows[i][j] = x;
            rows[j][i] = -x;
        }
    }
    ExchangeMatrix::from_i64(&rows).unwrap()
}

/// Skew-symmetric integer matrices with `2 ≤ n ≤ max_n` and `|b_ij| ≤ bound`.
fn skew_matrix(max_n: usize, bound: i64) -> impl Strategy<Value = ExchangeMatrix> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * (n - 1) / 2).prop_map(move |up| skew(n, &up))
    })
}

fn point(n: usize) -> impl Strategy<Value = ClusterPoint> {
    prop::collection::vec(-1.0_f64..=1.0, n).prop_map(|v| ClusterPoint::from_logs(&v).unwrap())
}

fn matrix_and_point(max_n: usize, bound: i64) -> impl Strategy<Value = (ExchangeMatrix, ClusterPoint)> {
    skew_matrix(max_n, bound).prop_flat_map(|b| {
        let n = b.n();
        (Just(b), point(n))
    })
}

fn family(max: i64) -> impl Strategy<Value = ExchangeMatrix> {
    (1..=max, 1..=max, 1..=max, 1..=max)
        .prop_map(|(r, s, t, p)| fomin6(QuiverFamilyParams::new(r, s, t, p).unwrap()))
}

fn period(b: &ExchangeMatrix) -> usize {
    b.detect_period(DEFAULT_MAX_PERIOD).period.expect("family is periodic")
}

/// Family instances on the singular locus `p = r + t`.
fn singular_family(max: i64) -> impl Strategy<Value = ExchangeMatrix> {
    (1..=max, 1..=max, 1..=max)
        .prop_map(|(r, s, t)| fomin6(QuiverFamilyParams::new(r, s, t, r + t).unwrap()))
}

fn nonzero_scale() -> impl Strategy<Value = BigRational> {
    (-6_i64..=6, 1_i64..=5)
        .prop_filter("nonzero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn b_f64(b: &ExchangeMatrix) -> Vec<Vec<f64>> {
    (0..b.n()).map(|i| b.row_f64(i)).collect()
}

fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

proptest! {
    #[test]
    fn mutation_is_an_involution_on_matrices((b, k) in skew_matrix(8, 5).prop_flat_map(|b| {
        let n = b.n();
        (Just(b), 1..=n)
    })) {
        let once = b.mutate(k).unwrap();
        prop_assert!(once.to_rational().is_skew_symmetric());
        prop_assert_eq!(once.mutate(k).unwrap(), b);
    }

    #[test]
    fn mutation_is_an_involution_on_points(((b, u), k) in matrix_and_point(8, 5).prop_flat_map(|bu| {
        let n = bu.0.n();
        (Just(bu), 1..=n)
    })) {
        let (b1, u1) = mutate_point(&b, k, &u).unwrap();
        prop_assert!(u1.values().iter().all(|x| x.is_finite() && *x > 0.0));
        let (b2, u2) = mutate_point(&b1, k, &u1).unwrap();
        prop_assert_eq!(b2, b);
        prop_assert!(log_relative_error(&u2.logs(), &u.logs()) < 1e-12);
    }

    #[test]
    fn sigma_conjugation_is_a_group_action(b in skew_matrix(8, 5), a in -10_i64..10, c in -10_i64..10) {
        prop_assert_eq!(b.sigma_conjugate(a + c), b.sigma_conjugate(a).sigma_conjugate(c));
        prop_assert_eq!(b.sigma_conjugate(b.n() as i64), b.clone());
        let w = standard_form(&b);
        let pulled = pullback_by_sigma(&w, a);
        prop_assert!(pulled.matrix().is_skew_symmetric());
        prop_assert_eq!(pulled.matrix(), &b.sigma_conjugate(a).to_rational());
    }

    #[test]
    fn family_period_is_one_iff_r_equals_t((r, s, t, p) in (1..=12_i64, 1..=12_i64, 1..=12_i64, 1..=12_i64)) {
        let b = fomin6(QuiverFamilyParams::new(r, s, t, p).unwrap());
        let found = b.detect_period(DEFAULT_MAX_PERIOD);
        let m = if r == t { 1 } else { 2 };
        prop_assert_eq!(found.period, Some(m));
        prop_assert_eq!(found.conjugated.unwrap(), b.mutation_chain(m)[m].clone());
    }

    #[test]
    fn iteration_preserves_positivity(b in family(8), logs in prop::collection::vec(-1.0_f64..=1.0, 6)) {
        // finite logs are positive values; the values themselves may overflow f64
        let phi = IterationMap::new(&b, period(&b));
        let mut v = logs;
        for _ in 0..3 {
            v = phi.apply_log(&v);
            prop_assert!(v.iter().all(|x| x.is_finite()));
        }
        let u = ClusterPoint::from_logs(&v[..]).ok();
        prop_assert!(u.is_none_or(|u| u.values().iter().all(|x| *x > 0.0)));
    }

    #[test]
    fn mutation_pulls_back_the_standard_form(((b, u), k) in matrix_and_point(8, 5).prop_flat_map(|bu| {
        let n = bu.0.n();
        (Just(bu), 1..=n)
    })) {
        let d = log_jacobian(&Mutation::new(&b, k).unwrap(), &u).unwrap();
        let target = b_f64(&b.mutate(k).unwrap());
        prop_assert!(d.congruence_residual(&b_f64(&b), &target) < 1e-9);
        let pulled = pullback_by_mutation(&b, k).unwrap();
        prop_assert_eq!(pulled.matrix(), &b.mutate(k).unwrap().to_rational());
    }

    #[test]
    fn congruence_is_linear_in_the_form((b, u) in matrix_and_point(6, 4), lambda in nonzero_scale()) {
        let phi = IterationMap::new(&b, 1);
        let d = log_jacobian(&phi, &u).unwrap();
        let w = b_f64(&b);
        let l = rational_to_f64(&lambda);
        let scaled: Vec<Vec<f64>> = w.iter().map(|r| r.iter().map(|x| x * l).collect()).collect();
        let a = d.congruence(&w);
        let c = d.congruence(&scaled);
        for (ra, rc) in a.iter().zip(&c) {
            for (x, y) in ra.iter().zip(rc) {
                prop_assert!((x * l - y).abs() <= 1e-9 * (1.0 + y.abs()));
            }
        }
    }

    #[test]
    fn rank_is_even_and_kernel_is_exact(b in skew_matrix(8, 5)) {
        let w = standard_form(&b);
        let rk = rank_and_kernel(&w);
        prop_assert_eq!(rk.rank % 2, 0);
        prop_assert_eq!(rk.rank + rk.kernel.len(), b.n());
        for xi in &rk.kernel {
            prop_assert!(is_zero_vec(&w.matrix().mul_vec(xi).unwrap()));
        }
    }

    #[test]
    fn cartan_reduction_gives_darboux_basis(b in skew_matrix(8, 5), lambda in nonzero_scale()) {
        prop_assume!(!b.is_zero());
        let w = scale_form(&standard_form(&b), &lambda).unwrap();
        let g = cartan_reduce(&w).unwrap();
        prop_assert_eq!(g.len(), rank_and_kernel(&w).rank);
        prop_assert!(verify_darboux(&g, &w).unwrap());
        prop_assert_eq!(cartan_reduce(&w).unwrap(), g);
    }

    #[test]
    fn singular_family_has_exact_darboux_basis(b in singular_family(10), lambda in nonzero_scale()) {
        let w = scale_form(&standard_form(&b), &lambda).unwrap();
        let g = cartan_reduce(&w).unwrap();
        prop_assert!(g.len() < 6);
        prop_assert!(verify_darboux(&g, &w).unwrap());
    }

    #[test]
    fn darboux_basis_has_the_kernel_of_the_form(b in skew_matrix(8, 5)) {
        prop_assume!(!b.is_zero());
        let w = standard_form(&b);
        let g = cartan_reduce(&w).unwrap();
        let ker_w = rank_and_kernel(&w).kernel;
        let ker_g = g.matrix().kernel();
        prop_assert_eq!(ker_w.len(), ker_g.len());
        for xi in &ker_w {
            prop_assert!(is_zero_vec(&g.matrix().mul_vec(xi).unwrap()));
        }
        for xi in &ker_g {
            prop_assert!(is_zero_vec(&w.matrix().mul_vec(xi).unwrap()));
        }
    }

    #[test]
    fn first_pivot_is_lexicographic(b in skew_matrix(8, 5)) {
        prop_assume!(!b.is_zero());
        let n = b.n();
        let (i, j) = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !b.get(i, j).is_zero())
            .unwrap();
        let g = cartan_reduce(&standard_form(&b)).unwrap();
        let w_ij = BigRational::from_integer(b.get(i, j).clone());
        for c in 0..n {
            let bic = BigRational::from_integer(b.get(i, c).clone());
            prop_assert_eq!(&g.matrix()[(0, c)], &(bic / &w_ij));
            prop_assert_eq!(&g.matrix()[(1, c)], &BigRational::from_integer(b.get(j, c).clone()));
        }
    }

    #[test]
    fn reduced_map_does_not_depend_on_the_section(
        b in singular_family(6),
        ys in prop::collection::vec(prop::collection::vec(-1.0_f64..=1.0, 4), 5),
    ) {
        let w = standard_form(&b);
        let g = cartan_reduce(&w).unwrap();
        let k2 = g.len();
        let m = period(&b);
        let base = ReducedMapEvaluator::new(&b, m, &g, &build_section(&g).unwrap()).unwrap();
        let mut alternatives = 0;
        for cols in subsets(6, k2) {
            if let Ok(s) = Section::from_columns(&g, &cols) {
                alternatives += 1;
                let e = ReducedMapEvaluator::new(&b, m, &g, &s).unwrap();
                for y in &ys {
                    let y = &y[..k2];
                    prop_assert!(log_relative_error(&e.apply_log(y), &base.apply_log(y)) < 1e-10);
                }
            }
        }
        prop_assert!(alternatives >= 1);
    }

    #[test]
    fn jacobian_congruence_iff_exact_periodicity(
        (b, pts) in skew_matrix(6, 3).prop_flat_map(|b| {
            let n = b.n();
            (Just(b), prop::collection::vec(point(n), 3))
        }),
        m in 1_usize..=3,
    ) {
        let report = check_form_invariance(&b, m, &pts, 1e-9).unwrap();
        prop_assert!(report.verdicts_agree(), "{:?}", report);
    }

    #[test]
    fn family_instances_pass_the_invariance_check(b in family(8), pts in prop::collection::vec(point(6), 3)) {
        let report = check_form_invariance(&b, period(&b), &pts, 1e-9).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}
