//! End-to-end checks on the three six-node family instances with known
//! closed-form reduced maps.

use cluster_reduce::expr::reduced_expression;
use cluster_reduce::maps::LogMap;
use cluster_reduce::reduction::{log_relative_error, Section};
use cluster_reduce::sampling::{log_uniform_points, seeded_rng};
use cluster_reduce::*;
use num_rational::BigRational;

fn fam(r: i64, s: i64, t: i64, p: i64) -> ExchangeMatrix {
    fomin6(QuiverFamilyParams::new(r, s, t, p).unwrap())
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn max_rel(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| ((x - y) / y).abs())
        .fold(0.0, f64::max)
}

fn closed_form_rank2(f: &[f64]) -> Vec<f64> {
    let (f1, f2) = (f[0], f[1]);
    let a = 1.0 + f1 * f1;
    let c = f2 + a * a;
    vec![
        f2.powf(0.75) * c.powf(2.5) / (f1.powf(2.5) * a.powf(6.5)),
        f2.powf(3.5) * c.powi(13) / (f1.powi(13) * a.powi(33)),
    ]
}

fn closed_form_rank4(f: &[f64]) -> Vec<f64> {
    let (f1, f2, f3, f4) = (f[0], f[1], f[2], f[3]);
    let s = 1.0 + f1 + f2;
    vec![
        f3.powi(8) * s * s / (f1 * f1 * f2 * (1.0 + f1)),
        f2.powi(3) * f4 * s / (f1 * (1.0 + f1).powi(4)),
        f3.powi(4) * s / (f1 * f2 * f4.powf(0.125)),
        f3.powi(8) * (1.0 + f1).powi(8) / (f2.powi(8) * f4 * f4),
    ]
}

fn closed_form_one_periodic(f: &[f64]) -> Vec<f64> {
    let (f1, f2) = (f[0], f[1]);
    vec![f2, (1.0 + f2 * f2) / (f1 * f2.powi(3))]
}

struct Setup {
    b: ExchangeMatrix,
    m: usize,
    g: DarbouxBasis,
    s: Section,
    e: ReducedMapEvaluator,
}

fn setup(b: ExchangeMatrix, scale: BigRational, t: Option<[[i64; 2]; 2]>) -> Setup {
    let m = b.detect_period(DEFAULT_MAX_PERIOD).period.unwrap();
    let w = scale_form(&standard_form(&b), &scale).unwrap();
    let mut g = cartan_reduce(&w).unwrap();
    if let Some(t) = t {
        let t = SymplecticChange::new(QMatrix::from_integers(&t.map(|r| r.to_vec())).unwrap())
            .unwrap();
        g = apply_post_transform(&g, &t).unwrap();
    }
    assert!(verify_darboux(&g, &w).unwrap());
    let s = build_section(&g).unwrap();
    let e = ReducedMapEvaluator::new(&b, m, &g, &s).unwrap();
    Setup { b, m, g, s, e }
}

fn example_rank2() -> Setup {
    setup(fam(2, 13, 5, 7), q(1, 1), None)
}

fn example_rank4() -> Setup {
    setup(fam(1, 1, 2, 3), q(1, 1), None)
}

fn example_one_periodic() -> Setup {
    setup(fam(2, 6, 2, 4), q(-1, 2), Some([[-3, -1], [1, 0]]))
}

#[test]
fn reduced_maps_match_closed_forms() {
    let cases: [(Setup, fn(&[f64]) -> Vec<f64>); 3] = [
        (example_rank2(), closed_form_rank2),
        (example_rank4(), closed_form_rank4),
        (example_one_periodic(), closed_form_one_periodic),
    ];
    for (i, (case, closed)) in cases.iter().enumerate() {
        let pts = log_uniform_points(&mut seeded_rng(100 + i as u64), case.g.len(), 100);
        for y in &pts {
            let got = reduced_map_eval(&case.e, y).unwrap();
            let want = closed(y.values());
            let err = max_rel(got.values(), &want);
            assert!(err < 1e-8, "case {i}: {err} at {y:?}");
        }
    }
}

#[test]
fn reduced_expressions_match_evaluator() {
    for (i, case) in [example_rank2(), example_rank4(), example_one_periodic()]
        .iter()
        .enumerate()
    {
        let exprs = reduced_expression(&case.b, case.m, &case.g, &case.s).unwrap();
        assert_eq!(exprs.len(), case.g.len());
        let pts = log_uniform_points(&mut seeded_rng(200 + i as u64), case.g.len(), 100);
        for y in &pts {
            let logs = y.logs();
            let sym: Vec<f64> = exprs.iter().map(|e| e.eval_log(&logs)).collect();
            let num = case.e.apply_log(&logs);
            assert!(log_relative_error(&sym, &num) < 1e-8, "case {i}");
        }
    }
}

#[test]
fn one_periodic_expression_is_readable() {
    let case = example_one_periodic();
    let exprs = reduced_expression(&case.b, case.m, &case.g, &case.s).unwrap();
    assert_eq!(exprs[0].display("f").to_string(), "f2");
}

#[test]
fn canonical_block_reduces_to_conjugate_of_phi() {
    // full rank: π is a diffeomorphism and φ̂ = π ∘ φ ∘ π⁻¹
    let b = ExchangeMatrix::from_i64(&[vec![0, 1], vec![-1, 0]]).unwrap();
    assert_eq!(b.detect_period(12).period, Some(1));
    let g = cartan_reduce(&standard_form(&b)).unwrap();
    let s = build_section(&g).unwrap();
    let exprs = reduced_expression(&b, 1, &g, &s).unwrap();
    // π(u) = (u2, 1/u1), π⁻¹(y) = (1/y2, y1), φ(u) = (u2, (1 + u2)/u1)
    for y in log_uniform_points(&mut seeded_rng(3), 2, 50) {
        let (y1, y2) = (y.values()[0], y.values()[1]);
        let (u1, u2) = (1.0 / y2, y1);
        let (p1, p2) = (u2, (1.0 + u2) / u1);
        let want = [p2, 1.0 / p1];
        let got: Vec<f64> = exprs.iter().map(|e| e.eval(y.values())).collect();
        assert!(max_rel(&got, &want) < 1e-12);
    }
}

#[test]
fn one_periodic_reduced_variables_are_exact() {
    let case = example_one_periodic();
    assert_eq!(case.g.monomials(), vec!["u1·u3^2·u5/(u2^3·u4^3)", "u2·u4^2·u6/(u3^3·u5^3)"]);
}

#[test]
fn verifiers_pass_on_examples() {
    for (i, case) in [example_rank2(), example_rank4(), example_one_periodic()]
        .iter()
        .enumerate()
    {
        let mut rng = seeded_rng(42 + i as u64);
        let pts = log_uniform_points(&mut rng, 6, 100);
        let c = verify_commutation(&case.b, case.m, &case.g, &case.s, &pts, 1e-8).unwrap();
        assert!(c.passed, "commutation {i}: {c:?}");
        let f = verify_fiber_invariance(&case.g, &case.b, case.m, &pts, 1e-8, &mut rng).unwrap();
        assert!(f.passed, "fiber {i}: {f:?}");
        let ys = log_uniform_points(&mut rng, case.g.len(), 100);
        let sy = verify_symplectic(&case.e, &ys, 1e-8).unwrap();
        assert!(sy.passed, "symplectic {i}: {sy:?}");
    }
}

#[test]
fn fiber_invariance_at_zero_displacement_is_exact() {
    let case = example_rank2();
    let v = [0.3, -0.2, 0.1, 0.5, -0.4, 0.7];
    let phi = case.e.iteration_map();
    let pi = case.e.projection_map();
    let a = pi.apply_log(&phi.apply_log(&v));
    let b = pi.apply_log(&phi.apply_log(&v.map(|x| x + 0.0)));
    assert_eq!(a, b);
}

#[test]
fn projected_orbit_satisfies_order_two_recurrence() {
    use cluster_reduce::dual::LogScalar;
    use cluster_reduce::orbit::{orbit, project_orbit};
    let case = example_one_periodic();
    let mut rng = seeded_rng(9);
    for u0 in log_uniform_points(&mut rng, 6, 10) {
        let o = orbit(&case.b, case.m, &u0, 20).unwrap();
        let p = project_orbit(&o, &case.e);
        assert!(p.max_residual() < 1e-8, "{:?}", p.step_residuals);
        let f: Vec<_> = p.log_points.iter().map(|v| v[0]).collect();
        for n in 0..f.len() - 2 {
            // log of (1 + f_{n+1}^2) / (f_n f_{n+1}^3)
            let one = LogScalar::constant(0.0);
            let pred = LogScalar::log_sum_exp(&one, &(f[n + 1] * 2.0)) - f[n] - f[n + 1] * 3.0;
            assert!((f[n + 2] - pred).value().exp_m1().abs() < 1e-8);
        }
    }
}
