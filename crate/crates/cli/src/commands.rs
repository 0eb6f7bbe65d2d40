//! The `period`, `reduce`, `verify`, `orbit` and `example` commands.

use cluster_reduce::expr::reduced_expression;
use cluster_reduce::forms::log_jacobian;
use cluster_reduce::linalg::format_rational;
use cluster_reduce::maps::Mutation;
use cluster_reduce::orbit::{orbit, project_orbit};
use cluster_reduce::reduction::{format_matrix, PIVOT_RULE};
use cluster_reduce::sampling::{log_uniform_points, seeded_rng};
use cluster_reduce::{
    apply_post_transform, build_section, cartan_reduce, check_form_invariance, pullback_by_sigma,
    rank_and_kernel, render_recurrence, scale_form, standard_form, verify_commutation,
    verify_fiber_invariance, verify_symplectic, ClusterPoint, DarbouxBasis, ExchangeMatrix,
    QMatrix, ReducedMapEvaluator, Section, SymplecticChange,
};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::document::{integer_matrix_json, QuiverDocument};
use crate::error::CliError;
use crate::report::{fmt_log_value, fmt_sig3, sig3, CheckSummary, Text, Verification};
use crate::{RunConfig, EXIT_FAILED, EXIT_FULL_RANK, EXIT_OK};

/// A finished command: JSON report, its text rendering, and exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: u8,
    pub json: Value,
    pub text: String,
}

impl Outcome {
    fn new(code: u8, report: &impl Serialize, text: Text) -> Self {
        Outcome {
            code,
            json: serde_json::to_value(report).expect("reports serialize"),
            text: text.finish(),
        }
    }

    /// Pretty JSON or plain text, newline-terminated.
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("reports serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

fn rational_matrix_json(m: &QMatrix) -> Value {
    json!(format_matrix(m))
}

fn header(out: &mut Text, label: &Option<String>, n: usize) {
    if let Some(label) = label {
        out.line(0, format!("label: {label}"));
    }
    out.line(0, format!("n: {n}"));
}

fn no_period_verdict(max_period: usize) -> String {
    format!("none up to {max_period}")
}

#[derive(Serialize)]
struct PeriodReport {
    command: &'static str,
    label: Option<String>,
    n: usize,
    max_period: usize,
    verdict: String,
    period: Option<usize>,
    certificate: Option<Value>,
    recurrence: Option<Vec<String>>,
}

/// Detects the period and prints the certificate `σ⁻ᵐBσᵐ = μₘ⋯μ₁(B)`.
pub fn cmd_period(doc: &QuiverDocument, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let b = doc.exchange_matrix();
    let found = b.detect_period(cfg.max_period);
    let recurrence = match found.period {
        Some(m) => Some(render_recurrence(&b, m)?.lines().map(str::to_string).collect()),
        None => None,
    };
    let report = PeriodReport {
        command: "period",
        label: doc.label.clone(),
        n: b.n(),
        max_period: cfg.max_period,
        verdict: match found.period {
            Some(m) => format!("period: {m}"),
            None => no_period_verdict(cfg.max_period),
        },
        period: found.period,
        certificate: found.conjugated.as_ref().map(integer_matrix_json),
        recurrence,
    };
    let mut out = Text::default();
    out.line(0, &report.verdict);
    header(&mut out, &report.label, report.n);
    out.line(0, format!("max_period: {}", report.max_period));
    if let (Some(m), Some(c)) = (report.period, &report.certificate) {
        let word = match m {
            1 => "μ_1(B)".to_string(),
            2 => "μ_2∘μ_1(B)".to_string(),
            _ => format!("μ_{m}∘…∘μ_1(B)"),
        };
        out.line(0, format!("certificate: {word} = σ^-{m}·B·σ^{m} ="));
        out.matrix(1, c);
    }
    if let Some(rec) = &report.recurrence {
        out.line(0, "recurrence:");
        for r in rec {
            out.line(1, r);
        }
    }
    Ok(Outcome::new(EXIT_OK, &report, out))
}

/// Exact reduction data for the scaled standard form of `B`.
struct Reduction {
    rank: usize,
    g: DarbouxBasis,
    s: Section,
}

fn reduce_form(b: &ExchangeMatrix, cfg: &RunConfig) -> Result<Option<Reduction>, CliError> {
    let w = scale_form(&standard_form(b), &cfg.scale)?;
    let rank = rank_and_kernel(&w).rank;
    if rank == 0 {
        return Ok(None);
    }
    let mut g = cartan_reduce(&w)?;
    if let Some(t) = &cfg.post_transform {
        if t.rows() != rank || t.cols() != rank {
            return Err(CliError::Input(format!(
                "post-transform must be {rank}×{rank}, got {}×{}",
                t.rows(),
                t.cols()
            )));
        }
        let t = SymplecticChange::new(t.clone()).map_err(|_| CliError::NotSymplectic)?;
        g = apply_post_transform(&g, &t)?;
    }
    let s = build_section(&g)?;
    Ok(Some(Reduction { rank, g, s }))
}

#[derive(Serialize)]
struct SectionOut {
    /// 1-based source coordinates carrying the section.
    columns: Vec<usize>,
    matrix: Value,
}

#[derive(Serialize)]
struct ReduceReport {
    command: &'static str,
    label: Option<String>,
    n: usize,
    max_period: usize,
    period: Option<usize>,
    rank: usize,
    scale: String,
    pivot_rule: &'static str,
    post_transform: Option<Value>,
    basis: Value,
    linear_forms: Vec<String>,
    reduced_variables: Vec<String>,
    section: Option<SectionOut>,
    reduced_map: Option<Vec<String>>,
    verification: Option<Verification>,
    notices: Vec<String>,
}

fn run_verifiers(
    b: &ExchangeMatrix,
    m: usize,
    red: &Reduction,
    e: &ReducedMapEvaluator,
    cfg: &RunConfig,
) -> Result<Verification, CliError> {
    let mut rng = seeded_rng(cfg.seed);
    let pts = log_uniform_points(&mut rng, b.n(), cfg.trials);
    let logs: Vec<Vec<f64>> = pts.iter().map(ClusterPoint::logs).collect();
    let mut checks = Vec::new();
    let c = verify_commutation(b, m, &red.g, &red.s, &pts, cfg.tol)?;
    checks.push(CheckSummary::from_verification(&c).with_worst_u(&logs));
    if red.rank < b.n() {
        let f = verify_fiber_invariance(&red.g, b, m, &pts, cfg.tol, &mut rng)?;
        checks.push(CheckSummary::from_verification(&f).with_worst_u(&logs));
    }
    let ys = log_uniform_points(&mut rng, red.rank, cfg.trials);
    let ylogs: Vec<Vec<f64>> = ys.iter().map(ClusterPoint::logs).collect();
    let s = verify_symplectic(e, &ys, cfg.tol)?;
    checks.push(CheckSummary::from_verification(&s).with_worst_u(&ylogs));
    Ok(Verification::new(cfg.seed, cfg.trials, cfg.tol, checks))
}

/// Reduces `φ` to the symplectic map `φ̂` and verifies the result.
pub fn cmd_reduce(doc: &QuiverDocument, cfg: &RunConfig) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let b = doc.exchange_matrix();
    let n = b.n();
    let period = b.detect_period(cfg.max_period).period;
    let mut report = ReduceReport {
        command: "reduce",
        label: doc.label.clone(),
        n,
        max_period: cfg.max_period,
        period,
        rank: 0,
        scale: format_rational(&cfg.scale),
        pivot_rule: PIVOT_RULE,
        post_transform: cfg.post_transform.as_ref().map(rational_matrix_json),
        basis: json!([]),
        linear_forms: Vec::new(),
        reduced_variables: Vec::new(),
        section: None,
        reduced_map: None,
        verification: None,
        notices: Vec::new(),
    };
    let mut code = EXIT_OK;
    match reduce_form(&b, cfg)? {
        None => report.notices.push("rank 0: nothing to reduce".into()),
        Some(red) => {
            report.rank = red.rank;
            report.basis = rational_matrix_json(red.g.matrix());
            report.linear_forms = numbered("g", &red.g.linear_forms());
            report.reduced_variables = numbered("f", &red.g.monomials());
            report.section = Some(SectionOut {
                columns: red.s.columns().iter().map(|c| c + 1).collect(),
                matrix: rational_matrix_json(red.s.matrix()),
            });
            if red.rank == n {
                report
                    .notices
                    .push("full rank: π is a diffeomorphism, no dimension is gained".into());
                code = EXIT_FULL_RANK;
            }
            match period {
                Some(m) => {
                    let exprs = reduced_expression(&b, m, &red.g, &red.s)?;
                    report.reduced_map = Some(
                        exprs
                            .iter()
                            .enumerate()
                            .map(|(i, e)| format!("f{}' = {}", i + 1, e.display("f")))
                            .collect(),
                    );
                    let e = ReducedMapEvaluator::new(&b, m, &red.g, &red.s)?;
                    let v = run_verifiers(&b, m, &red, &e, cfg)?;
                    if !v.passed {
                        code = EXIT_FAILED;
                    }
                    report.verification = Some(v);
                }
                None => report.notices.push(format!(
                    "no period up to {}: reduced map and verifiers skipped",
                    cfg.max_period
                )),
            }
        }
    }
    let mut out = Text::default();
    out.line(
        0,
        match period {
            Some(m) => format!("period: {m}"),
            None => format!("period: {}", no_period_verdict(cfg.max_period)),
        },
    );
    header(&mut out, &report.label, n);
    out.line(0, format!("max_period: {}", report.max_period));
    out.line(0, format!("rank: {}", report.rank));
    out.line(0, format!("scale: {}", report.scale));
    out.line(0, format!("pivot_rule: {}", report.pivot_rule));
    if let Some(t) = &report.post_transform {
        out.line(0, "post_transform:");
        out.matrix(1, t);
    }
    if report.rank > 0 {
        out.line(0, "basis:");
        out.matrix(1, &report.basis);
        list(&mut out, "linear_forms:", &report.linear_forms);
        list(&mut out, "reduced_variables:", &report.reduced_variables);
    }
    if let Some(s) = &report.section {
        let cols: Vec<String> = s.columns.iter().map(usize::to_string).collect();
        out.line(0, format!("section (columns {}):", cols.join(", ")));
        out.matrix(1, &s.matrix);
    }
    if let Some(rm) = &report.reduced_map {
        list(&mut out, "reduced_map:", rm);
    }
    if let Some(v) = &report.verification {
        v.render(&mut out);
    }
    for notice in &report.notices {
        out.line(0, format!("notice: {notice}"));
    }
    Ok(Outcome::new(code, &report, out))
}

fn numbered(prefix: &str, items: &[String]) -> Vec<String> {
    items
        .iter()
        .enumerate()
        .map(|(i, s)| format!("{prefix}{} = {s}", i + 1))
        .collect()
}

fn list(out: &mut Text, title: &str, items: &[String]) {
    out.line(0, title);
    for item in items {
        out.line(1, item);
    }
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    label: Option<String>,
    n: usize,
    max_period: usize,
    claimed_period: Option<usize>,
    period: Option<usize>,
    verdict: String,
    verification: Option<Verification>,
}

/// Exact `Pᵀ W P = σ⁻¹ W σ` for the log-Jacobian `P` of the shift, and
/// agreement of the shift pullback with the conjugated matrix.
fn shift_pullback_exact(b: &ExchangeMatrix, m: usize) -> bool {
    let n = b.n();
    let w = standard_form(b);
    let mut p = QMatrix::zeros(n, n);
    for i in 0..n {
        p[(i, (i + 1) % n)] = BigRational::one();
    }
    let lhs = p
        .transpose()
        .mul(w.matrix())
        .and_then(|x| x.mul(&p))
        .expect("square matrices");
    lhs == *pullback_by_sigma(&w, 1).matrix()
        && *pullback_by_sigma(&w, m as i64).matrix() == b.sigma_conjugate(m as i64).to_rational()
}

fn mutation_pullback_check(b: &ExchangeMatrix, pts: &[ClusterPoint], cfg: &RunConfig) -> Result<CheckSummary, CliError> {
    let n = b.n();
    let source: Vec<Vec<f64>> = (0..n).map(|i| b.row_f64(i)).collect();
    let mut worst = (0.0_f64, None);
    for k in 1..=n {
        let mutated = b.mutate(k)?;
        let target: Vec<Vec<f64>> = (0..n).map(|i| mutated.row_f64(i)).collect();
        let map = Mutation::new(b, k)?;
        for (idx, u) in pts.iter().enumerate() {
            let r = log_jacobian(&map, u)?.congruence_residual(&source, &target);
            if worst.1.is_none() || r > worst.0 || r.is_nan() {
                worst = (r, Some(idx));
            }
        }
    }
    Ok(CheckSummary::numeric(
        "mutation_pullback",
        worst.0,
        cfg.tol,
        pts.len(),
        n * pts.len(),
        worst.1,
    ))
}

/// Checks invariance of the standard form under `φ`, exactly and at
/// random points, plus the pullback laws of `σ` and of each mutation.
pub fn cmd_verify(doc: &QuiverDocument, cfg: &RunConfig, claimed: Option<usize>) -> Result<Outcome, CliError> {
    cfg.validate()?;
    if claimed == Some(0) {
        return Err(CliError::Input("--period must be at least 1".into()));
    }
    let b = doc.exchange_matrix();
    let period = match claimed {
        Some(m) => Some(m),
        None => b.detect_period(cfg.max_period).period,
    };
    let mut report = VerifyReport {
        command: "verify",
        label: doc.label.clone(),
        n: b.n(),
        max_period: cfg.max_period,
        claimed_period: claimed,
        period,
        verdict: no_period_verdict(cfg.max_period),
        verification: None,
    };
    let mut code = EXIT_FAILED;
    if let Some(m) = period {
        let pts = log_uniform_points(&mut seeded_rng(cfg.seed), b.n(), cfg.trials);
        let logs: Vec<Vec<f64>> = pts.iter().map(ClusterPoint::logs).collect();
        let inv = check_form_invariance(&b, m, &pts, cfg.tol)?;
        let checks = vec![
            CheckSummary::exact("exact_periodicity", inv.exact_pass),
            CheckSummary::from_invariance(&inv).with_worst_u(&logs),
            CheckSummary::exact("shift_pullback", shift_pullback_exact(&b, m)),
            mutation_pullback_check(&b, &pts, cfg)?.with_worst_u(&logs),
        ];
        let v = Verification::new(cfg.seed, cfg.trials, cfg.tol, checks);
        report.verdict = if v.passed { "pass" } else { "FAIL" }.to_string();
        if v.passed {
            code = EXIT_OK;
        }
        report.verification = Some(v);
    }
    let mut out = Text::default();
    out.line(0, format!("verdict: {}", report.verdict));
    header(&mut out, &report.label, report.n);
    out.line(0, format!("max_period: {}", report.max_period));
    if let Some(c) = report.claimed_period {
        out.line(0, format!("claimed_period: {c}"));
    }
    match report.period {
        Some(m) => out.line(0, format!("period: {m}")),
        None => out.line(0, format!("period: {}", no_period_verdict(cfg.max_period))),
    }
    if let Some(v) = &report.verification {
        v.render(&mut out);
    }
    Ok(Outcome::new(code, &report, out))
}

#[derive(Serialize)]
struct ProjectionOut {
    rank: usize,
    reduced_variables: Vec<String>,
    points: Vec<Vec<String>>,
    /// Relative error of `π(u⁽ⁿ⁺¹⁾)` against `φ̂(π(u⁽ⁿ⁾))`, one per step.
    step_residuals: Vec<f64>,
    max_residual: f64,
    tol: f64,
    passed: bool,
}

#[derive(Serialize)]
struct OrbitReport {
    command: &'static str,
    label: Option<String>,
    n: usize,
    max_period: usize,
    period: Option<usize>,
    steps: usize,
    orbit: Vec<Vec<String>>,
    projection: Option<ProjectionOut>,
    notices: Vec<String>,
}

fn fmt_point(p: &[f64]) -> Vec<String> {
    p.iter().map(|&l| fmt_log_value(l)).collect()
}

/// Iterates `φ` from `u0` (all ones by default) and, for singular `B`,
/// checks the projected orbit step by step against `φ̂`.
pub fn cmd_orbit(
    doc: &QuiverDocument,
    cfg: &RunConfig,
    u0: Option<Vec<f64>>,
    steps: usize,
) -> Result<Outcome, CliError> {
    cfg.validate()?;
    let b = doc.exchange_matrix();
    let n = b.n();
    let u0 = match u0 {
        None => ClusterPoint::ones(n),
        Some(v) if v.len() != n => {
            return Err(CliError::Input(format!("--u0 needs {n} values, got {}", v.len())))
        }
        Some(v) => ClusterPoint::new(v)?,
    };
    let period = b.detect_period(cfg.max_period).period;
    let mut report = OrbitReport {
        command: "orbit",
        label: doc.label.clone(),
        n,
        max_period: cfg.max_period,
        period,
        steps,
        orbit: Vec::new(),
        projection: None,
        notices: Vec::new(),
    };
    let mut code = EXIT_OK;
    match period {
        None => {
            report
                .notices
                .push(format!("no period up to {}: the iteration map is undefined", cfg.max_period));
            code = EXIT_FAILED;
        }
        Some(m) => {
            let o = orbit(&b, m, &u0, steps)?;
            report.orbit = o.logs().iter().map(|p| fmt_point(p)).collect();
            match reduce_form(&b, cfg)? {
                Some(red) if red.rank < n => {
                    let e = ReducedMapEvaluator::new(&b, m, &red.g, &red.s)?;
                    let p = project_orbit(&o, &e);
                    let max = p.max_residual();
                    let passed = !max.is_nan() && max < cfg.tol;
                    if !passed {
                        code = EXIT_FAILED;
                    }
                    report.projection = Some(ProjectionOut {
                        rank: red.rank,
                        reduced_variables: numbered("f", &red.g.monomials()),
                        points: p.logs().iter().map(|q| fmt_point(q)).collect(),
                        step_residuals: p.step_residuals.iter().map(|&r| sig3(r)).collect(),
                        max_residual: sig3(max),
                        tol: cfg.tol,
                        passed,
                    });
                }
                Some(_) => report
                    .notices
                    .push("full rank: no projection to a lower dimension".into()),
                None => report.notices.push("rank 0: nothing to reduce".into()),
            }
        }
    }
    let mut out = Text::default();
    match period {
        Some(m) => out.line(0, format!("period: {m}")),
        None => out.line(0, format!("period: {}", no_period_verdict(cfg.max_period))),
    }
    header(&mut out, &report.label, n);
    out.line(0, format!("max_period: {}", report.max_period));
    out.line(0, format!("steps: {steps}"));
    if !report.orbit.is_empty() {
        out.line(0, "orbit:");
        for (i, p) in report.orbit.iter().enumerate() {
            out.line(1, format!("{i}: ({})", p.join(", ")));
        }
    }
    if let Some(p) = &report.projection {
        out.line(
            0,
            format!(
                "projection (rank {}): {}, max residual {} (tol {})",
                p.rank,
                if p.passed { "pass" } else { "FAIL" },
                fmt_sig3(p.max_residual),
                fmt_sig3(p.tol)
            ),
        );
        list(&mut out, "reduced_variables:", &p.reduced_variables);
        out.line(0, "projected orbit:");
        for (i, q) in p.points.iter().enumerate() {
            let mut line = format!("{i}: ({})", q.join(", "));
            if i > 0 {
                line.push_str(&format!("  residual {}", fmt_sig3(p.step_residuals[i - 1])));
            }
            out.line(1, line);
        }
    }
    for notice in &report.notices {
        out.line(0, format!("notice: {notice}"));
    }
    Ok(Outcome::new(code, &report, out))
}

/// Writes a quiver document for a named family instance.
pub fn cmd_example(name: &str, params: &[i64]) -> Result<Outcome, CliError> {
    let doc = QuiverDocument::example(name, params)?;
    let json = doc.to_json();
    let mut text = serde_json::to_string_pretty(&json)?;
    text.push('\n');
    Ok(Outcome {
        code: EXIT_OK,
        json,
        text,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use cluster_reduce::{fomin6, QuiverFamilyParams};

    fn doc(r: i64, s: i64, t: i64, p: i64) -> QuiverDocument {
        QuiverDocument {
            source: crate::Source::Family(QuiverFamilyParams::new(r, s, t, p).unwrap()),
            label: None,
        }
    }

    fn matrix_doc(rows: &[Vec<i64>]) -> QuiverDocument {
        QuiverDocument {
            source: crate::Source::Matrix(ExchangeMatrix::from_i64(rows).unwrap()),
            label: None,
        }
    }

    fn cfg() -> RunConfig {
        RunConfig {
            trials: 20,
            ..RunConfig::default()
        }
    }

    #[test]
    fn period_reports() {
        let out = cmd_period(&doc(2, 13, 5, 7), &cfg()).unwrap();
        assert!(out.text.starts_with("period: 2\n"));
        assert_eq!(out.json["period"], 2);
        let mut c = cfg();
        c.max_period = 1;
        let out = cmd_period(&doc(2, 13, 5, 7), &c).unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert!(out.text.starts_with("none up to 1\n"));
        assert!(out.json["period"].is_null());
    }

    #[test]
    fn reduce_lists_reduced_variables() {
        let out = cmd_reduce(&doc(2, 13, 5, 7), &cfg()).unwrap();
        assert_eq!(out.code, EXIT_OK, "{}", out.text);
        assert_eq!(
            out.json["reduced_variables"][0],
            "f1 = u2·u4^(7/2)·u6^(5/2)/(u3^(13/2)·u5^(13/2))"
        );
        assert_eq!(out.json["verification"]["passed"], true);
    }

    #[test]
    fn zero_matrix_has_nothing_to_reduce() {
        let out = cmd_reduce(&matrix_doc(&[vec![0, 0], vec![0, 0]]), &cfg()).unwrap();
        assert_eq!(out.code, EXIT_OK);
        assert!(out.text.contains("rank 0: nothing to reduce"));
        let v = cmd_verify(&matrix_doc(&[vec![0, 0], vec![0, 0]]), &cfg(), None).unwrap();
        assert_eq!(v.code, EXIT_OK, "{}", v.text);
    }

    #[test]
    fn full_rank_is_flagged() {
        let out = cmd_reduce(&matrix_doc(&[vec![0, 1], vec![-1, 0]]), &cfg()).unwrap();
        assert_eq!(out.code, EXIT_FULL_RANK, "{}", out.text);
    }

    #[test]
    fn non_symplectic_post_transform() {
        let mut c = cfg();
        c.post_transform = Some(QMatrix::from_integers(&[vec![2, 0], vec![0, 1]]).unwrap());
        let err = cmd_reduce(&doc(2, 6, 2, 4), &c).unwrap_err();
        assert_eq!(err.exit_code(), crate::EXIT_NOT_SYMPLECTIC);
        c.post_transform = Some(QMatrix::identity(3));
        assert_eq!(cmd_reduce(&doc(2, 6, 2, 4), &c).unwrap_err().exit_code(), crate::EXIT_INPUT);
    }

    #[test]
    fn verify_rejects_a_wrong_claimed_period() {
        let ok = cmd_verify(&doc(1, 1, 2, 3), &cfg(), None).unwrap();
        assert_eq!(ok.code, EXIT_OK, "{}", ok.text);
        let bad = cmd_verify(&doc(1, 1, 2, 3), &cfg(), Some(1)).unwrap();
        assert_eq!(bad.code, EXIT_FAILED);
        assert!(bad.text.contains("exact_periodicity: FAIL"));
    }

    #[test]
    fn orbit_of_one_periodic_example() {
        let mut c = cfg();
        c.scale = BigRational::new((-1).into(), 2.into());
        c.post_transform = Some(QMatrix::from_integers(&[vec![-3, -1], vec![1, 0]]).unwrap());
        let out = cmd_orbit(&doc(2, 6, 2, 4), &c, None, 20).unwrap();
        assert_eq!(out.code, EXIT_OK, "{}", out.text);
        assert_eq!(out.json["orbit"].as_array().unwrap().len(), 21);
        let zero = cmd_orbit(&doc(2, 6, 2, 4), &c, None, 0).unwrap();
        assert_eq!(zero.json["orbit"].as_array().unwrap().len(), 1);
        assert!(cmd_orbit(&doc(2, 6, 2, 4), &c, Some(vec![1.0; 5]), 1).is_err());
        assert!(cmd_orbit(&doc(2, 6, 2, 4), &c, Some(vec![1.0, 1.0, 1.0, 1.0, 1.0, -1.0]), 1).is_err());
    }

    #[test]
    fn example_document_round_trips() {
        let out = cmd_example("fomin6", &[2, 6, 2, 4]).unwrap();
        let back = QuiverDocument::parse(&out.text).unwrap();
        assert_eq!(back.exchange_matrix(), fomin6(QuiverFamilyParams::new(2, 6, 2, 4).unwrap()));
    }
}
