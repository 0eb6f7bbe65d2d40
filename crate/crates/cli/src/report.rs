//! Report pieces shared by the commands, and their text rendering.

use std::fmt::Write;

use cluster_reduce::forms::InvarianceReport;
use cluster_reduce::reduction::VerificationReport;
use serde::Serialize;
use serde_json::Value;

/// Rounds to three significant digits, the precision residuals are
/// reported at.
pub fn sig3(x: f64) -> f64 {
    format!("{x:.2e}").parse().unwrap_or(x)
}

pub fn fmt_sig3(x: f64) -> String {
    format!("{x:.2e}")
}

/// A positive value given by its log; values beyond `f64` range are
/// written as `e^L`.
pub fn fmt_log_value(log: f64) -> String {
    if log.abs() < 700.0 {
        format!("{:.9e}", log.exp())
    } else {
        format!("e^{log:.9e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: String,
    pub passed: bool,
    /// `None` for exact checks.
    pub max_residual: Option<f64>,
    pub points: usize,
    pub checks: usize,
    pub worst_point: Option<usize>,
    /// Coordinates of the worst point, listed when the check failed.
    pub worst_u: Option<Vec<String>>,
}

impl CheckSummary {
    pub fn exact(name: &str, passed: bool) -> Self {
        CheckSummary {
            name: name.to_string(),
            passed,
            max_residual: None,
            points: 0,
            checks: 1,
            worst_point: None,
            worst_u: None,
        }
    }

    pub fn numeric(
        name: &str,
        max_residual: f64,
        tol: f64,
        points: usize,
        checks: usize,
        worst_point: Option<usize>,
    ) -> Self {
        CheckSummary {
            name: name.to_string(),
            passed: !max_residual.is_nan() && max_residual < tol,
            max_residual: Some(sig3(max_residual)),
            points,
            checks,
            worst_point,
            worst_u: None,
        }
    }

    pub fn from_verification(r: &VerificationReport) -> Self {
        let mut s = Self::numeric(r.name, r.max_residual, r.tol, r.points, r.checks, r.worst_point);
        s.passed = r.passed;
        s
    }

    pub fn from_invariance(r: &InvarianceReport) -> Self {
        let mut s = Self::numeric(
            "form_invariance",
            r.max_residual,
            r.tol,
            r.points,
            r.points,
            r.worst_point,
        );
        s.passed = r.numeric_pass;
        s
    }

    /// Attaches the coordinates of the worst point if the check failed.
    pub fn with_worst_u(mut self, points: &[Vec<f64>]) -> Self {
        if !self.passed {
            if let Some(p) = self.worst_point.and_then(|i| points.get(i)) {
                self.worst_u = Some(p.iter().map(|&l| fmt_log_value(l)).collect());
            }
        }
        self
    }

    pub fn render(&self, out: &mut Text) {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        match self.max_residual {
            None => out.line(1, format!("{}: {verdict} (exact)", self.name)),
            Some(r) => {
                let mut line = format!(
                    "{}: {verdict}, max residual {} over {} points ({} checks)",
                    self.name,
                    fmt_sig3(r),
                    self.points,
                    self.checks
                );
                if let Some(w) = self.worst_point {
                    let _ = write!(line, ", worst point {w}");
                }
                out.line(1, line);
                if let Some(u) = &self.worst_u {
                    out.line(2, format!("worst u = ({})", u.join(", ")));
                }
            }
        }
    }
}

/// Seed, budget and outcomes of the randomized checks of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub passed: bool,
    pub checks: Vec<CheckSummary>,
}

impl Verification {
    pub fn new(seed: u64, trials: usize, tol: f64, checks: Vec<CheckSummary>) -> Self {
        Verification {
            seed,
            trials,
            tol,
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }

    pub fn render(&self, out: &mut Text) {
        out.line(
            0,
            format!(
                "verification (seed {}, trials {}, tol {}): {}",
                self.seed,
                self.trials,
                fmt_sig3(self.tol),
                if self.passed { "pass" } else { "FAIL" }
            ),
        );
        for c in &self.checks {
            c.render(out);
        }
    }
}

/// Indented line-oriented text output.
#[derive(Debug, Default)]
pub struct Text(String);

impl Text {
    pub fn line(&mut self, indent: usize, s: impl AsRef<str>) {
        for _ in 0..indent {
            self.0.push_str("  ");
        }
        self.0.push_str(s.as_ref());
        self.0.push('\n');
    }

    /// Rows of a JSON matrix as `[a, b, c]` lines.
    pub fn matrix(&mut self, indent: usize, m: &Value) {
        for row in m.as_array().into_iter().flatten() {
            let cells: Vec<String> = row
                .as_array()
                .into_iter()
                .flatten()
                .map(|v| match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            self.line(indent, format!("[{}]", cells.join(", ")));
        }
    }

    pub fn finish(self) -> String {
        self.0
    }
}
