//! Log 2-forms `Σ_{i<j} w_ij du_i/u_i ∧ du_j/u_j`.
//!
//! In log coordinates `v = log u` such a form has constant coefficients, so
//! it is stored as its skew-symmetric rational coefficient matrix `W`. The
//! pullback of a log form along a map with log-Jacobian `D` has coefficient
//! matrix `Dᵀ W D`, which is what the numerical checks compare.

use num_rational::BigRational;
use num_traits::Zero;

use crate::dual::Dual;
use crate::error::{Error, Result};
use crate::linalg::{max_abs_f64, QMatrix};
use crate::maps::{IterationMap, LogMap};
use crate::quiver::{ClusterPoint, ExchangeMatrix};

/// Where a form came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    StandardFromB,
    Scaled(BigRational),
    Residual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogTwoForm {
    w: QMatrix,
    pub provenance: Provenance,
}

impl LogTwoForm {
    pub fn new(w: QMatrix, provenance: Provenance) -> Result<Self> {
        if w.rows() != w.cols() {
            return Err(Error::ShapeMismatch {
                expected: w.rows(),
                got: w.cols(),
            });
        }
        if let Some((i, j)) = first_skew_violation(&w) {
            return Err(Error::NotSkewSymmetric { i: i + 1, j: j + 1 });
        }
        Ok(LogTwoForm { w, provenance })
    }

    pub fn n(&self) -> usize {
        self.w.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.w
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero()
    }
}

fn first_skew_violation(w: &QMatrix) -> Option<(usize, usize)> {
    let n = w.rows();
    (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .find(|&(i, j)| w[(i, j)] != -w[(j, i)].clone())
}

/// The standard log presymplectic form, whose coefficient matrix is `B`.
pub fn standard_form(b: &ExchangeMatrix) -> LogTwoForm {
    LogTwoForm {
        w: b.to_rational(),
        provenance: Provenance::StandardFromB,
    }
}

pub fn scale_form(w: &LogTwoForm, lambda: &BigRational) -> Result<LogTwoForm> {
    if lambda.is_zero() {
        return Err(Error::ZeroScale);
    }
    Ok(LogTwoForm {
        w: w.w.scale(lambda),
        provenance: Provenance::Scaled(lambda.clone()),
    })
}

/// Exact rank `2k` and a rational basis of the kernel of `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankKernel {
    pub rank: usize,
    pub kernel: Vec<Vec<BigRational>>,
}

impl RankKernel {
    pub fn half_rank(&self) -> usize {
        self.rank / 2
    }
}

pub fn rank_and_kernel(w: &LogTwoForm) -> RankKernel {
    let rank = w.w.rank();
    debug_assert_eq!(rank % 2, 0, "skew-symmetric matrices have even rank");
    let kernel = w.w.kernel();
    debug_assert_eq!(kernel.len(), w.n() - rank);
    RankKernel { rank, kernel }
}

/// Pullback of `W` by `σᵐ`: coefficient matrix `σ⁻ᵐ W σᵐ`.
pub fn pullback_by_sigma(w: &LogTwoForm, m: i64) -> LogTwoForm {
    let n = w.n();
    let shift = m.rem_euclid(n.max(1) as i64) as usize;
    let mut out = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = w.w[((i + n - shift) % n, (j + n - shift) % n)].clone();
        }
    }
    LogTwoForm {
        w: out,
        provenance: w.provenance.clone(),
    }
}

/// Pullback of the standard form of `B` by the point mutation `μ_k`
/// (1-based), which is the standard form of `μ_k(B)`.
pub fn pullback_by_mutation(b: &ExchangeMatrix, k: usize) -> Result<LogTwoForm> {
    Ok(standard_form(&b.mutate(k)?))
}

/// Matrix of logarithmic derivatives `∂ log map_a / ∂ log u_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogJacobian {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<f64>>,
}

impl LogJacobian {
    /// `Dᵀ W D` for a coefficient matrix `W` on the target.
    pub fn congruence(&self, w: &[Vec<f64>]) -> Vec<Vec<f64>> {
        let d = &self.entries;
        // wd = W D  (rows × cols)
        let wd: Vec<Vec<f64>> = (0..self.rows)
            .map(|a| {
                (0..self.cols)
                    .map(|j| (0..self.rows).map(|b| w[a][b] * d[b][j]).sum())
                    .collect()
            })
            .collect();
        (0..self.cols)
            .map(|i| {
                (0..self.cols)
                    .map(|j| (0..self.rows).map(|a| d[a][i] * wd[a][j]).sum())
                    .collect()
            })
            .collect()
    }

    /// `max |Dᵀ W_target D - W_source|`.
    pub fn congruence_residual(&self, w_target: &[Vec<f64>], w_source: &[Vec<f64>]) -> f64 {
        let c = self.congruence(w_target);
        let diff: Vec<Vec<f64>> = c
            .iter()
            .zip(w_source)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
            .collect();
        max_abs_f64(&diff)
    }
}

/// Log-Jacobian of `map` at `u` by forward-mode differentiation.
pub fn log_jacobian<M: LogMap>(map: &M, u: &ClusterPoint) -> Result<LogJacobian> {
    if u.len() != map.dim_in() {
        return Err(Error::ShapeMismatch {
            expected: map.dim_in(),
            got: u.len(),
        });
    }
    Ok(log_jacobian_at_log(map, &u.logs()))
}

/// Log-Jacobian at the point with log coordinates `v`.
pub fn log_jacobian_at_log<M: LogMap>(map: &M, v: &[f64]) -> LogJacobian {
    let n = v.len();
    let seeds: Vec<Dual> = v
        .iter()
        .enumerate()
        .map(|(i, &x)| Dual::variable(x, i, n))
        .collect();
    let out = map.eval_log(&seeds);
    LogJacobian {
        rows: out.len(),
        cols: n,
        entries: out
            .iter()
            .map(|d| (0..n).map(|i| d.d(i)).collect())
            .collect(),
    }
}

/// Result of checking `φ*ω = ω` for the standard form of `B`.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceReport {
    pub period: usize,
    pub points: usize,
    pub tol: f64,
    pub max_residual: f64,
    /// Index of the point with the largest residual.
    pub worst_point: Option<usize>,
    /// Numeric verdict: every residual below `tol`.
    pub numeric_pass: bool,
    /// Exact verdict: `μₘ⋯μ₁(B) = σ⁻ᵐ B σᵐ`.
    pub exact_pass: bool,
}

impl InvarianceReport {
    pub fn verdicts_agree(&self) -> bool {
        self.numeric_pass == self.exact_pass
    }

    pub fn passed(&self) -> bool {
        self.numeric_pass && self.exact_pass
    }
}

/// Checks invariance of the standard form under the iteration map with
/// period `m`, numerically through `Dᵀ B D = B` at each point and exactly
/// through the matrix periodicity identity.
pub fn check_form_invariance(
    b: &ExchangeMatrix,
    m: usize,
    points: &[ClusterPoint],
    tol: f64,
) -> Result<InvarianceReport> {
    let phi = IterationMap::new(b, m);
    let w: Vec<Vec<f64>> = (0..b.n()).map(|i| b.row_f64(i)).collect();
    let mut max_residual = 0.0_f64;
    let mut worst_point = None;
    for (idx, u) in points.iter().enumerate() {
        let d = log_jacobian(&phi, u)?;
        let res = d.congruence_residual(&w, &w);
        if worst_point.is_none() || res > max_residual || res.is_nan() {
            max_residual = res;
            worst_point = Some(idx);
        }
    }
    Ok(InvarianceReport {
        period: m,
        points: points.len(),
        tol,
        max_residual,
        worst_point,
        numeric_pass: max_residual < tol,
        exact_pass: b.is_period(m),
    })
}
