//! Reduction of a cluster iteration map to a log-symplectic map.
//!
//! A singular log form `W` of rank `2k` is split as
//! `ω = dg₁∧dg₂ + ⋯ + dg₂ₖ₋₁∧dg₂ₖ` with linear functionals `g_i` of the log
//! coordinates. In matrix terms the rows of `G` satisfy `Gᵀ J G = W` where
//! `J` is block diagonal with `k` blocks `[[0, 1], [-1, 0]]`. The monomials
//! `f_i = exp(g_i)` define the projection `π`, and the reduced map is
//! `φ̂ = π ∘ φ ∘ lift` for any monomial right inverse `lift` of `π`.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::dual::LogScalar;
use crate::error::{Error, Result};
use crate::forms::{log_jacobian, rank_and_kernel, standard_form, LogTwoForm};
use crate::linalg::{format_rational, rational_to_f64, QMatrix};
use crate::maps::{IterationMap, LogMap, MonomialMap};
use crate::quiver::{ClusterPoint, ExchangeMatrix};

/// Pivot rule used by [`cartan_reduce`], stated in reports.
pub const PIVOT_RULE: &str = "lexicographically first (i, j), i < j, with nonzero residual entry";

/// Canonical `2k × 2k` matrix with `k` blocks `[[0, 1], [-1, 0]]`.
pub fn canonical_j(k: usize) -> QMatrix {
    let mut j = QMatrix::zeros(2 * k, 2 * k);
    for b in 0..k {
        j[(2 * b, 2 * b + 1)] = BigRational::one();
        j[(2 * b + 1, 2 * b)] = -BigRational::one();
    }
    j
}

/// Darboux functionals `g₁ … g₂ₖ` as rows of a `2k × N` rational matrix,
/// paired `(g₁, g₂), (g₃, g₄), …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxBasis {
    g: QMatrix,
}

impl DarbouxBasis {
    pub fn new(g: QMatrix) -> Result<Self> {
        if !g.rows().is_multiple_of(2) {
            return Err(Error::ShapeMismatch {
                expected: g.rows() + 1,
                got: g.rows(),
            });
        }
        Ok(DarbouxBasis { g })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.g
    }

    pub fn half_rank(&self) -> usize {
        self.g.rows() / 2
    }

    pub fn len(&self) -> usize {
        self.g.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.g.rows() == 0
    }

    /// Number of source coordinates `N`.
    pub fn n(&self) -> usize {
        self.g.cols()
    }

    pub fn projection_map(&self) -> MonomialMap {
        MonomialMap::new(self.g.to_f64(), self.g.cols())
    }

    /// `g_i` as text in the log coordinates `v₁ … v_N`.
    pub fn linear_forms(&self) -> Vec<String> {
        (0..self.g.rows())
            .map(|i| format_linear(self.g.row(i), "v"))
            .collect()
    }

    /// `f_i = exp(g_i)` as monomials in `u₁ … u_N`.
    pub fn monomials(&self) -> Vec<String> {
        (0..self.g.rows())
            .map(|i| format_monomial(self.g.row(i), "u"))
            .collect()
    }
}

/// Cartan's constructive splitting of `W` into Darboux pairs.
///
/// Each step picks the first pivot `(i, j)` in lexicographic order with a
/// nonzero residual entry, sets `a = row_i / w_ij`, `b = row_j`, and removes
/// `da ∧ db`, whose coefficient matrix is `abᵀ - baᵀ`. This kills rows and
/// columns `i` and `j` of the residual and drops its rank by two. The zero
/// form yields the empty basis.
pub fn cartan_reduce(w: &LogTwoForm) -> Result<DarbouxBasis> {
    let n = w.n();
    let target_rank = w.matrix().rank();
    let mut residual = w.matrix().clone();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();

    while let Some((i, j)) = first_nonzero_pair(&residual) {
        let pivot = residual[(i, j)].clone();
        let a: Vec<BigRational> = residual.row(i).iter().map(|x| x / &pivot).collect();
        let b: Vec<BigRational> = residual.row(j).to_vec();
        for p in 0..n {
            for q in 0..n {
                let upd = &a[p] * &b[q] - &b[p] * &a[q];
                if !upd.is_zero() {
                    residual[(p, q)] -= upd;
                }
            }
        }
        rows.push(a);
        rows.push(b);
        if rows.len() > target_rank {
            return Err(Error::ResidualRankError {
                step: rows.len() / 2,
            });
        }
    }
    if rows.len() != target_rank || !residual.is_zero() {
        return Err(Error::ResidualRankError {
            step: rows.len() / 2,
        });
    }
    let basis = DarbouxBasis {
        g: QMatrix::from_rows(rows, n)?,
    };
    debug_assert!(verify_darboux(&basis, w).unwrap_or(false));
    Ok(basis)
}

fn first_nonzero_pair(w: &QMatrix) -> Option<(usize, usize)> {
    let n = w.rows();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !w[(i, j)].is_zero())
}

/// Exact check of `Gᵀ J G = W`.
pub fn verify_darboux(g: &DarbouxBasis, w: &LogTwoForm) -> Result<bool> {
    if g.n() != w.n() {
        return Err(Error::ShapeMismatch {
            expected: w.n(),
            got: g.n(),
        });
    }
    let j = canonical_j(g.half_rank());
    let lhs = g.g.transpose().mul(&j)?.mul(&g.g)?;
    Ok(&lhs == w.matrix())
}

/// `π(u) = (exp g₁(u), …, exp g₂ₖ(u))`.
pub fn projection(g: &DarbouxBasis, u: &ClusterPoint) -> Result<ClusterPoint> {
    g.projection_map().apply(u)
}

/// Monomial right inverse of `π`: `lift(y) = exp(S log y)` with `G S = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    s: QMatrix,
    /// Source coordinates (0-based) the section is supported on, or empty
    /// for a section not built from a column subset.
    columns: Vec<usize>,
}

impl Section {
    /// Validates `G S = I` exactly.
    pub fn new(g: &DarbouxBasis, s: QMatrix) -> Result<Self> {
        if s.rows() != g.n() || s.cols() != g.len() {
            return Err(Error::ShapeMismatch {
                expected: g.n(),
                got: s.rows(),
            });
        }
        if g.g.mul(&s)? != QMatrix::identity(g.len()) {
            return Err(Error::RankDeficient);
        }
        Ok(Section {
            s,
            columns: Vec::new(),
        })
    }

    /// Section supported on the given source coordinates (0-based), which
    /// must select an invertible `2k × 2k` block of `G`.
    pub fn from_columns(g: &DarbouxBasis, columns: &[usize]) -> Result<Self> {
        if columns.len() != g.len() || columns.iter().any(|&c| c >= g.n()) {
            return Err(Error::ShapeMismatch {
                expected: g.len(),
                got: columns.len(),
            });
        }
        let inv = g
            .g
            .select_columns(columns)
            .inverse()
            .ok_or(Error::RankDeficient)?;
        let mut s = QMatrix::zeros(g.n(), g.len());
        for (r, &c) in columns.iter().enumerate() {
            for j in 0..g.len() {
                s[(c, j)] = inv[(r, j)].clone();
            }
        }
        Ok(Section {
            s,
            columns: columns.to_vec(),
        })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.s
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    pub fn lift_map(&self) -> MonomialMap {
        MonomialMap::new(self.s.to_f64(), self.s.cols())
    }
}

/// Deterministic section on the leftmost columns of `G` that form an
/// invertible block, chosen greedily in index order.
pub fn build_section(g: &DarbouxBasis) -> Result<Section> {
    let mut chosen: Vec<usize> = Vec::with_capacity(g.len());
    for c in 0..g.n() {
        if chosen.len() == g.len() {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(c);
        if g.g.select_columns(&trial).rank() == trial.len() {
            chosen = trial;
        }
    }
    if chosen.len() < g.len() {
        return Err(Error::RankDeficient);
    }
    Section::from_columns(g, &chosen)
}

/// Linear symplectic change of Darboux basis, `Tᵀ J T = J`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticChange {
    t: QMatrix,
}

impl SymplecticChange {
    pub fn new(t: QMatrix) -> Result<Self> {
        if t.rows() != t.cols() || !t.rows().is_multiple_of(2) {
            return Err(Error::NotSymplecticChange);
        }
        let j = canonical_j(t.rows() / 2);
        if t.transpose().mul(&j)?.mul(&t)? != j {
            return Err(Error::NotSymplecticChange);
        }
        Ok(SymplecticChange { t })
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.t
    }
}

/// `G' = T G`; the Darboux identity is preserved.
pub fn apply_post_transform(g: &DarbouxBasis, t: &SymplecticChange) -> Result<DarbouxBasis> {
    if t.t.cols() != g.len() {
        return Err(Error::ShapeMismatch {
            expected: g.len(),
            got: t.t.cols(),
        });
    }
    Ok(DarbouxBasis { g: t.t.mul(&g.g)? })
}

/// `φ̂ = π ∘ φ ∘ lift` on `ℝ₊²ᵏ`.
#[derive(Debug, Clone)]
pub struct ReducedMapEvaluator {
    b: ExchangeMatrix,
    m: usize,
    basis: DarbouxBasis,
    section: Section,
    phi: IterationMap,
    pi: MonomialMap,
    lift: MonomialMap,
}

impl ReducedMapEvaluator {
    /// Requires `m` to satisfy the periodicity identity for `b`.
    pub fn new(b: &ExchangeMatrix, m: usize, g: &DarbouxBasis, s: &Section) -> Result<Self> {
        if !b.is_period(m) {
            return Err(Error::NotPeriodic(m));
        }
        if g.n() != b.n() {
            return Err(Error::ShapeMismatch {
                expected: b.n(),
                got: g.n(),
            });
        }
        if s.s.rows() != b.n() || s.s.cols() != g.len() {
            return Err(Error::ShapeMismatch {
                expected: g.len(),
                got: s.s.cols(),
            });
        }
        Ok(ReducedMapEvaluator {
            b: b.clone(),
            m,
            basis: g.clone(),
            section: s.clone(),
            phi: IterationMap::new(b, m),
            pi: g.projection_map(),
            lift: s.lift_map(),
        })
    }

    pub fn exchange_matrix(&self) -> &ExchangeMatrix {
        &self.b
    }

    pub fn period(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &DarbouxBasis {
        &self.basis
    }

    pub fn section(&self) -> &Section {
        &self.section
    }

    pub fn iteration_map(&self) -> &IterationMap {
        &self.phi
    }

    pub fn projection_map(&self) -> &MonomialMap {
        &self.pi
    }
}

impl LogMap for ReducedMapEvaluator {
    fn dim_in(&self) -> usize {
        self.basis.len()
    }

    fn dim_out(&self) -> usize {
        self.basis.len()
    }

    fn eval_log<T: LogScalar>(&self, y: &[T]) -> Vec<T> {
        self.pi.eval_log(&self.phi.eval_log(&self.lift.eval_log(y)))
    }
}

/// `φ̂(y)`.
pub fn reduced_map_eval(e: &ReducedMapEvaluator, y: &ClusterPoint) -> Result<ClusterPoint> {
    e.apply(y)
}

/// Outcome of one of the reduction verifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub name: &'static str,
    pub points: usize,
    /// Number of individual comparisons (points × directions, where relevant).
    pub checks: usize,
    pub tol: f64,
    pub max_residual: f64,
    pub worst_point: Option<usize>,
    pub passed: bool,
}

impl VerificationReport {
    fn from_residuals(name: &'static str, points: usize, tol: f64, res: &[(usize, f64)]) -> Self {
        let mut max_residual = 0.0_f64;
        let mut worst_point = None;
        for &(idx, r) in res {
            if worst_point.is_none() || r > max_residual || r.is_nan() {
                max_residual = r;
                worst_point = Some(idx);
            }
        }
        VerificationReport {
            name,
            points,
            checks: res.len(),
            tol,
            max_residual,
            worst_point,
            passed: !max_residual.is_nan() && max_residual < tol,
        }
    }
}

/// Max relative error `|a/b - 1|` between two positive vectors given in
/// log coordinates.
pub fn log_relative_error(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).exp_m1().abs())
        .fold(0.0, f64::max)
}

/// Checks `π ∘ φ = φ̂ ∘ π` at each point.
pub fn verify_commutation(
    b: &ExchangeMatrix,
    m: usize,
    g: &DarbouxBasis,
    s: &Section,
    points: &[ClusterPoint],
    tol: f64,
) -> Result<VerificationReport> {
    let e = ReducedMapEvaluator::new(b, m, g, s)?;
    let mut res = Vec::with_capacity(points.len());
    for (idx, u) in points.iter().enumerate() {
        check_dim(u, b.n())?;
        let v = u.logs();
        let lhs = e.pi.eval_log(&e.phi.eval_log(&v));
        let rhs = e.eval_log(&e.pi.eval_log(&v));
        res.push((idx, log_relative_error(&lhs, &rhs)));
    }
    Ok(VerificationReport::from_residuals("commutation", points.len(), tol, &res))
}

/// Checks that `π ∘ φ` is constant along the kernel directions of the
/// standard form of `B`: `π(φ(u ⊙ exp(τξ))) = π(φ(u))` for each kernel basis
/// vector `ξ` and a random `τ ∈ [-1, 1]`.
pub fn verify_fiber_invariance<R: Rng>(
    g: &DarbouxBasis,
    b: &ExchangeMatrix,
    m: usize,
    points: &[ClusterPoint],
    tol: f64,
    rng: &mut R,
) -> Result<VerificationReport> {
    let kernel = rank_and_kernel(&standard_form(b)).kernel;
    if kernel.is_empty() {
        return Err(Error::FullRank);
    }
    if g.n() != b.n() {
        return Err(Error::ShapeMismatch {
            expected: b.n(),
            got: g.n(),
        });
    }
    let directions: Vec<Vec<f64>> = kernel
        .iter()
        .map(|xi| {
            let v: Vec<f64> = xi.iter().map(rational_to_f64).collect();
            let scale = v.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
            v.into_iter().map(|x| x / scale).collect()
        })
        .collect();
    let phi = IterationMap::new(b, m);
    let pi = g.projection_map();
    let mut res = Vec::with_capacity(points.len() * directions.len());
    for (idx, u) in points.iter().enumerate() {
        check_dim(u, b.n())?;
        let v = u.logs();
        let base = pi.eval_log(&phi.eval_log(&v));
        for xi in &directions {
            let tau: f64 = rng.gen_range(-1.0..=1.0);
            let moved: Vec<f64> = v.iter().zip(xi).map(|(a, x)| a + tau * x).collect();
            let out = pi.eval_log(&phi.eval_log(&moved));
            res.push((idx, log_relative_error(&out, &base)));
        }
    }
    Ok(VerificationReport::from_residuals(
        "fiber_invariance",
        points.len(),
        tol,
        &res,
    ))
}

/// Checks `Dᵀ J D = J` for the log-Jacobian `D` of a map on `ℝ₊²ᵏ`, i.e.
/// preservation of the canonical log symplectic form.
pub fn verify_symplectic<M: LogMap>(
    map: &M,
    points: &[ClusterPoint],
    tol: f64,
) -> Result<VerificationReport> {
    let dim = map.dim_in();
    if !dim.is_multiple_of(2) || map.dim_out() != dim {
        return Err(Error::ShapeMismatch {
            expected: dim,
            got: map.dim_out(),
        });
    }
    let j = canonical_j(dim / 2).to_f64();
    let mut res = Vec::with_capacity(points.len());
    for (idx, y) in points.iter().enumerate() {
        let d = log_jacobian(map, y)?;
        res.push((idx, d.congruence_residual(&j, &j)));
    }
    Ok(VerificationReport::from_residuals("symplectic", points.len(), tol, &res))
}

fn check_dim(u: &ClusterPoint, n: usize) -> Result<()> {
    if u.len() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            got: u.len(),
        });
    }
    Ok(())
}

fn format_exponent(e: &BigRational) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

fn format_factors(exps: &[(usize, BigRational)], var: &str) -> Vec<String> {
    exps.iter()
        .map(|(i, e)| {
            if e.is_one() {
                format!("{var}{}", i + 1)
            } else {
                format!("{var}{}^{}", i + 1, format_exponent(e))
            }
        })
        .collect()
}

/// Renders `Π var_i^{e_i}` as `num/(den)`, e.g. `u1·u3^2·u5/(u2^3·u4^3)`.
pub fn format_monomial(exponents: &[BigRational], var: &str) -> String {
    let num: Vec<(usize, BigRational)> = exponents
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_positive())
        .map(|(i, e)| (i, e.clone()))
        .collect();
    let den: Vec<(usize, BigRational)> = exponents
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_negative())
        .map(|(i, e)| (i, -e.clone()))
        .collect();
    let num_text = if num.is_empty() {
        "1".to_string()
    } else {
        format_factors(&num, var).join("·")
    };
    match den.len() {
        0 => num_text,
        1 => format!("{num_text}/{}", format_factors(&den, var)[0]),
        _ => format!("{num_text}/({})", format_factors(&den, var).join("·")),
    }
}

/// Renders `Σ c_i var_i`, e.g. `v2 - 13/2·v3 + 7/2·v4`.
pub fn format_linear(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let mag = c.abs();
        let term = if mag.is_one() {
            format!("{var}{}", i + 1)
        } else if mag.is_integer() {
            format!("{}{var}{}", mag.numer(), i + 1)
        } else {
            format!("{}/{}·{var}{}", mag.numer(), mag.denom(), i + 1)
        };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Matrix of `"p/q"` strings.
pub fn format_matrix(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(format_rational).collect())
        .collect()
}
