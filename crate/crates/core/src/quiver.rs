//! Quivers as skew-symmetric integer matrices.
//!
//! Node indices passed to mutation operations are 1-based, as in the usual
//! numbering of quiver nodes; matrix element access through [`ExchangeMatrix::get`]
//! and [`ExchangeMatrix::row`] is 0-based.
//!
//! The cyclic permutation `σ` is the matrix with ones on the superdiagonal
//! and in the bottom-left corner. Conjugating by it gives
//! `(σ⁻ᵐ B σᵐ)[i][j] = B[i - m][j - m]` with indices taken mod `n`, and on
//! points it acts as the left shift `(u₁, …, u_N) ↦ (u₂, …, u_N, u₁)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::maps::{IterationMap, LogMap, Mutation};

/// Bound used by [`ExchangeMatrix::detect_period`] callers when none is given.
pub const DEFAULT_MAX_PERIOD: usize = 12;

/// Skew-symmetric integer matrix representing a quiver.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl ExchangeMatrix {
    /// Validates a square, skew-symmetric array with zero diagonal.
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i + 1,
                    len: row.len(),
                    expected: n,
                });
            }
            entries.extend(row);
        }
        let b = ExchangeMatrix { n, entries };
        for i in 0..n {
            for j in i..n {
                if b.get(i, j) != &-b.get(j, i) {
                    return Err(Error::NotSkewSymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(b)
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        ExchangeMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `b_ij` with 0-based indices.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    /// Row `i` (0-based).
    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> QMatrix {
        QMatrix::from_rows(
            self.rows()
                .into_iter()
                .map(|r| r.into_iter().map(BigRational::from_integer).collect())
                .collect(),
            self.n,
        )
        .expect("square by construction")
    }

    /// Row `i` (0-based) as floating point exponents.
    pub fn row_f64(&self, i: usize) -> Vec<f64> {
        self.row(i)
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    fn check_node(&self, k: usize) -> Result<usize> {
        if k == 0 || k > self.n {
            return Err(Error::IndexOutOfRange { index: k, n: self.n });
        }
        Ok(k - 1)
    }

    /// Matrix mutation at node `k` (1-based).
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let k = self.check_node(k)?;
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let b = self.get(i, j);
                let v = if i == k || j == k {
                    -b
                } else {
                    let bik = self.get(i, k);
                    let bkj = self.get(k, j);
                    // (|b_ik| b_kj + b_ik |b_kj|) / 2 is b_ik b_kj when both
                    // have the same sign, and 0 otherwise.
                    let corr = (bik.abs() * bkj + bik * bkj.abs()) / 2;
                    b + corr
                };
                out.push(v);
            }
        }
        Ok(ExchangeMatrix { n, entries: out })
    }

    /// `σ⁻ᵐ B σᵐ`; `m` may be any integer, including negative values.
    pub fn sigma_conjugate(&self, m: i64) -> Self {
        let n = self.n;
        let shift = m.rem_euclid(n as i64) as usize;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let si = (i + n - shift) % n;
                let sj = (j + n - shift) % n;
                out.push(self.get(si, sj).clone());
            }
        }
        ExchangeMatrix { n, entries: out }
    }

    /// Node mutated at step `step` (1-based) of the periodic sequence:
    /// nodes 1, 2, …, N, 1, 2, … in order.
    pub fn node_for_step(&self, step: usize) -> usize {
        (step - 1) % self.n + 1
    }

    /// Matrices `B, μ₁(B), μ₂μ₁(B), …, μₘ⋯μ₁(B)` (length `m + 1`).
    pub fn mutation_chain(&self, m: usize) -> Vec<ExchangeMatrix> {
        let mut chain = Vec::with_capacity(m + 1);
        chain.push(self.clone());
        for step in 1..=m {
            let node = self.node_for_step(step);
            let next = chain[step - 1].mutate(node).expect("node in range");
            chain.push(next);
        }
        chain
    }

    /// Whether `μₘ∘⋯∘μ₁(B) = σ⁻ᵐ B σᵐ` holds exactly.
    pub fn is_period(&self, m: usize) -> bool {
        m >= 1 && self.mutation_chain(m)[m] == self.sigma_conjugate(m as i64)
    }

    /// Smallest `m ≤ max_m` satisfying the periodicity identity.
    pub fn detect_period(&self, max_m: usize) -> PeriodResult {
        let mut current = self.clone();
        for m in 1..=max_m {
            current = current
                .mutate(self.node_for_step(m))
                .expect("node in range");
            let conjugated = self.sigma_conjugate(m as i64);
            if current == conjugated {
                return PeriodResult {
                    period: Some(m),
                    bound: max_m,
                    conjugated: Some(conjugated),
                };
            }
        }
        PeriodResult {
            period: None,
            bound: max_m,
            conjugated: None,
        }
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Outcome of period detection. Absence of a period is a value, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodResult {
    pub period: Option<usize>,
    pub bound: usize,
    /// `σ⁻ᵐ B σᵐ` for the detected period; it equals `μₘ⋯μ₁(B)`.
    pub conjugated: Option<ExchangeMatrix>,
}

/// Parameters of the six-node family of quivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuiverFamilyParams {
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub p: i64,
}

impl QuiverFamilyParams {
    pub fn new(r: i64, s: i64, t: i64, p: i64) -> Result<Self> {
        for (name, v) in [("r", r), ("s", s), ("t", t), ("p", p)] {
            if v < 1 {
                return Err(Error::InvalidFamilyParameter { name });
            }
        }
        Ok(QuiverFamilyParams { r, s, t, p })
    }
}

/// The six-node quiver family, 1-periodic when `r = t` and 2-periodic
/// otherwise.
pub fn fomin6(params: QuiverFamilyParams) -> ExchangeMatrix {
    let QuiverFamilyParams { r, s, t, p } = params;
    let a = t + r * s;
    let c = r + s * (t - p);
    let e = p + r * s;
    let rows = [
        [0, -r, s, -p, s, -t],
        [r, 0, -a, s, -e, s],
        [-s, a, 0, -c, s, -p],
        [p, -s, c, 0, -a, s],
        [-s, e, -s, a, 0, -r],
        [t, -s, p, -s, r, 0],
    ];
    ExchangeMatrix::from_i64(&rows.map(|r| r.to_vec()))
        .expect("family matrix is skew-symmetric")
}

/// Strictly positive point of `ℝ₊ᴺ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterPoint {
    values: Vec<f64>,
}

impl ClusterPoint {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(index) = values.iter().position(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(Error::NonPositivePoint { index: index + 1 });
        }
        Ok(ClusterPoint { values })
    }

    /// Point with coordinates `exp(logs[i])`.
    pub fn from_logs(logs: &[f64]) -> Result<Self> {
        Self::new(logs.iter().map(|v| v.exp()).collect())
    }

    pub fn ones(n: usize) -> Self {
        ClusterPoint {
            values: vec![1.0; n],
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn logs(&self) -> Vec<f64> {
        self.values.iter().map(|x| x.ln()).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Cluster mutation at node `k` (1-based): returns `(μ_k(B), μ_k(u))`.
pub fn mutate_point(
    b: &ExchangeMatrix,
    k: usize,
    u: &ClusterPoint,
) -> Result<(ExchangeMatrix, ClusterPoint)> {
    if u.len() != b.n() {
        return Err(Error::ShapeMismatch {
            expected: b.n(),
            got: u.len(),
        });
    }
    let mutated = b.mutate(k)?;
    let map = Mutation::new(b, k)?;
    let out = map.apply(u)?;
    Ok((mutated, out))
}

/// Cluster iteration map `φ = σᵐ∘μₘ∘⋯∘μ₁` applied to `u`.
///
/// `m` is not required to be a period here; callers that need the
/// periodicity guarantee check it with [`ExchangeMatrix::is_period`].
pub fn iteration_map(b: &ExchangeMatrix, m: usize, u: &ClusterPoint) -> Result<ClusterPoint> {
    IterationMap::new(b, m).apply(u)
}

/// Renders the `m` exchange relations of an `m`-periodic quiver as
/// shift-invariant recurrences.
///
/// Cluster variables are numbered `u₁, u₂, …` in order of creation; variable
/// `u_q` belongs to sequence `(q - 1) mod m` at step `(q - 1) / m`. For
/// `m = 1` the single sequence is written `u[n+i]`, for `m ≤ 3` the
/// sequences are `x`, `y`, `z`, and beyond that `x1`, `x2`, ….
pub fn render_recurrence(b: &ExchangeMatrix, m: usize) -> Result<String> {
    if !b.is_period(m) {
        return Err(Error::NotPeriodic(m));
    }
    let n = b.n();
    let chain = b.mutation_chain(m);
    let name = |q: usize| -> String {
        let seq = (q - 1) % m;
        let step = (q - 1) / m;
        let base = match m {
            1 => "u".to_string(),
            2 | 3 => ["x", "y", "z"][seq].to_string(),
            _ => format!("x{}", seq + 1),
        };
        if step == 0 {
            format!("{base}[n]")
        } else {
            format!("{base}[n+{step}]")
        }
    };

    let mut lines = Vec::with_capacity(m);
    for step in 1..=m {
        let node = b.node_for_step(step) - 1;
        // cluster variable currently sitting at node j
        let var_at = |j: usize| -> usize {
            let mut q = j + 1;
            let mut s = step - 1;
            // nodes already mutated in this pass hold newer variables
            while s > 0 {
                if b.node_for_step(s) - 1 == j {
                    q = n + s;
                    break;
                }
                s -= 1;
            }
            q
        };
        let row = chain[step - 1].row(node);
        let monomial = |positive: bool| -> String {
            let mut factors: Vec<(usize, String)> = row
                .iter()
                .enumerate()
                .filter(|(_, e)| if positive { e.is_positive() } else { e.is_negative() })
                .map(|(j, e)| {
                    let q = var_at(j);
                    let e = e.abs();
                    let v = name(q);
                    let text = if e == BigInt::from(1) {
                        v
                    } else {
                        format!("{v}^{e}")
                    };
                    (q, text)
                })
                .collect();
            factors.sort_by_key(|(q, _)| *q);
            factors.into_iter().map(|(_, t)| t).collect::<Vec<_>>().join("·")
        };
        let minus = monomial(false);
        let plus = monomial(true);
        let rhs = match (minus.is_empty(), plus.is_empty()) {
            (true, true) => "2".to_string(),
            (false, true) => format!("{minus} + 1"),
            (true, false) => format!("1 + {plus}"),
            (false, false) => format!("{minus} + {plus}"),
        };
        lines.push(format!("{}·{} = {}", name(n + step), name(var_at(node)), rhs));
    }
    Ok(lines.join("\n"))
}
