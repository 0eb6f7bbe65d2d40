//! Maps between positive orthants, evaluated in log coordinates.

use crate::dual::LogScalar;
use crate::error::{Error, Result};
use crate::quiver::{ClusterPoint, ExchangeMatrix};

/// A map `ℝ₊ⁿ → ℝ₊ᵐ` given by its log-coordinate expression
/// `v ↦ log(map(exp(v)))`.
pub trait LogMap {
    fn dim_in(&self) -> usize;

    fn dim_out(&self) -> usize;

    fn eval_log<T: LogScalar>(&self, v: &[T]) -> Vec<T>;

    fn apply_log(&self, v: &[f64]) -> Vec<f64> {
        self.eval_log(v)
    }

    fn apply(&self, u: &ClusterPoint) -> Result<ClusterPoint> {
        if u.len() != self.dim_in() {
            return Err(Error::ShapeMismatch {
                expected: self.dim_in(),
                got: u.len(),
            });
        }
        ClusterPoint::from_logs(&self.apply_log(&u.logs()))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Identity(pub usize);

impl LogMap for Identity {
    fn dim_in(&self) -> usize {
        self.0
    }

    fn dim_out(&self) -> usize {
        self.0
    }

    fn eval_log<T: LogScalar>(&self, v: &[T]) -> Vec<T> {
        v.to_vec()
    }
}

/// `σᵐ`: the coordinate shift `u ↦ (u_{1+m}, …, u_N, u_1, …, u_m)`.
#[derive(Debug, Clone, Copy)]
pub struct CyclicShift {
    pub n: usize,
    pub m: usize,
}

impl LogMap for CyclicShift {
    fn dim_in(&self) -> usize {
        self.n
    }

    fn dim_out(&self) -> usize {
        self.n
    }

    fn eval_log<T: LogScalar>(&self, v: &[T]) -> Vec<T> {
        (0..self.n).map(|i| v[(i + self.m) % self.n].clone()).collect()
    }
}

/// Monomial map with real exponents: `log y = E · log u`.
#[derive(Debug, Clone)]
pub struct MonomialMap {
    dim_in: usize,
    exponents: Vec<Vec<f64>>,
}

impl MonomialMap {
    pub fn new(exponents: Vec<Vec<f64>>, dim_in: usize) -> Self {
        debug_assert!(exponents.iter().all(|r| r.len() == dim_in));
        MonomialMap { dim_in, exponents }
    }

    pub fn exponents(&self) -> &[Vec<f64>] {
        &self.exponents
    }
}

impl LogMap for MonomialMap {
    fn dim_in(&self) -> usize {
        self.dim_in
    }

    fn dim_out(&self) -> usize {
        self.exponents.len()
    }

    fn eval_log<T: LogScalar>(&self, v: &[T]) -> Vec<T> {
        self.exponents
            .iter()
            .map(|row| T::linear_combination(row, v))
            .collect()
    }
}

/// One exchange relation: node `node` (0-based) is replaced by
/// `(A⁺ + A⁻) / u_node`, with `A±` read off the given exchange row.
#[derive(Debug, Clone)]
pub struct Mutation {
    node: usize,
    plus: Vec<f64>,
    minus: Vec<f64>,
}

impl Mutation {
    /// Point mutation at node `k` (1-based) for the seed matrix `b`.
    pub fn new(b: &ExchangeMatrix, k: usize) -> Result<Self> {
        if k == 0 || k > b.n() {
            return Err(Error::IndexOutOfRange { index: k, n: b.n() });
        }
        Ok(Self::from_row(k - 1, &b.row_f64(k - 1)))
    }

    fn from_row(node: usize, row: &[f64]) -> Self {
        Mutation {
            node,
            plus: row.iter().map(|&e| e.max(0.0)).collect(),
            minus: row.iter().map(|&e| (-e).max(0.0)).collect(),
        }
    }

    fn apply_in_place<T: LogScalar>(&self, v: &mut [T]) {
        // empty products contribute log 1 = 0
        let a_plus = T::linear_combination(&self.plus, v);
        let a_minus = T::linear_combination(&self.minus, v);
        v[self.node] = T::log_sum_exp(&a_plus, &a_minus) - v[self.node].clone();
    }
}

impl LogMap for Mutation {
    fn dim_in(&self) -> usize {
        self.plus.len()
    }

    fn dim_out(&self) -> usize {
        self.plus.len()
    }

    fn eval_log<T: LogScalar>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        self.apply_in_place(&mut out);
        out
    }
}

/// Cluster iteration map `σᵐ∘μₘ∘⋯∘μ₁`; step `j` mutates node
/// `((j - 1) mod N) + 1` using the matrix produced by the previous steps.
#[derive(Debug, Clone)]
pub struct IterationMap {
    n: usize,
    m: usize,
    steps: Vec<Mutation>,
}

impl IterationMap {
    pub fn new(b: &ExchangeMatrix, m: usize) -> Self {
        let chain = b.mutation_chain(m);
        let steps = (1..=m)
            .map(|step| {
                let node = b.node_for_step(step) - 1;
                Mutation::from_row(node, &chain[step - 1].row_f64(node))
            })
            .collect();
        IterationMap { n: b.n(), m, steps }
    }

    pub fn period(&self) -> usize {
        self.m
    }
}

impl LogMap for IterationMap {
    fn dim_in(&self) -> usize {
        self.n
    }

    fn dim_out(&self) -> usize {
        self.n
    }

    fn eval_log<T: LogScalar>(&self, v: &[T]) -> Vec<T> {
        let mut w = v.to_vec();
        for step in &self.steps {
            step.apply_in_place(&mut w);
        }
        CyclicShift { n: self.n, m: self.m }.eval_log(&w)
    }
}

/// `outer ∘ inner`.
#[derive(Debug, Clone)]
pub struct Compose<A, B> {
    pub outer: A,
    pub inner: B,
}

impl<A: LogMap, B: LogMap> LogMap for Compose<A, B> {
    fn dim_in(&self) -> usize {
        self.inner.dim_in()
    }

    fn dim_out(&self) -> usize {
        self.outer.dim_out()
    }

    fn eval_log<T: LogScalar>(&self, v: &[T]) -> Vec<T> {
        self.outer.eval_log(&self.inner.eval_log(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_moves_coordinates_left() {
        let s = CyclicShift { n: 4, m: 1 };
        assert_eq!(s.apply_log(&[1.0, 2.0, 3.0, 4.0]), vec![2.0, 3.0, 4.0, 1.0]);
        let s = CyclicShift { n: 4, m: 6 };
        assert_eq!(s.apply_log(&[1.0, 2.0, 3.0, 4.0]), vec![3.0, 4.0, 1.0, 2.0]);
    }

    #[test]
    fn monomial_map_rational_exponents() {
        let m = MonomialMap::new(vec![vec![0.5, -1.0]], 2);
        let y = m.apply(&ClusterPoint::new(vec![4.0, 8.0]).unwrap()).unwrap();
        assert!((y.values()[0] - 0.25).abs() < 1e-15);
    }

    #[test]
    fn large_exponents_stay_finite_in_log_domain() {
        let b = ExchangeMatrix::from_i64(&[vec![0, 400], vec![-400, 0]]).unwrap();
        let mu = Mutation::new(&b, 1).unwrap();
        let v = mu.apply_log(&[0.0, 3.0]);
        assert!((v[0] - 1200.0).abs() < 1e-9);
        assert_eq!(mu.dim_out(), 2);
    }
}
