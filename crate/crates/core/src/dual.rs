//! Forward-mode dual numbers and the scalar abstraction used by the
//! log-domain evaluators.
//!
//! Every map in this crate is evaluated on log coordinates `v = log u`.
//! Exchange relations only need addition, scaling by constants and the
//! two-term log-sum-exp, so the same code path runs on plain `f64` for
//! values, on [`Dual`] for exact-to-rounding Jacobians, and on
//! [`TwoFloat`] for long orbits whose logs outgrow `f64` resolution.

use std::ops::{Add, Mul, Neg, Sub};

use twofloat::TwoFloat;

/// Scalar operations needed to evaluate subtraction-free rational maps in
/// log coordinates.
pub trait LogScalar:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
{
    fn constant(x: f64) -> Self;

    fn value(&self) -> f64;

    /// `log(exp(a) + exp(b))`, stable for large `|a - b|`.
    fn log_sum_exp(a: &Self, b: &Self) -> Self;

    /// `Σ coeffs[i] * xs[i]`, skipping zero coefficients.
    fn linear_combination(coeffs: &[f64], xs: &[Self]) -> Self {
        coeffs
            .iter()
            .zip(xs)
            .filter(|(c, _)| **c != 0.0)
            .fold(Self::constant(0.0), |acc, (c, x)| acc + x.clone() * *c)
    }
}

impl LogScalar for f64 {
    fn constant(x: f64) -> Self {
        x
    }

    fn value(&self) -> f64 {
        *self
    }

    fn log_sum_exp(a: &Self, b: &Self) -> Self {
        let (hi, lo) = if a >= b { (*a, *b) } else { (*b, *a) };
        hi + (lo - hi).exp().ln_1p()
    }
}

/// Double-double logs. The log-sum-exp correction `ln(1 + e^(lo - hi))`
/// lies in `(0, ln 2]`, so computing it in `f64` keeps the absolute error
/// near `1e-16` however large the logs become.
impl LogScalar for TwoFloat {
    fn constant(x: f64) -> Self {
        TwoFloat::from(x)
    }

    fn value(&self) -> f64 {
        self.hi() + self.lo()
    }

    fn log_sum_exp(a: &Self, b: &Self) -> Self {
        let (hi, lo) = if a >= b { (*a, *b) } else { (*b, *a) };
        let d = (lo - hi).value();
        hi + d.exp().ln_1p()
    }
}

/// Dual number with a dense gradient.
///
/// Constants carry an empty gradient, which is treated as all zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual {
    pub re: f64,
    pub eps: Vec<f64>,
}

impl Dual {
    /// Independent variable `index` of `n`, with value `re`.
    pub fn variable(re: f64, index: usize, n: usize) -> Self {
        let mut eps = vec![0.0; n];
        eps[index] = 1.0;
        Dual { re, eps }
    }

    /// Derivative with respect to variable `i` (zero if not tracked).
    pub fn d(&self, i: usize) -> f64 {
        self.eps.get(i).copied().unwrap_or(0.0)
    }

    fn zip_with(a: &[f64], b: &[f64], f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
        let n = a.len().max(b.len());
        (0..n)
            .map(|i| f(a.get(i).copied().unwrap_or(0.0), b.get(i).copied().unwrap_or(0.0)))
            .collect()
    }
}

impl Add for Dual {
    type Output = Dual;

    fn add(self, rhs: Dual) -> Dual {
        Dual {
            re: self.re + rhs.re,
            eps: Dual::zip_with(&self.eps, &rhs.eps, |x, y| x + y),
        }
    }
}

impl Sub for Dual {
    type Output = Dual;

    fn sub(self, rhs: Dual) -> Dual {
        Dual {
            re: self.re - rhs.re,
            eps: Dual::zip_with(&self.eps, &rhs.eps, |x, y| x - y),
        }
    }
}

impl Neg for Dual {
    type Output = Dual;

    fn neg(self) -> Dual {
        Dual {
            re: -self.re,
            eps: self.eps.into_iter().map(|x| -x).collect(),
        }
    }
}

impl Mul<f64> for Dual {
    type Output = Dual;

    fn mul(self, c: f64) -> Dual {
        Dual {
            re: self.re * c,
            eps: self.eps.into_iter().map(|x| x * c).collect(),
        }
    }
}

impl LogScalar for Dual {
    fn constant(x: f64) -> Self {
        Dual { re: x, eps: Vec::new() }
    }

    fn value(&self) -> f64 {
        self.re
    }

    fn log_sum_exp(a: &Self, b: &Self) -> Self {
        let re = f64::log_sum_exp(&a.re, &b.re);
        // softmax weights
        let wa = (a.re - re).exp();
        let wb = (b.re - re).exp();
        Dual {
            re,
            eps: Dual::zip_with(&a.eps, &b.eps, |x, y| wa * x + wb * y),
        }
    }
}
