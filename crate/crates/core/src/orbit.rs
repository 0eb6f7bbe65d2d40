//! Orbits of the cluster iteration map and their projections.
//!
//! Logs along an orbit of a non-integrable recurrence grow geometrically
//! (|log u| reaches ~1e7 within 20 steps for the six-node family), beyond
//! the point where `f64` can resolve a relative error of 1e-8 in the
//! projected values. Orbits are therefore carried in double-double logs.

use twofloat::TwoFloat;

use crate::dual::LogScalar;
use crate::error::{Error, Result};
use crate::maps::{IterationMap, LogMap};
use crate::quiver::{ClusterPoint, ExchangeMatrix};
use crate::reduction::ReducedMapEvaluator;

/// `u⁽⁰⁾, φ(u⁽⁰⁾), …, φˢ(u⁽⁰⁾)` in log coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbit {
    pub period: usize,
    pub log_points: Vec<Vec<TwoFloat>>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.log_points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_points.is_empty()
    }

    /// Logs rounded to `f64`.
    pub fn logs(&self) -> Vec<Vec<f64>> {
        self.log_points.iter().map(|v| to_f64(v)).collect()
    }

    /// Points as plain values; entries may overflow to `inf` for long orbits.
    pub fn values(&self) -> Vec<Vec<f64>> {
        self.log_points
            .iter()
            .map(|v| v.iter().map(|x| x.value().exp()).collect())
            .collect()
    }
}

fn to_f64(v: &[TwoFloat]) -> Vec<f64> {
    v.iter().map(LogScalar::value).collect()
}

/// `max_i |exp(a_i - b_i) - 1|` with the differences taken in double-double.
pub fn log_relative_error_dd(a: &[TwoFloat], b: &[TwoFloat]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).value().exp_m1().abs())
        .fold(0.0, f64::max)
}

/// Iterates `φ` for `steps` steps from `u0`; `m` must be a period of `b`.
pub fn orbit(b: &ExchangeMatrix, m: usize, u0: &ClusterPoint, steps: usize) -> Result<Orbit> {
    if !b.is_period(m) {
        return Err(Error::NotPeriodic(m));
    }
    if u0.len() != b.n() {
        return Err(Error::ShapeMismatch {
            expected: b.n(),
            got: u0.len(),
        });
    }
    let phi = IterationMap::new(b, m);
    let mut log_points = Vec::with_capacity(steps + 1);
    log_points.push(u0.logs().into_iter().map(TwoFloat::from).collect::<Vec<_>>());
    for _ in 0..steps {
        let next = phi.eval_log(log_points.last().expect("non-empty"));
        log_points.push(next);
    }
    Ok(Orbit {
        period: m,
        log_points,
    })
}

/// Projected orbit `π(u⁽ⁿ⁾)` in log coordinates and, for each step, the
/// relative error between `π(u⁽ⁿ⁺¹⁾)` and `φ̂(π(u⁽ⁿ⁾))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectedOrbit {
    pub log_points: Vec<Vec<TwoFloat>>,
    pub step_residuals: Vec<f64>,
}

impl ProjectedOrbit {
    pub fn logs(&self) -> Vec<Vec<f64>> {
        self.log_points.iter().map(|v| to_f64(v)).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.step_residuals.iter().copied().fold(0.0, f64::max)
    }
}

pub fn project_orbit(orbit: &Orbit, e: &ReducedMapEvaluator) -> ProjectedOrbit {
    let pi = e.projection_map();
    let log_points: Vec<Vec<TwoFloat>> =
        orbit.log_points.iter().map(|v| pi.eval_log(v)).collect();
    let step_residuals = log_points
        .windows(2)
        .map(|w| log_relative_error_dd(&w[1], &e.eval_log(&w[0])))
        .collect();
    ProjectedOrbit {
        log_points,
        step_residuals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{fomin6, QuiverFamilyParams};

    #[test]
    fn zero_steps_is_the_start() {
        let b = fomin6(QuiverFamilyParams::new(2, 6, 2, 4).unwrap());
        let u = ClusterPoint::new(vec![1.0, 2.0, 0.5, 1.5, 0.7, 1.1]).unwrap();
        let o = orbit(&b, 1, &u, 0).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o.logs()[0], u.logs());
    }

    #[test]
    fn wrong_period_is_rejected() {
        let b = fomin6(QuiverFamilyParams::new(2, 13, 5, 7).unwrap());
        assert_eq!(
            orbit(&b, 1, &ClusterPoint::ones(6), 3),
            Err(Error::NotPeriodic(1))
        );
    }

    #[test]
    fn integer_orbit_from_ones() {
        // u7 u1 = u2^2 u4^4 u6^2 + u3^6 u5^6 = 2
        let b = fomin6(QuiverFamilyParams::new(2, 6, 2, 4).unwrap());
        let o = orbit(&b, 1, &ClusterPoint::ones(6), 2).unwrap();
        let v = o.values();
        assert!((v[1][5] - 2.0).abs() < 1e-12);
        // u8 u2 = u3^2 u5^4 u7^2 + u4^6 u6^6 = 4 + 1
        assert!((v[2][5] - 5.0).abs() < 1e-12);
    }
}
