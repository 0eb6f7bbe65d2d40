//! Subtraction-free expression trees over the reduced coordinates.
//!
//! [`reduced_expression`] builds `π ∘ φ ∘ lift` symbolically. Only light
//! folding happens at construction (monomials absorb powers and products);
//! there is no canonical simplification, so the result is compared with the
//! numeric evaluator rather than with a closed form.

use std::fmt;
use std::rc::Rc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dual::LogScalar;
use crate::error::{Error, Result};
use crate::quiver::ExchangeMatrix;
use crate::reduction::{DarbouxBasis, Section};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// `Π y_i^{e_i}` with rational exponents; the empty monomial is `1`.
    Monomial(Vec<(usize, BigRational)>),
    Sum(Vec<Rc<Expr>>),
    Product(Vec<Rc<Expr>>),
    Power(Rc<Expr>, BigRational),
}

impl Expr {
    pub fn one() -> Rc<Expr> {
        Rc::new(Expr::Monomial(Vec::new()))
    }

    /// Monomial from a dense exponent row, dropping zero exponents.
    pub fn monomial(exponents: &[BigRational]) -> Rc<Expr> {
        Rc::new(Expr::Monomial(
            exponents
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, e)| (i, e.clone()))
                .collect(),
        ))
    }

    pub fn sum(terms: Vec<Rc<Expr>>) -> Rc<Expr> {
        let mut flat = Vec::with_capacity(terms.len());
        for t in terms {
            match &*t {
                Expr::Sum(inner) => flat.extend(inner.iter().cloned()),
                _ => flat.push(t),
            }
        }
        if flat.len() == 1 {
            return flat.pop().expect("one term");
        }
        Rc::new(Expr::Sum(flat))
    }

    pub fn pow(base: &Rc<Expr>, e: &BigRational) -> Rc<Expr> {
        if e.is_zero() {
            return Expr::one();
        }
        if e.is_one() {
            return base.clone();
        }
        match &**base {
            Expr::Monomial(f) => Rc::new(Expr::Monomial(
                f.iter().map(|(i, x)| (*i, x * e)).collect(),
            )),
            Expr::Power(inner, p) => Expr::pow(inner, &(p * e)),
            Expr::Product(fs) => Expr::product(fs.iter().map(|f| Expr::pow(f, e)).collect()),
            Expr::Sum(_) => Rc::new(Expr::Power(base.clone(), e.clone())),
        }
    }

    /// Product that merges monomial factors and repeated powers of the same
    /// shared subexpression.
    pub fn product(factors: Vec<Rc<Expr>>) -> Rc<Expr> {
        let mut mono: Vec<BigRational> = Vec::new();
        let mut others: Vec<(Rc<Expr>, BigRational)> = Vec::new();
        let mut stack = factors;
        while let Some(f) = stack.pop() {
            match &*f {
                Expr::Product(inner) => stack.extend(inner.iter().cloned()),
                Expr::Monomial(ex) => {
                    for (i, e) in ex {
                        if mono.len() <= *i {
                            mono.resize(*i + 1, BigRational::zero());
                        }
                        mono[*i] += e;
                    }
                }
                Expr::Power(base, e) => add_factor(&mut others, base, e),
                Expr::Sum(_) => add_factor(&mut others, &f, &BigRational::one()),
            }
        }
        let mut out: Vec<Rc<Expr>> = Vec::new();
        if mono.iter().any(|e| !e.is_zero()) {
            out.push(Expr::monomial(&mono));
        }
        // keep a stable order: factors were collected from a stack
        others.reverse();
        for (base, e) in others {
            if !e.is_zero() {
                out.push(if e.is_one() {
                    base
                } else {
                    Rc::new(Expr::Power(base, e))
                });
            }
        }
        match out.len() {
            0 => Expr::one(),
            1 => out.pop().expect("one factor"),
            _ => Rc::new(Expr::Product(out)),
        }
    }

    /// Value in log coordinates, given `log y`.
    pub fn eval_log<T: LogScalar>(&self, log_y: &[T]) -> T {
        match self {
            Expr::Monomial(f) => f.iter().fold(T::constant(0.0), |acc, (i, e)| {
                acc + log_y[*i].clone() * crate::linalg::rational_to_f64(e)
            }),
            Expr::Sum(terms) => {
                let mut it = terms.iter().map(|t| t.eval_log(log_y));
                let first = it.next().unwrap_or_else(|| T::constant(f64::NEG_INFINITY));
                it.fold(first, |acc, x| T::log_sum_exp(&acc, &x))
            }
            Expr::Product(fs) => fs
                .iter()
                .fold(T::constant(0.0), |acc, f| acc + f.eval_log(log_y)),
            Expr::Power(base, e) => base.eval_log(log_y) * crate::linalg::rational_to_f64(e),
        }
    }

    /// Value at a positive point `y`.
    pub fn eval(&self, y: &[f64]) -> f64 {
        let logs: Vec<f64> = y.iter().map(|x| x.ln()).collect();
        self.eval_log(&logs).exp()
    }

    /// Number of nodes, counting shared subtrees once per use.
    pub fn size(&self) -> usize {
        match self {
            Expr::Monomial(_) => 1,
            Expr::Sum(xs) | Expr::Product(xs) => 1 + xs.iter().map(|x| x.size()).sum::<usize>(),
            Expr::Power(b, _) => 1 + b.size(),
        }
    }

    pub fn display<'a>(&'a self, var: &'a str) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, var }
    }
}

fn add_factor(others: &mut Vec<(Rc<Expr>, BigRational)>, base: &Rc<Expr>, e: &BigRational) {
    if let Some(slot) = others.iter_mut().find(|(b, _)| Rc::ptr_eq(b, base) || **b == **base) {
        slot.1 += e;
    } else {
        others.push((base.clone(), e.clone()));
    }
}

/// Renders an expression with variables `{var}1, {var}2, …`.
pub struct ExprDisplay<'a> {
    expr: &'a Expr,
    var: &'a str,
}

fn exponent_text(e: &BigRational) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

impl ExprDisplay<'_> {
    fn write(&self, e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match e {
            Expr::Monomial(ex) => {
                let exps: Vec<BigRational> = {
                    let len = ex.iter().map(|(i, _)| i + 1).max().unwrap_or(0);
                    let mut v = vec![BigRational::zero(); len];
                    for (i, x) in ex {
                        v[*i] = x.clone();
                    }
                    v
                };
                write!(f, "{}", crate::reduction::format_monomial(&exps, self.var))
            }
            Expr::Sum(terms) => {
                write!(f, "(")?;
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    self.write(t, f)?;
                }
                write!(f, ")")
            }
            Expr::Product(fs) => {
                let (num, den): (Vec<&Rc<Expr>>, Vec<&Rc<Expr>>) = fs
                    .iter()
                    .partition(|x| !matches!(&***x, Expr::Power(_, e) if e.is_negative()));
                if num.is_empty() {
                    write!(f, "1")?;
                }
                for (i, x) in num.iter().enumerate() {
                    if i > 0 {
                        write!(f, "·")?;
                    }
                    self.write(x, f)?;
                }
                for x in den {
                    if let Expr::Power(b, e) = &**x {
                        write!(f, "/")?;
                        self.write(&Expr::Power(b.clone(), -e.clone()), f)?;
                    }
                }
                Ok(())
            }
            Expr::Power(b, e) => {
                if e.is_one() {
                    return self.write(b, f);
                }
                self.write(b, f)?;
                write!(f, "^{}", exponent_text(e))
            }
        }
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.expr, f)
    }
}

/// Symbolic `φ̂ = π ∘ φ ∘ lift` as one expression per reduced coordinate,
/// in the variables `y₁ … y₂ₖ`.
pub fn reduced_expression(
    b: &ExchangeMatrix,
    m: usize,
    g: &DarbouxBasis,
    s: &Section,
) -> Result<Vec<Rc<Expr>>> {
    if !b.is_period(m) {
        return Err(Error::NotPeriodic(m));
    }
    let n = b.n();
    if g.n() != n || s.matrix().rows() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            got: g.n(),
        });
    }
    let mut u: Vec<Rc<Expr>> = (0..n).map(|j| Expr::monomial(s.matrix().row(j))).collect();
    let chain = b.mutation_chain(m);
    for step in 1..=m {
        let node = b.node_for_step(step) - 1;
        let row = chain[step - 1].row(node);
        let side = |positive: bool| -> Rc<Expr> {
            Expr::product(
                row.iter()
                    .enumerate()
                    .filter(|(_, e)| if positive { e.is_positive() } else { e.is_negative() })
                    .map(|(j, e)| Expr::pow(&u[j], &BigRational::from_integer(e.abs())))
                    .collect(),
            )
        };
        let numerator = Expr::sum(vec![side(false), side(true)]);
        let inv = Expr::pow(&u[node], &-BigRational::one());
        u[node] = Expr::product(vec![numerator, inv]);
    }
    let shift = m % n;
    let shifted: Vec<Rc<Expr>> = (0..n).map(|i| u[(i + shift) % n].clone()).collect();
    Ok((0..g.len())
        .map(|i| {
            Expr::product(
                g.matrix()
                    .row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !e.is_zero())
                    .map(|(j, e)| Expr::pow(&shifted[j], e))
                    .collect(),
            )
        })
        .collect())
}
