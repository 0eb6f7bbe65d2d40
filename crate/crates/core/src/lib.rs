//! Mutation-periodic quivers, their cluster iteration maps, and the
//! reduction of those maps to log-symplectic maps on a lower-dimensional
//! space.
//!
//! The pieces fit together as follows:
//!
//! - [`quiver`]: exchange matrices, mutation, period detection, the
//!   iteration map `φ = σᵐ∘μₘ∘⋯∘μ₁` and recurrence rendering;
//! - [`forms`]: log 2-forms with exact rational coefficients, their
//!   pullback laws, and numerical invariance checks via log-Jacobians;
//! - [`reduction`]: Cartan's construction of Darboux functionals, the
//!   monomial projection `π`, sections, the reduced map `φ̂` and its
//!   verifiers;
//! - [`expr`]: a symbolic counterpart of `φ̂`;
//! - [`orbit`]: long orbits in double-double log coordinates and their
//!   projections.
//!
//! Points are evaluated in log coordinates throughout, with a stable
//! log-sum-exp for the two-term exchange numerators, so large exponents do
//! not overflow.

pub mod dual;
pub mod error;
pub mod expr;
pub mod forms;
pub mod linalg;
pub mod maps;
pub mod orbit;
pub mod quiver;
pub mod reduction;
pub mod sampling;

pub use error::{Error, Result};
pub use forms::{
    check_form_invariance, log_jacobian, pullback_by_mutation, pullback_by_sigma,
    rank_and_kernel, scale_form, standard_form, InvarianceReport, LogJacobian, LogTwoForm,
    Provenance, RankKernel,
};
pub use linalg::QMatrix;
pub use maps::{IterationMap, LogMap};
pub use quiver::{
    fomin6, iteration_map, mutate_point, render_recurrence, ClusterPoint, ExchangeMatrix,
    PeriodResult, QuiverFamilyParams, DEFAULT_MAX_PERIOD,
};
pub use reduction::{
    apply_post_transform, build_section, cartan_reduce, projection, reduced_map_eval,
    verify_commutation, verify_darboux, verify_fiber_invariance, verify_symplectic,
    DarbouxBasis, ReducedMapEvaluator, Section, SymplecticChange, VerificationReport,
};
