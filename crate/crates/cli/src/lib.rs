//! Command implementations behind the `cluster-reduce` binary.
//!
//! Each command takes a parsed [`QuiverDocument`] and a [`RunConfig`] and
//! returns an [`Outcome`]: a JSON report, its plain-text rendering, and
//! the process exit code. All randomness flows from `RunConfig::seed`, so
//! identical inputs give byte-identical output.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;

use cluster_reduce::linalg::parse_rational;
use cluster_reduce::{QMatrix, DEFAULT_MAX_PERIOD};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use commands::{cmd_example, cmd_orbit, cmd_period, cmd_reduce, cmd_verify, Outcome};
pub use document::{parse_rational_matrix, QuiverDocument, Source, SCHEMA_VERSION};
pub use error::CliError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_FULL_RANK: u8 = 3;
pub const EXIT_NOT_SYMPLECTIC: u8 = 4;
pub const EXIT_FAILED: u8 = 5;

/// Verification budget and reduction options shared by all commands.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
    pub max_period: usize,
    /// Multiplier `λ` applied to the standard form before reduction.
    pub scale: BigRational,
    /// Symplectic `T` applied to the Darboux basis, `G ↦ T G`.
    pub post_transform: Option<QMatrix>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: cluster_reduce::sampling::DEFAULT_SEED,
            trials: 100,
            tol: 1e-8,
            max_period: DEFAULT_MAX_PERIOD,
            scale: BigRational::one(),
            post_transform: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(CliError::Input(format!("--tol must be positive, got {}", self.tol)));
        }
        if self.trials == 0 {
            return Err(CliError::Input("--trials must be at least 1".into()));
        }
        if self.max_period == 0 {
            return Err(CliError::Input("--max-period must be at least 1".into()));
        }
        if self.scale.is_zero() {
            return Err(CliError::Input("--scale must be nonzero".into()));
        }
        Ok(())
    }

    pub fn parse_scale(text: &str) -> Result<BigRational, CliError> {
        parse_rational(text).map_err(|_| CliError::Input(format!("--scale {text:?} is not a rational p/q")))
    }
}
