//! Checks that tie the algebra to simulated paths: pathwise evaluation, Monte
//! Carlo estimates with standard errors, left-point Itô sums, and the two
//! uncertainty inequalities (fixed time, exact; integrated, Monte Carlo).

mod estimate;
mod evaluate;
mod inequality;
mod ito;
mod l2;
mod pde;
mod process_element;
pub mod report;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::processes::ProcessError;

pub use estimate::Estimate;
pub use evaluate::{evaluate_element, CompiledElement, OVERFLOW_LIMIT};
pub use inequality::{
    verify_h1, verify_h1_with, verify_h2, verify_h2_with, H2Options, InequalityReport, Refinement, EQUALITY_NOTE,
    H1_TOLERANCE,
};
pub use ito::{ito_integral, ito_integral_with, mc_expectation, mc_expectation_with, verify_isometry, IsometryReport};
pub use l2::{l2_limit_steps, verify_l2_limit};
pub use pde::{pde_box_points, verify_pde, PdeResidual};
pub use process_element::{CenteringFunction, ProcessElement};

/// Default statistical threshold, in standard errors.
pub const DEFAULT_K_SIGMA: f64 = 4.0;

/// Default multiplier on the largest grid step for discretization bias.
pub const DEFAULT_DISCRETIZATION_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VerifyError {
    #[error("exponential overflow: |c x| > {limit} for c = {c}, x = {x}", limit = OVERFLOW_LIMIT)]
    Overflow { c: Complex64, x: f64 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Process(#[from] ProcessError),
    #[error("an estimate needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
