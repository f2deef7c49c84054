//! Closed-form arithmetic on finite sums `Σ p_k(X_t) 𝓔_{c_k,t}` at one fixed
//! quadratic variation `q = ⟨X⟩_t`, where `𝓔_{c,t} = exp(c X_t - c² q / 2)`.
//!
//! `X_t ~ N(0, q)`, so every expectation reduces to Gaussian moments under an
//! exponential tilt and is computed exactly (up to f64 rounding). The
//! operators `X`, `D`, `D*` and the unitary `𝒢` act on the same universe, so
//! commutators, adjointness and unitarity can be checked without sampling.

mod dd;
mod element;
mod expectation;
mod hermite;
mod operators;
pub(crate) mod poly;
pub mod sample;
mod text;

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use element::{PolyExpElement, Term};
pub use expectation::{
    coefficient_sensitivity, cross_time_inner_product, expectation, gaussian_expectation, inner_product, norm,
};
pub use hermite::{hermite_polynomial, HermiteExpansion};
pub use operators::Commutator;

/// Complex coefficients and exponents.
pub type ComplexScalar = Complex64;

/// Relative threshold below which coefficients are dropped during
/// canonicalization, and the absolute tolerance for merging exponents.
pub const CANONICAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("quadratic variation must be finite and non-negative, got {0}")]
    InvalidVariance(f64),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("elements live at different quadratic variations ({left} vs {right})")]
    VarianceMismatch { left: f64, right: f64 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("time {0} is outside the domain of the time change")]
    TimeOutOfRange(f64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Quadratic variation `q = ⟨X⟩_t ≥ 0` at the time an element lives at.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct VarianceParam(f64);

impl VarianceParam {
    pub fn new(q: f64) -> Result<Self, AlgebraError> {
        if q.is_finite() && q >= 0.0 {
            // normalise -0.0 so equality and text output are stable
            Ok(Self(q + 0.0))
        } else {
            Err(AlgebraError::InvalidVariance(q))
        }
    }

    pub const ZERO: Self = Self(0.0);

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for VarianceParam {
    type Error = AlgebraError;
    fn try_from(q: f64) -> Result<Self, Self::Error> {
        Self::new(q)
    }
}

impl From<VarianceParam> for f64 {
    fn from(q: VarianceParam) -> f64 {
        q.0
    }
}

impl fmt::Display for VarianceParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub(crate) fn ensure_finite(z: Complex64, what: &'static str) -> Result<Complex64, AlgebraError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(AlgebraError::NonFinite(what))
    }
}

/// Multiplication by `-i`, done as a component swap so that four
/// applications return the input bit for bit.
#[inline]
pub(crate) fn times_minus_i(z: Complex64) -> Complex64 {
    Complex64::new(z.im, -z.re)
}
