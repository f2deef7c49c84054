//! Exact operator algebra on Gaussian exponential martingales, a seeded
//! time-changed Brownian path simulator, and the Monte Carlo / closed-form
//! harness that checks the stochastic uncertainty inequality against both.
//!
//! The three layers are independent of each other's numerics:
//!
//! * [`algebra`] computes everything at a fixed quadratic variation `q`
//!   in closed form (Gaussian moments, generating functions).
//! * [`processes`] simulates `X_t = B_{h(t)}` on a grid with one random
//!   stream per path, so output does not depend on thread count.
//! * [`verify`] evaluates algebra elements along simulated paths and
//!   compares sample statistics against the exact values.

pub mod algebra;
pub mod exec;
pub mod processes;
pub mod verify;

pub use algebra::{AlgebraError, ComplexScalar, HermiteExpansion, PolyExpElement, Term, VarianceParam};
pub use exec::Backend;
pub use processes::{PathEnsemble, ProcessError, TimeChange, TimeGrid};
