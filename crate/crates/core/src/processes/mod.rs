//! Simulation of `X_t = B_{h(t)}` for a deterministic time change `h`.
//!
//! Every path draws from its own ChaCha8 stream keyed by `(seed, path)`,
//! so an ensemble is bit-identical regardless of backend or thread count.

mod ensemble;
mod grid;
mod time_change;

use thiserror::Error;

pub use ensemble::{generate, generate_with, PathEnsemble, RNG_ALGORITHM};
pub use grid::TimeGrid;
pub use time_change::TimeChange;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProcessError {
    #[error("invalid time change: {0}")]
    InvalidTimeChange(String),
    #[error("invalid time grid: {0}")]
    InvalidGrid(String),
    #[error("time {t} outside [0, {horizon}]")]
    OutOfRange { t: f64, horizon: f64 },
    #[error("time {0} is not a grid point")]
    NotOnGrid(f64),
    #[error("need at least one path")]
    NoPaths,
}
