use serde::{Deserialize, Serialize};

use super::{ProcessError, TimeGrid};
use crate::algebra::VarianceParam;

/// Deterministic time change `h` with `h(0) = 0`; `⟨X⟩_t = h(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TimeChange {
    Identity,
    /// `h(t) = t^alpha`, `alpha > 0`.
    Power {
        alpha: f64,
    },
    /// Linear interpolation through `(t, h)` knots, held flat after the
    /// last knot. The first knot must be `(0, 0)`.
    PiecewiseLinear {
        knots: Vec<(f64, f64)>,
    },
}

impl TimeChange {
    pub fn power(alpha: f64) -> Result<Self, ProcessError> {
        let h = TimeChange::Power { alpha };
        h.validate()?;
        Ok(h)
    }

    pub fn piecewise_linear(knots: Vec<(f64, f64)>) -> Result<Self, ProcessError> {
        let h = TimeChange::PiecewiseLinear { knots };
        h.validate()?;
        Ok(h)
    }

    /// Structural checks that do not need a grid.
    pub fn validate(&self) -> Result<(), ProcessError> {
        match self {
            TimeChange::Identity => Ok(()),
            TimeChange::Power { alpha } => {
                if alpha.is_finite() && *alpha > 0.0 {
                    Ok(())
                } else {
                    Err(ProcessError::InvalidTimeChange(format!("power exponent must be > 0, got {alpha}")))
                }
            }
            TimeChange::PiecewiseLinear { knots } => {
                let bad = |m: &str| Err(ProcessError::InvalidTimeChange(m.to_string()));
                match knots.first() {
                    None => return bad("no knots"),
                    Some(&(t0, h0)) if t0 != 0.0 || h0 != 0.0 => return bad("first knot must be (0, 0)"),
                    _ => {}
                }
                if knots.iter().any(|(t, h)| !t.is_finite() || !h.is_finite()) {
                    return bad("non-finite knot");
                }
                if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return bad("knot times must be strictly increasing");
                }
                Ok(())
            }
        }
    }

    /// `h(t)` for `t ≥ 0`.
    pub fn eval(&self, t: f64) -> Result<f64, ProcessError> {
        if !t.is_finite() || t < 0.0 {
            return Err(ProcessError::OutOfRange { t, horizon: f64::INFINITY });
        }
        Ok(match self {
            TimeChange::Identity => t,
            TimeChange::Power { alpha } => t.powf(*alpha),
            TimeChange::PiecewiseLinear { knots } => {
                let i = knots.partition_point(|&(tk, _)| tk <= t);
                if i == knots.len() {
                    knots[i - 1].1
                } else {
                    let (t0, h0) = knots[i - 1];
                    let (t1, h1) = knots[i];
                    h0 + (h1 - h0) * (t - t0) / (t1 - t0)
                }
            }
        })
    }

    /// `⟨X⟩_t = h(t)` for `t ∈ [0, horizon]`.
    pub fn quadratic_variation_at(&self, t: f64, horizon: f64) -> Result<VarianceParam, ProcessError> {
        if !(0.0..=horizon).contains(&t) {
            return Err(ProcessError::OutOfRange { t, horizon });
        }
        let v = self.eval(t)?;
        VarianceParam::new(v).map_err(|e| ProcessError::InvalidTimeChange(e.to_string()))
    }

    /// `h(0) = 0` and `h` nondecreasing across the grid points.
    pub fn check_on(&self, grid: &TimeGrid) -> Result<Vec<f64>, ProcessError> {
        self.validate()?;
        let values = grid.points().iter().map(|&t| self.eval(t)).collect::<Result<Vec<_>, _>>()?;
        if values[0] != 0.0 {
            return Err(ProcessError::InvalidTimeChange(format!("h(0) = {} != 0", values[0])));
        }
        if let Some(k) = values.windows(2).position(|w| w[1] < w[0]) {
            return Err(ProcessError::InvalidTimeChange(format!(
                "h decreases between t = {} and t = {}",
                grid.points()[k],
                grid.points()[k + 1]
            )));
        }
        Ok(values)
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        match self {
            TimeChange::Identity => "identity".into(),
            TimeChange::Power { alpha } => format!("power({alpha})"),
            TimeChange::PiecewiseLinear { knots } => format!("piecewise-linear({} knots)", knots.len()),
        }
    }
}
