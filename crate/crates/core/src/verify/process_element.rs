use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraError, PolyExpElement, VarianceParam};

/// A deterministic real function of time, used to center `X_t`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CenteringFunction {
    #[default]
    Zero,
    Constant {
        value: f64,
    },
    /// Linear interpolation through `(t, g)` knots, constant beyond the ends.
    PiecewiseLinear {
        knots: Vec<(f64, f64)>,
    },
}

impl CenteringFunction {
    pub fn validate(&self) -> Result<(), String> {
        match self {
            CenteringFunction::Zero => Ok(()),
            CenteringFunction::Constant { value } if value.is_finite() => Ok(()),
            CenteringFunction::Constant { value } => Err(format!("non-finite centering constant {value}")),
            CenteringFunction::PiecewiseLinear { knots } => {
                if knots.is_empty() {
                    return Err("centering function has no knots".into());
                }
                if knots.iter().any(|(t, g)| !t.is_finite() || !g.is_finite()) {
                    return Err("non-finite centering knot".into());
                }
                if knots.windows(2).any(|w| w[1].0 <= w[0].0) {
                    return Err("centering knot times must be strictly increasing".into());
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            CenteringFunction::Zero => 0.0,
            CenteringFunction::Constant { value } => *value,
            CenteringFunction::PiecewiseLinear { knots } => {
                let first = knots[0];
                let last = knots[knots.len() - 1];
                if t <= first.0 {
                    return first.1;
                }
                if t >= last.0 {
                    return last.1;
                }
                let j = knots.partition_point(|k| k.0 <= t);
                let (t0, g0) = knots[j - 1];
                let (t1, g1) = knots[j];
                g0 + (g1 - g0) * (t - t0) / (t1 - t0)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            CenteringFunction::Zero => true,
            CenteringFunction::Constant { value } => *value == 0.0,
            CenteringFunction::PiecewiseLinear { knots } => knots.iter().all(|k| k.1 == 0.0),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CenteringFunction::Zero => "0".into(),
            CenteringFunction::Constant { value } => format!("{value:?}"),
            CenteringFunction::PiecewiseLinear { knots } => format!("piecewise-linear({} knots)", knots.len()),
        }
    }
}

type Rule = dyn Fn(f64, VarianceParam) -> Result<PolyExpElement, AlgebraError> + Send + Sync;

/// An adapted process `Y_t = F(t, X_t)` whose value at each time is an
/// algebra element at `q = ⟨X⟩_t`.
#[derive(Clone)]
pub struct ProcessElement {
    label: String,
    rule: Arc<Rule>,
}

impl fmt::Debug for ProcessElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProcessElement").field("label", &self.label).finish()
    }
}

impl ProcessElement {
    pub fn from_fn<F>(label: impl Into<String>, rule: F) -> Self
    where
        F: Fn(f64, VarianceParam) -> Result<PolyExpElement, AlgebraError> + Send + Sync + 'static,
    {
        Self { label: label.into(), rule: Arc::new(rule) }
    }

    /// Keeps the coefficients of `template` in the `p(x) 𝓔_c` basis and
    /// moves them to each time's `q`. A pure exponential is then the
    /// martingale `𝓔_{c,t}`.
    pub fn fixed(template: PolyExpElement) -> Self {
        let label = template.to_string().replace('\n', "; ");
        Self::from_fn(label, move |_, q| Ok(template.with_q(q)))
    }

    /// `φ(X_t)` for `φ(x) = Σ p_k(x) e^{c_k x}`, the same function at every time.
    pub fn function_of_x(terms: Vec<(Complex64, Vec<Complex64>)>) -> Self {
        let label = format!("phi(X_t), {} terms", terms.len());
        Self::from_fn(label, move |_, q| PolyExpElement::from_function_terms(q, terms.clone()))
    }

    pub fn zero() -> Self {
        Self::from_fn("0", |_, q| Ok(PolyExpElement::zero(q)))
    }

    pub fn constant(v: Complex64) -> Self {
        Self::from_fn(format!("{v}"), move |_, q| PolyExpElement::one(q).scale(v))
    }

    /// `Y_t = X_t`.
    pub fn x() -> Self {
        Self::from_fn("X_t", |_, q| Ok(PolyExpElement::x(q)))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn at(&self, t: f64, q: VarianceParam) -> Result<PolyExpElement, AlgebraError> {
        let f = (self.rule)(t, q)?;
        if f.q() != q {
            return Err(AlgebraError::VarianceMismatch { left: f.q().get(), right: q.get() });
        }
        Ok(f)
    }

    /// `(X_t - g(t)) Y_t`.
    pub fn centered(&self, g: &CenteringFunction) -> Self {
        let inner = self.clone();
        let g = g.clone();
        Self::from_fn(format!("(X_t - g)({})", self.label), move |t, q| {
            let y = inner.at(t, q)?;
            y.apply_x().sub(&y.scale(Complex64::new(g.eval(t), 0.0))?)
        })
    }

    /// `𝒢 Y_t`, applied at each time.
    pub fn transformed(&self) -> Self {
        let inner = self.clone();
        Self::from_fn(format!("G({})", self.label), move |t, q| inner.at(t, q)?.apply_g())
    }

    /// True when every value on `times` is a constant (no `x`-dependence).
    pub fn is_constant_on(&self, times: &[(f64, VarianceParam)]) -> Result<bool, AlgebraError> {
        for &(t, q) in times {
            let y = self.at(t, q)?;
            let constant =
                y.terms().iter().all(|term| term.exponent() == Complex64::new(0.0, 0.0) && term.degree() == 0);
            if !constant {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> VarianceParam {
        VarianceParam::new(v).unwrap()
    }

    #[test]
    fn centering_evaluation() {
        let g = CenteringFunction::PiecewiseLinear { knots: vec![(0.0, 1.0), (1.0, 3.0)] };
        assert_eq!(g.eval(-1.0), 1.0);
        assert_eq!(g.eval(0.25), 1.5);
        assert_eq!(g.eval(2.0), 3.0);
        assert!(g.validate().is_ok());
        assert!(CenteringFunction::Constant { value: f64::NAN }.validate().is_err());
        assert!(CenteringFunction::Zero.is_zero());
    }

    #[test]
    fn values_carry_their_time_q() {
        let e = PolyExpElement::exponential(Complex64::new(1.0, 0.0), q(1.0)).unwrap();
        let y = ProcessElement::fixed(e);
        assert_eq!(y.at(0.3, q(0.3)).unwrap().q(), q(0.3));
        let bad = ProcessElement::from_fn("bad", |_, _| Ok(PolyExpElement::one(VarianceParam::new(2.0).unwrap())));
        assert!(bad.at(0.0, q(1.0)).is_err());
    }

    #[test]
    fn centered_and_transformed() {
        let y = ProcessElement::constant(Complex64::new(2.0, 0.0));
        let g = CenteringFunction::Constant { value: 0.5 };
        let z = y.centered(&g).at(1.0, q(1.0)).unwrap();
        let want = PolyExpElement::real_polynomial(&[-1.0, 2.0], q(1.0)).unwrap();
        assert_eq!(z, want);
        let gx = ProcessElement::x().transformed().at(1.0, q(1.0)).unwrap();
        let want =
            PolyExpElement::polynomial(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, -1.0)], q(1.0)).unwrap();
        assert_eq!(gx, want);
        let times = [(0.0, q(0.0)), (1.0, q(1.0))];
        assert!(y.is_constant_on(&times).unwrap());
        assert!(!ProcessElement::x().is_constant_on(&times).unwrap());
    }
}
