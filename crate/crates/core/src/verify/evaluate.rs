use num_complex::Complex64;

use super::VerifyError;
use crate::algebra::poly::horner;
use crate::algebra::PolyExpElement;

/// Largest `|c x|` accepted before evaluation is refused.
pub const OVERFLOW_LIMIT: f64 = 700.0;

/// An element prepared for repeated pointwise evaluation: the constant
/// `-c² q / 2` of each exponential factor is folded in once.
#[derive(Debug, Clone)]
pub struct CompiledElement {
    terms: Vec<(Complex64, Complex64, Vec<Complex64>)>,
}

impl CompiledElement {
    pub fn new(f: &PolyExpElement) -> Self {
        let q = f.q().get();
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                let c = t.exponent();
                (c, -c * c * (q / 2.0), t.poly().to_vec())
            })
            .collect();
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Σ p_k(x) exp(c_k x - c_k² q / 2)`, polynomials by Horner.
    #[inline]
    pub fn eval(&self, x: f64) -> Result<Complex64, VerifyError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, k, p) in &self.terms {
            let px = horner(p, x);
            if c.re == 0.0 && c.im == 0.0 {
                acc += px;
                continue;
            }
            if c.norm() * x.abs() > OVERFLOW_LIMIT {
                return Err(VerifyError::Overflow { c: *c, x });
            }
            acc += px * (c * x + k).exp();
        }
        if acc.re.is_finite() && acc.im.is_finite() {
            Ok(acc)
        } else {
            // the polynomial or normalising constant blew up instead
            let c = self.terms.first().map(|t| t.0).unwrap_or_default();
            Err(VerifyError::Overflow { c, x })
        }
    }
}

/// Value of `f` on the event `X_t = x`.
pub fn evaluate_element(f: &PolyExpElement, x: f64) -> Result<Complex64, VerifyError> {
    CompiledElement::new(f).eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::VarianceParam;

    fn q(v: f64) -> VarianceParam {
        VarianceParam::new(v).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let one = PolyExpElement::one(q(2.0));
        assert_eq!(evaluate_element(&one, 13.7).unwrap(), Complex64::new(1.0, 0.0));
        let e1 = PolyExpElement::exponential(Complex64::new(1.0, 0.0), q(1.0)).unwrap();
        assert!((evaluate_element(&e1, 1.0).unwrap().re - 0.5f64.exp()).abs() < 1e-15);
        let x = PolyExpElement::x(q(1.0));
        assert_eq!(evaluate_element(&x, -2.5).unwrap(), Complex64::new(-2.5, 0.0));
        let e = PolyExpElement::exponential(Complex64::new(1.0, 0.0), q(1.0)).unwrap();
        assert!((evaluate_element(&e, 0.0).unwrap().re - (-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn overflow_is_an_error() {
        let e = PolyExpElement::exponential(Complex64::new(10.0, 0.0), q(1.0)).unwrap();
        assert!(matches!(evaluate_element(&e, 71.0), Err(VerifyError::Overflow { .. })));
        assert!(evaluate_element(&e, 69.0).is_ok());
    }
}
