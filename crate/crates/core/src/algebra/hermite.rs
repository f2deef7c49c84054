use num_complex::Complex64;

use super::poly;
use super::{AlgebraError, PolyExpElement, VarianceParam, CANONICAL_TOL};

/// Coefficients of the variance-`q` Hermite polynomial `H_n(x; q)`:
/// `H_0 = 1`, `H_1 = x`, `H_{n+1} = x H_n - n q H_{n-1}`.
pub fn hermite_polynomial(n: usize, q: VarianceParam) -> Vec<Complex64> {
    hermite_table(n, q).pop().unwrap_or_default()
}

fn hermite_table(n: usize, q: VarianceParam) -> Vec<Vec<Complex64>> {
    let mut table: Vec<Vec<Complex64>> = Vec::with_capacity(n + 1);
    table.push(vec![Complex64::new(1.0, 0.0)]);
    if n >= 1 {
        table.push(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    }
    for k in 1..n {
        let next =
            poly::sub(&poly::shift_up(&table[k]), &poly::scale(&table[k - 1], Complex64::new(k as f64 * q.get(), 0.0)));
        table.push(next);
    }
    table
}

/// A polynomial in the variance-`q` Hermite basis: `Σ coeffs[n] H_n(x; q)`.
///
/// `𝒢` is diagonal here, with eigenvalue `(-i)^n` on `H_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteExpansion {
    q: VarianceParam,
    coeffs: Vec<Complex64>,
}

impl HermiteExpansion {
    pub fn new(q: VarianceParam, coeffs: Vec<Complex64>) -> Self {
        Self { q, coeffs }
    }

    /// The unit vector `e_n`, i.e. `H_n` itself.
    pub fn basis(n: usize, q: VarianceParam) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self { q, coeffs }
    }

    pub fn q(&self) -> VarianceParam {
        self.q
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Expands a purely polynomial element (single term with exponent 0, or
    /// the zero element) in the Hermite basis.
    pub fn from_element(f: &PolyExpElement) -> Result<Self, AlgebraError> {
        let mono: Vec<Complex64> = match f.terms() {
            [] => Vec::new(),
            [t] if t.exponent().norm() <= CANONICAL_TOL => t.poly().to_vec(),
            _ => {
                return Err(AlgebraError::Unsupported("Hermite expansion needs a pure polynomial (exponent 0)".into()))
            }
        };
        if mono.is_empty() {
            return Ok(Self { q: f.q(), coeffs: Vec::new() });
        }
        let n = mono.len() - 1;
        let table = hermite_table(n, f.q());
        let mut residual = mono;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        // H_k is monic of degree k: peel off from the top.
        for k in (0..=n).rev() {
            let h = residual[k];
            coeffs[k] = h;
            for (r, hk) in residual.iter_mut().zip(&table[k]) {
                *r -= h * hk;
            }
        }
        Ok(Self { q: f.q(), coeffs })
    }

    pub fn to_element(&self) -> Result<PolyExpElement, AlgebraError> {
        let table = hermite_table(self.coeffs.len().saturating_sub(1), self.q);
        let mut mono = Vec::new();
        for (a, h) in self.coeffs.iter().zip(&table) {
            mono = poly::add(&mono, &poly::scale(h, *a));
        }
        PolyExpElement::polynomial(mono, self.q)
    }
}

impl PolyExpElement {
    pub fn to_hermite(&self) -> Result<HermiteExpansion, AlgebraError> {
        HermiteExpansion::from_element(self)
    }

    pub fn from_hermite(h: &HermiteExpansion) -> Result<Self, AlgebraError> {
        h.to_element()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> VarianceParam {
        VarianceParam::new(v).unwrap()
    }

    fn re(v: &[Complex64]) -> Vec<f64> {
        v.iter().map(|c| c.re).collect()
    }

    #[test]
    fn low_order_polynomials() {
        assert_eq!(re(&hermite_polynomial(0, q(2.0))), vec![1.0]);
        assert_eq!(re(&hermite_polynomial(2, q(2.0))), vec![-2.0, 0.0, 1.0]);
        // H_3 = x^3 - 3 q x
        assert_eq!(re(&hermite_polynomial(3, q(0.5))), vec![0.0, -1.5, 0.0, 1.0]);
        // H_4 = x^4 - 6 q x^2 + 3 q^2
        assert_eq!(re(&hermite_polynomial(4, q(1.0))), vec![3.0, 0.0, -6.0, 0.0, 1.0]);
    }

    #[test]
    fn x_squared_expansion() {
        let x2 = PolyExpElement::real_polynomial(&[0.0, 0.0, 1.0], q(1.0)).unwrap();
        let h = x2.to_hermite().unwrap();
        assert_eq!(re(h.coeffs()), vec![1.0, 0.0, 1.0]);
    }

    #[test]
    fn zero_variance_is_the_monomial_basis() {
        for n in 0..10 {
            let mut expect = vec![0.0; n + 1];
            expect[n] = 1.0;
            assert_eq!(re(&hermite_polynomial(n, q(0.0))), expect);
        }
        let p = PolyExpElement::real_polynomial(&[1.5, -2.0, 0.25, 3.0], q(0.0)).unwrap();
        assert_eq!(re(p.to_hermite().unwrap().coeffs()), vec![1.5, -2.0, 0.25, 3.0]);
    }

    #[test]
    fn exponential_terms_are_rejected() {
        let e = PolyExpElement::exponential(Complex64::new(1.0, 0.0), q(1.0)).unwrap();
        assert!(matches!(e.to_hermite(), Err(AlgebraError::Unsupported(_))));
    }

    #[test]
    fn generating_function_identity() {
        // exp(cx - c²q/2) = Σ c^n / n! H_n(x; q); check pointwise with a
        // truncated series at moderate |c x|.
        let qv = 0.8;
        let cc = Complex64::new(0.6, -0.3);
        let x = 1.1;
        let mut series = Complex64::new(0.0, 0.0);
        let mut cn = Complex64::new(1.0, 0.0);
        let mut fact = 1.0;
        for n in 0..30 {
            if n > 0 {
                cn *= cc;
                fact *= n as f64;
            }
            series += cn / fact * poly::horner(&hermite_polynomial(n, q(qv)), x);
        }
        let direct = (cc * x - cc * cc * qv / 2.0).exp();
        assert!((series - direct).norm() < 1e-13);
    }
}
