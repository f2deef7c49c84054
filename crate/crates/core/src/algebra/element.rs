use std::cmp::Ordering;

use num_complex::Complex64;

use super::poly::{self, Poly};
use super::{ensure_finite, AlgebraError, VarianceParam, CANONICAL_TOL};

/// One summand `p(X_t) 𝓔_{c,t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    exponent: Complex64,
    poly: Poly,
}

impl Term {
    pub fn exponent(&self) -> Complex64 {
        self.exponent
    }

    /// Coefficients of the polynomial factor, lowest power first.
    pub fn poly(&self) -> &[Complex64] {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.len().saturating_sub(1)
    }
}

/// A finite sum `Σ_k p_k(X_t) 𝓔_{c_k,t}` at a fixed quadratic variation.
///
/// Always canonical: exponents are distinct and sorted by `(re, im)`, no
/// polynomial is zero or carries trailing zeros, and every stored number is
/// finite.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyExpElement {
    q: VarianceParam,
    terms: Vec<Term>,
}

fn cmp_exponent(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn same_exponent(a: Complex64, b: Complex64) -> bool {
    (a.re - b.re).abs() <= CANONICAL_TOL && (a.im - b.im).abs() <= CANONICAL_TOL
}

impl PolyExpElement {
    /// Builds a canonical element from raw `(exponent, polynomial)` pairs.
    pub fn from_terms<I>(q: VarianceParam, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Complex64, Vec<Complex64>)>,
    {
        Self::canonicalize(q, terms, 0.0)
    }

    /// Canonicalizes with coefficients below `CANONICAL_TOL * max(largest, scale)`
    /// dropped. `scale` lets a caller prune a difference against the size of
    /// the operands it came from.
    pub(crate) fn canonicalize<I>(q: VarianceParam, terms: I, scale: f64) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Complex64, Vec<Complex64>)>,
    {
        let mut merged: Vec<Term> = Vec::new();
        for (exponent, p) in terms {
            ensure_finite(exponent, "exponent")?;
            for c in &p {
                ensure_finite(*c, "coefficient")?;
            }
            match merged.iter_mut().find(|t| same_exponent(t.exponent, exponent)) {
                Some(t) => t.poly = poly::add(&t.poly, &p),
                None => merged.push(Term { exponent, poly: p }),
            }
        }
        let largest = merged.iter().map(|t| poly::max_abs(&t.poly)).fold(scale, f64::max);
        if !largest.is_finite() {
            return Err(AlgebraError::NonFinite("coefficient"));
        }
        let threshold = CANONICAL_TOL * largest;
        let zero = Complex64::new(0.0, 0.0);
        let mut terms: Vec<Term> = merged
            .into_iter()
            .filter_map(|mut t| {
                for c in t.poly.iter_mut() {
                    if c.norm() < threshold || *c == zero {
                        *c = zero;
                    }
                }
                t.poly = poly::trim(t.poly);
                (!t.poly.is_empty()).then_some(t)
            })
            .collect();
        terms.sort_by(|a, b| cmp_exponent(&a.exponent, &b.exponent));
        Ok(Self { q, terms })
    }

    pub fn zero(q: VarianceParam) -> Self {
        Self { q, terms: Vec::new() }
    }

    /// The constant element `1 = 𝓔_0`.
    pub fn one(q: VarianceParam) -> Self {
        Self { q, terms: vec![Term { exponent: Complex64::new(0.0, 0.0), poly: vec![Complex64::new(1.0, 0.0)] }] }
    }

    /// `𝓔_{c,t} = exp(c X_t - c² q / 2)`.
    pub fn exponential(c: Complex64, q: VarianceParam) -> Result<Self, AlgebraError> {
        ensure_finite(c, "exponent")?;
        Ok(Self { q, terms: vec![Term { exponent: c, poly: vec![Complex64::new(1.0, 0.0)] }] })
    }

    /// A pure polynomial `p(X_t)`.
    pub fn polynomial(coeffs: Vec<Complex64>, q: VarianceParam) -> Result<Self, AlgebraError> {
        Self::from_terms(q, [(Complex64::new(0.0, 0.0), coeffs)])
    }

    /// Real-coefficient convenience for [`PolyExpElement::polynomial`].
    pub fn real_polynomial(coeffs: &[f64], q: VarianceParam) -> Result<Self, AlgebraError> {
        Self::polynomial(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(), q)
    }

    /// The element `X_t` itself.
    pub fn x(q: VarianceParam) -> Self {
        Self {
            q,
            terms: vec![Term {
                exponent: Complex64::new(0.0, 0.0),
                poly: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            }],
        }
    }

    /// Builds `φ(X_t)` for `φ(x) = Σ p_k(x) e^{c_k x}`, rewriting each plain
    /// exponential as `e^{c² q / 2} 𝓔_c`.
    pub fn from_function_terms<I>(q: VarianceParam, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Complex64, Vec<Complex64>)>,
    {
        let raw: Vec<_> = terms
            .into_iter()
            .map(|(c, p)| {
                let w = (c * c * (q.get() / 2.0)).exp();
                (c, poly::scale(&p, w))
            })
            .collect();
        Self::from_terms(q, raw)
    }

    pub fn q(&self) -> VarianceParam {
        self.q
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient modulus over all terms.
    pub fn max_coefficient(&self) -> f64 {
        self.terms.iter().map(|t| poly::max_abs(&t.poly)).fold(0.0, f64::max)
    }

    /// Same `𝓔`-basis coefficients placed at another quadratic variation.
    /// For a fixed-form martingale such as `𝓔_{c,t}` this is the value at a
    /// different time.
    pub fn with_q(&self, q: VarianceParam) -> Self {
        Self { q, terms: self.terms.clone() }
    }

    pub(crate) fn check_same_q(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(AlgebraError::VarianceMismatch { left: self.q.get(), right: other.q.get() })
        }
    }

    pub(crate) fn raw_terms(&self) -> impl Iterator<Item = (Complex64, Vec<Complex64>)> + '_ {
        self.terms.iter().map(|t| (t.exponent, t.poly.clone()))
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_q(other)?;
        Self::from_terms(self.q, self.raw_terms().chain(other.raw_terms()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0))?)
    }

    pub fn scale(&self, s: Complex64) -> Result<Self, AlgebraError> {
        ensure_finite(s, "scalar")?;
        Self::from_terms(self.q, self.terms.iter().map(|t| (t.exponent, poly::scale(&t.poly, s))))
    }

    /// Exact product. Exponentials combine as
    /// `𝓔_c 𝓔_d = e^{c d q} 𝓔_{c+d}`; polynomial factors convolve.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_q(other)?;
        let q = self.q.get();
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let w = (a.exponent * b.exponent * q).exp();
                raw.push((a.exponent + b.exponent, poly::scale(&poly::mul(&a.poly, &b.poly), w)));
            }
        }
        Self::from_terms(self.q, raw)
    }

    /// Pointwise complex conjugate; uses `conj(𝓔_c) = 𝓔_{conj c}`.
    pub fn conjugate(&self) -> Self {
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term { exponent: t.exponent.conj(), poly: t.poly.iter().map(|c| c.conj()).collect() })
            .collect();
        terms.sort_by(|a, b| cmp_exponent(&a.exponent, &b.exponent));
        Self { q: self.q, terms }
    }
}
