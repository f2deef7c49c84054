use num_complex::Complex64;

use super::dd::CDd;
use super::{ensure_finite, AlgebraError, PolyExpElement, VarianceParam};
use crate::processes::TimeChange;

/// `E[p(X) exp(aX - a² q / 2)]` for `X ~ N(0, q)`.
///
/// Under the exponential tilt `X` behaves like `N(aq, q)`, so the moments
/// `m_k = E[X^k 𝓔_a]` obey `m_0 = 1`, `m_1 = aq`,
/// `m_k = aq m_{k-1} + (k-1) q m_{k-2}`.
pub fn gaussian_expectation(p: &[Complex64], a: Complex64, q: VarianceParam) -> Result<Complex64, AlgebraError> {
    ensure_finite(a, "tilt exponent")?;
    let p: Vec<CDd> = p.iter().map(|c| CDd::new(*c)).collect();
    ensure_finite(tilted_dot(&p, CDd::new(a), q.get()).to_c64(), "expectation")
}

/// `Σ p[k] m_k(a)` in double-double; the moments grow like `(|a| q)^k`
/// while the sum can be `O(1)`.
fn tilted_dot(p: &[CDd], a: CDd, q: f64) -> CDd {
    let aq = a * CDd::real(q);
    let mut prev = CDd::ZERO;
    let mut cur = CDd::real(1.0);
    let mut acc = CDd::ZERO;
    for (k, coeff) in p.iter().enumerate() {
        if k > 0 {
            let next = aq * cur + prev * CDd::real((k - 1) as f64 * q);
            prev = cur;
            cur = next;
        }
        acc = acc + *coeff * cur;
    }
    acc
}

/// `E[f]`, summing the closed form over the terms of `f`.
pub fn expectation(f: &PolyExpElement) -> Result<Complex64, AlgebraError> {
    let mut acc = Complex64::new(0.0, 0.0);
    for t in f.terms() {
        acc += gaussian_expectation(t.poly(), t.exponent(), f.q())?;
    }
    ensure_finite(acc, "expectation")
}

/// `⟨f, g⟩ = E[f conj(g)]`.
///
/// Equal to `expectation(f.mul(&g.conjugate()))` but summed pair by pair
/// in double-double without the intermediate canonical pruning.
pub fn inner_product(f: &PolyExpElement, g: &PolyExpElement) -> Result<Complex64, AlgebraError> {
    f.check_same_q(g)?;
    let q = f.q().get();
    let mut acc = CDd::ZERO;
    for a in f.terms() {
        let pa: Vec<CDd> = a.poly().iter().map(|c| CDd::new(*c)).collect();
        for b in g.terms() {
            let d = b.exponent().conj();
            let pb: Vec<CDd> = b.poly().iter().map(|c| CDd::new(*c).conj()).collect();
            let mut prod = vec![CDd::ZERO; pa.len() + pb.len() - 1];
            for (i, x) in pa.iter().enumerate() {
                for (j, y) in pb.iter().enumerate() {
                    prod[i + j] = prod[i + j] + *x * *y;
                }
            }
            let tilt = CDd::new(a.exponent()) + CDd::new(d);
            let weight = (CDd::new(a.exponent()) * CDd::new(d) * CDd::real(q)).exp();
            acc = acc + weight * tilted_dot(&prod, tilt, q);
        }
    }
    ensure_finite(acc.to_c64(), "inner product")
}

/// L² norm `‖f‖ = ⟨f, f⟩^{1/2}`.
pub fn norm(f: &PolyExpElement) -> Result<f64, AlgebraError> {
    Ok(inner_product(f, f)?.re.max(0.0).sqrt())
}

/// `Σ |p_j| ‖x^j 𝓔_c‖` over every stored coefficient: how far `f` can move
/// in L² when each coefficient is perturbed by a unit relative amount.
/// Multiplied by machine epsilon it bounds the error of storing `f`.
pub fn coefficient_sensitivity(f: &PolyExpElement) -> Result<f64, AlgebraError> {
    let q = f.q();
    let mut total = 0.0;
    for t in f.terms() {
        let c = t.exponent();
        // ‖x^j 𝓔_c‖² = e^{|c|² q} E[x^{2j} 𝓔_{2 Re c}]
        let scale = (c.norm_sqr() * q.get()).exp();
        let mut moment = vec![Complex64::new(0.0, 0.0); 2 * t.poly().len() - 1];
        for (j, coeff) in t.poly().iter().enumerate() {
            moment[2 * j] = Complex64::new(1.0, 0.0);
            let m = gaussian_expectation(&moment, Complex64::new(2.0 * c.re, 0.0), q)?;
            moment[2 * j] = Complex64::new(0.0, 0.0);
            total += coeff.norm() * (scale * m.re.max(0.0)).sqrt();
        }
    }
    Ok(total)
}

/// `⟨𝓔_{c,s}, 𝓔_{d,t}⟩ = exp(c conj(d) h(min(s, t)))`.
pub fn cross_time_inner_product(
    c: Complex64,
    s: f64,
    d: Complex64,
    t: f64,
    h: &TimeChange,
) -> Result<Complex64, AlgebraError> {
    ensure_finite(c, "exponent")?;
    ensure_finite(d, "exponent")?;
    let m = s.min(t);
    let qv = h.eval(m).map_err(|_| AlgebraError::TimeOutOfRange(m))?;
    ensure_finite((c * d.conj() * qv).exp(), "inner product")
}
