//! Dense coefficient-vector helpers. Index `k` holds the coefficient of `x^k`.

use num_complex::Complex64;

pub(crate) type Poly = Vec<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub(crate) fn trim(mut p: Poly) -> Poly {
    while matches!(p.last(), Some(c) if *c == ZERO) {
        p.pop();
    }
    p
}

pub(crate) fn add(a: &[Complex64], b: &[Complex64]) -> Poly {
    let mut out = vec![ZERO; a.len().max(b.len())];
    for (o, v) in out.iter_mut().zip(a) {
        *o += v;
    }
    for (o, v) in out.iter_mut().zip(b) {
        *o += v;
    }
    out
}

pub(crate) fn sub(a: &[Complex64], b: &[Complex64]) -> Poly {
    let mut out = vec![ZERO; a.len().max(b.len())];
    for (o, v) in out.iter_mut().zip(a) {
        *o += v;
    }
    for (o, v) in out.iter_mut().zip(b) {
        *o -= v;
    }
    out
}

pub(crate) fn scale(a: &[Complex64], s: Complex64) -> Poly {
    a.iter().map(|v| v * s).collect()
}

pub(crate) fn mul(a: &[Complex64], b: &[Complex64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Formal derivative.
pub(crate) fn derivative(a: &[Complex64]) -> Poly {
    a.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect()
}

/// Multiplication by `x`.
pub(crate) fn shift_up(a: &[Complex64]) -> Poly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(a.len() + 1);
    out.push(ZERO);
    out.extend_from_slice(a);
    out
}

pub(crate) fn horner(a: &[Complex64], x: f64) -> Complex64 {
    a.iter().rev().fold(ZERO, |acc, c| acc * x + c)
}

pub(crate) fn max_abs(a: &[Complex64]) -> f64 {
    a.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn convolution_and_derivative() {
        // (1 + x)(1 - x) = 1 - x^2
        let p = mul(&[c(1.0), c(1.0)], &[c(1.0), c(-1.0)]);
        assert_eq!(trim(p), vec![c(1.0), c(0.0), c(-1.0)]);
        assert_eq!(derivative(&[c(3.0), c(2.0), c(5.0)]), vec![c(2.0), c(10.0)]);
        assert!(derivative(&[c(7.0)]).is_empty());
    }

    #[test]
    fn horner_matches_direct_sum() {
        let p = [c(1.0), c(-2.0), c(0.5)];
        let x = 1.7;
        let direct = 1.0 - 2.0 * x + 0.5 * x * x;
        assert!((horner(&p, x).re - direct).abs() < 1e-15);
    }

    #[test]
    fn trim_drops_only_trailing_zeros() {
        assert_eq!(trim(vec![c(0.0), c(1.0), c(0.0)]), vec![c(0.0), c(1.0)]);
        assert!(trim(vec![c(0.0)]).is_empty());
    }
}
