//! Double-double complex accumulator for the sums in 𝒢 and inner products,
//! where terms of size `(|c| q)^n` cancel to `O(1)`. Values are stored back
//! as plain `f64`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    pub(crate) const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub(crate) fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub(crate) fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }
}

impl Dd {
    fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::renorm(p, e + self.lo * b)
    }

    fn div_f64(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self - Dd::from_f64(b).mul_f64(q1);
        Dd::renorm(q1, r.hi / b)
    }

    /// `e^x` by `x = k ln 2 + s`, Taylor on `s / 2^8`, then eight squarings.
    fn exp(self) -> Dd {
        const LN2: Dd = Dd { hi: std::f64::consts::LN_2, lo: 2.3190468138462996e-17 };
        if self.hi > 709.0 || self.hi < -745.0 {
            return Dd::from_f64(self.hi.exp());
        }
        let k = (self.hi / LN2.hi).round();
        let s = (self - LN2.mul_f64(k)).mul_f64(1.0 / 256.0);
        let mut term = Dd::from_f64(1.0);
        let mut sum = Dd::from_f64(1.0);
        for n in 1..=12 {
            term = (term * s).div_f64(n as f64);
            sum = sum + term;
        }
        for _ in 0..8 {
            sum = sum * sum;
        }
        let scale = 2f64.powi(k as i32);
        Dd { hi: sum.hi * scale, lo: sum.lo * scale }
    }

    /// `(sin x, cos x)` by reduction modulo `π/2` and Taylor series on `|t| ≤ π/4`.
    fn sin_cos(self) -> (Dd, Dd) {
        const HALF_PI: Dd = Dd { hi: std::f64::consts::FRAC_PI_2, lo: 6.123233995736766e-17 };
        let m = (self.hi / HALF_PI.hi).round();
        let t = self - HALF_PI.mul_f64(m);
        let t2 = t * t;
        let (mut sin, mut cos) = (t, Dd::from_f64(1.0));
        let (mut ts, mut tc) = (t, Dd::from_f64(1.0));
        for n in 1..=14 {
            ts = -(ts * t2).div_f64(((2 * n) * (2 * n + 1)) as f64);
            tc = -(tc * t2).div_f64(((2 * n - 1) * (2 * n)) as f64);
            sin = sin + ts;
            cos = cos + tc;
        }
        match (m as i64).rem_euclid(4) {
            0 => (sin, cos),
            1 => (cos, -sin),
            2 => (-sin, -cos),
            _ => (-cos, sin),
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        Dd::renorm(p, e + (self.hi * o.lo + self.lo * o.hi))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct CDd {
    pub(crate) re: Dd,
    pub(crate) im: Dd,
}

impl CDd {
    pub(crate) const ZERO: CDd = CDd { re: Dd::ZERO, im: Dd::ZERO };

    pub(crate) fn new(z: Complex64) -> Self {
        CDd { re: Dd::from_f64(z.re), im: Dd::from_f64(z.im) }
    }

    pub(crate) fn real(x: f64) -> Self {
        CDd { re: Dd::from_f64(x), im: Dd::ZERO }
    }

    pub(crate) fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub(crate) fn conj(self) -> Self {
        CDd { re: self.re, im: -self.im }
    }

    pub(crate) fn exp(self) -> Self {
        let r = self.re.exp();
        let (s, c) = self.im.sin_cos();
        CDd { re: r * c, im: r * s }
    }
}

impl Add for CDd {
    type Output = CDd;
    fn add(self, o: CDd) -> CDd {
        CDd { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Mul for CDd {
    type Output = CDd;
    fn mul(self, o: CDd) -> CDd {
        CDd { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}
