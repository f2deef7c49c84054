use num_complex::Complex64;

use super::VerifyError;
use crate::exec::pairwise_sum;

/// Sample mean with its standard error.
///
/// `n == 0` marks a value computed in closed form (`stderr == 0`); sampled
/// estimates always have `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub n: usize,
}

/// Bound on the rounding error of a pairwise mean of `n` values with mean modulus `mean_abs`.
fn summation_error(n: usize, mean_abs: f64) -> f64 {
    f64::EPSILON * ((n as f64).log2().ceil() + 2.0) * mean_abs
}

impl Estimate {
    pub fn exact(value: Complex64) -> Self {
        Self { mean: value, stderr: 0.0, n: 0 }
    }

    /// Mean and standard error of complex samples; the error combines the
    /// real and imaginary variances, `sqrt(E|Z - mean|² / n)`, plus the
    /// rounding bound of the pairwise sum so a constant sample is not
    /// reported as infinitely precise.
    /// Sums are pairwise in index order so the result is reproducible.
    pub fn from_samples(samples: &[Complex64]) -> Result<Self, VerifyError> {
        let n = samples.len();
        if n < 2 {
            return Err(VerifyError::TooFewSamples(n));
        }
        let re: Vec<f64> = samples.iter().map(|z| z.re).collect();
        let im: Vec<f64> = samples.iter().map(|z| z.im).collect();
        let mean = Complex64::new(pairwise_sum(&re) / n as f64, pairwise_sum(&im) / n as f64);
        let dev: Vec<f64> = samples.iter().map(|z| (z - mean).norm_sqr()).collect();
        let var = pairwise_sum(&dev) / (n - 1) as f64;
        let abs: Vec<f64> = samples.iter().map(|z| z.norm()).collect();
        Ok(Self { mean, stderr: (var / n as f64).sqrt() + summation_error(n, pairwise_sum(&abs) / n as f64), n })
    }

    pub fn from_real_samples(samples: &[f64]) -> Result<Self, VerifyError> {
        let n = samples.len();
        if n < 2 {
            return Err(VerifyError::TooFewSamples(n));
        }
        let mean = pairwise_sum(samples) / n as f64;
        let dev: Vec<f64> = samples.iter().map(|x| (x - mean) * (x - mean)).collect();
        let var = pairwise_sum(&dev) / (n - 1) as f64;
        let abs: Vec<f64> = samples.iter().map(|x| x.abs()).collect();
        let stderr = (var / n as f64).sqrt() + summation_error(n, pairwise_sum(&abs) / n as f64);
        Ok(Self { mean: Complex64::new(mean, 0.0), stderr, n })
    }

    pub fn is_exact(&self) -> bool {
        self.n == 0
    }

    /// `|mean - target| / stderr`; zero when both sides agree exactly.
    pub fn z_score(&self, target: Complex64) -> f64 {
        let d = (self.mean - target).norm();
        if d == 0.0 {
            0.0
        } else {
            d / self.stderr
        }
    }

    pub fn within(&self, target: Complex64, k_sigma: f64) -> bool {
        (self.mean - target).norm() <= k_sigma * self.stderr
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_sample_statistics() {
        let e = Estimate::from_real_samples(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(e.mean.re, 2.5);
        // sample variance 5/3, stderr sqrt(5/12)
        assert!((e.stderr - (5.0f64 / 12.0).sqrt()).abs() < 1e-14);
        assert_eq!(e.n, 4);
    }

    #[test]
    fn complex_stderr_combines_components() {
        let s = [Complex64::new(1.0, 1.0), Complex64::new(-1.0, -1.0)];
        let e = Estimate::from_samples(&s).unwrap();
        assert_eq!(e.mean, Complex64::new(0.0, 0.0));
        // E|Z|² = 2 with n - 1 = 1, stderr = sqrt(4 / 2)
        assert!((e.stderr - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn constant_samples_carry_rounding_error_only() {
        let v = Complex64::new(0.1, 0.7);
        let e = Estimate::from_samples(&vec![v; 100_000]).unwrap();
        assert!(e.stderr > 0.0 && e.stderr < 1e-13);
        assert!(e.within(v, 4.0));
    }

    #[test]
    fn zero_samples_give_zero_estimate() {
        let e = Estimate::from_samples(&[Complex64::new(0.0, 0.0); 10]).unwrap();
        assert_eq!((e.mean, e.stderr, e.n), (Complex64::new(0.0, 0.0), 0.0, 10));
        assert_eq!(e.z_score(Complex64::new(0.0, 0.0)), 0.0);
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(Estimate::from_real_samples(&[1.0]), Err(VerifyError::TooFewSamples(1))));
    }
}
