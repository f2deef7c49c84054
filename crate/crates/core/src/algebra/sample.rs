//! Seeded generator of random elements for property checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{PolyExpElement, VarianceParam};

pub struct ElementSampler {
    rng: ChaCha8Rng,
}

impl ElementSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Complex number uniform on the disc of radius `r`.
    pub fn disc(&mut self, r: f64) -> Complex64 {
        let rho = r * self.rng.random::<f64>().sqrt();
        let theta = self.rng.random_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(rho, theta)
    }

    /// A random element with 1..=`max_terms` exponential terms, each carrying
    /// a polynomial of degree at most `max_degree` with coefficients in the
    /// unit square. Exponents lie in the disc `|c| ≤ max_abs_c`; about one
    /// term in four is a pure polynomial (exponent 0).
    pub fn element(&mut self, q: VarianceParam, max_degree: usize, max_terms: usize, max_abs_c: f64) -> PolyExpElement {
        loop {
            let n_terms = self.rng.random_range(1..=max_terms.max(1));
            let terms: Vec<(Complex64, Vec<Complex64>)> = (0..n_terms)
                .map(|_| {
                    let exponent =
                        if self.rng.random_bool(0.25) { Complex64::new(0.0, 0.0) } else { self.disc(max_abs_c) };
                    let degree = self.rng.random_range(0..=max_degree);
                    let poly = (0..=degree)
                        .map(|_| Complex64::new(self.rng.random_range(-1.0..1.0), self.rng.random_range(-1.0..1.0)))
                        .collect();
                    (exponent, poly)
                })
                .collect();
            let f = PolyExpElement::from_terms(q, terms).expect("sampled values are finite");
            if !f.is_zero() {
                return f;
            }
        }
    }
}
