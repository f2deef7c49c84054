use num_complex::Complex64;

use super::VerifyError;
use crate::algebra::{norm, PolyExpElement, VarianceParam};

/// `r = 2^{-k}` for `k = 1..=k_max`.
pub fn l2_limit_steps(k_max: u32) -> Vec<f64> {
    (1..=k_max as i32).map(|k| 2f64.powi(-k)).collect()
}

/// Exact `‖(𝓔_r - 1)/r · 𝓔_c - X 𝓔_c‖₂` at quadratic variation `q` for each `r`.
pub fn verify_l2_limit(c: Complex64, q: VarianceParam, rs: &[f64]) -> Result<Vec<f64>, VerifyError> {
    if let Some(r) = rs.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
        return Err(VerifyError::InvalidArgument(format!("r must lie in (0, 1], got {r}")));
    }
    let e_c = PolyExpElement::exponential(c, q)?;
    let x_e_c = e_c.apply_x();
    rs.iter()
        .map(|&r| {
            let e_r = PolyExpElement::exponential(Complex64::new(r, 0.0), q)?;
            let quotient = e_r.mul(&e_c)?.sub(&e_c)?.scale(Complex64::new(1.0 / r, 0.0))?;
            Ok(norm(&quotient.sub(&x_e_c)?)?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> VarianceParam {
        VarianceParam::new(v).unwrap()
    }

    #[test]
    fn examples() {
        let n = verify_l2_limit(Complex64::new(0.0, 0.0), q(1.0), &[2f64.powi(-10)]).unwrap();
        assert!(n[0] <= 1e-2);
        let n = verify_l2_limit(Complex64::new(1.0, 0.0), q(1.0), &l2_limit_steps(12)).unwrap();
        assert!(n.windows(2).all(|w| w[1] < w[0]));
        let n = verify_l2_limit(Complex64::new(1.0, 0.0), VarianceParam::ZERO, &l2_limit_steps(4)).unwrap();
        assert!(n.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn c_zero_closed_form() {
        // for c = 0 the norm is sqrt(e^{r² q} - 1 - r² q) / r
        for r in [0.5, 0.125, 2f64.powi(-8)] {
            let n = verify_l2_limit(Complex64::new(0.0, 0.0), q(1.0), &[r]).unwrap()[0];
            let want = (r * r).exp_m1() - r * r;
            assert!((n - want.sqrt() / r).abs() <= 1e-6 * want.sqrt() / r, "r = {r}");
        }
    }

    #[test]
    fn r_out_of_range() {
        assert!(verify_l2_limit(Complex64::new(0.0, 0.0), q(1.0), &[1.5]).is_err());
        assert!(verify_l2_limit(Complex64::new(0.0, 0.0), q(1.0), &[0.0]).is_err());
    }
}
