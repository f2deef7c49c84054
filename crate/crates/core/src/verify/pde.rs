use num_complex::Complex64;

use super::VerifyError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeResidual {
    /// Max residual for `f_c(x, y) = exp(c x - c² y / 2)`.
    pub f_max: f64,
    /// Max residual for `g_c(x, y) = (x - c y) f_c(x, y)`.
    pub g_max: f64,
}

impl PdeResidual {
    pub fn max(&self) -> f64 {
        self.f_max.max(self.g_max)
    }
}

fn f_c(c: Complex64, x: f64, y: f64) -> Complex64 {
    (c * x - c * c * (y / 2.0)).exp()
}

fn g_c(c: Complex64, x: f64, y: f64) -> Complex64 {
    (x - c * y) * f_c(c, x, y)
}

fn residual(f: impl Fn(f64, f64) -> Complex64, x: f64, y: f64, s: f64) -> f64 {
    let fxx = (f(x + s, y) - 2.0 * f(x, y) + f(x - s, y)) / (s * s);
    let fy = (f(x, y + s) - f(x, y - s)) / (2.0 * s);
    (0.5 * fxx + fy).norm()
}

/// Central-difference residual of `½ ∂²f/∂x² + ∂f/∂y = 0` at each point.
pub fn verify_pde(c: Complex64, points: &[(f64, f64)], step: f64) -> Result<PdeResidual, VerifyError> {
    if !(step.is_finite() && step > 0.0) {
        return Err(VerifyError::InvalidArgument(format!("step must be positive, got {step}")));
    }
    if !(c.re.is_finite() && c.im.is_finite()) {
        return Err(VerifyError::InvalidArgument(format!("non-finite exponent {c}")));
    }
    let mut out = PdeResidual { f_max: 0.0, g_max: 0.0 };
    for &(x, y) in points {
        if !(x.is_finite() && y > 0.0) {
            return Err(VerifyError::InvalidArgument(format!("sample point ({x}, {y}) needs finite x and y > 0")));
        }
        out.f_max = out.f_max.max(residual(|x, y| f_c(c, x, y), x, y, step));
        out.g_max = out.g_max.max(residual(|x, y| g_c(c, x, y), x, y, step));
    }
    Ok(out)
}

/// `nx × ny` lattice on `[x0, x1] × [y0, y1]`, corners included.
pub fn pde_box_points(x: (f64, f64), y: (f64, f64), nx: usize, ny: usize) -> Vec<(f64, f64)> {
    let lerp =
        |(a, b): (f64, f64), i: usize, n: usize| if n <= 1 { a } else { a + (b - a) * i as f64 / (n - 1) as f64 };
    (0..nx).flat_map(|i| (0..ny).map(move |j| (lerp(x, i, nx), lerp(y, j, ny)))).collect()
}
