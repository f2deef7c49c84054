use num_complex::Complex64;

use super::{CompiledElement, Estimate, ProcessElement, VerifyError, DEFAULT_DISCRETIZATION_FACTOR, DEFAULT_K_SIGMA};
use crate::algebra::{norm, VarianceParam};
use crate::exec::{self, Backend};
use crate::processes::{PathEnsemble, ProcessError};

pub(crate) fn q_at(ens: &PathEnsemble, k: usize) -> Result<VarianceParam, VerifyError> {
    VarianceParam::new(ens.quadratic_variation()[k]).map_err(VerifyError::from)
}

/// Compiled values of `z` at grid indices `0, stride, 2 stride, ...` (excluding the last point).
fn compile_left_points(
    z: &ProcessElement,
    ens: &PathEnsemble,
    stride: usize,
) -> Result<Vec<CompiledElement>, VerifyError> {
    let points = ens.grid().points();
    (0..ens.grid().steps())
        .step_by(stride)
        .map(|k| Ok(CompiledElement::new(&z.at(points[k], q_at(ens, k)?)?)))
        .collect()
}

pub fn ito_integral(z: &ProcessElement, ens: &PathEnsemble) -> Result<Vec<Complex64>, VerifyError> {
    ito_integral_with(Backend::default(), z, ens)
}

/// Left-point sums `Σ_k Z(t_k, X_{t_k}) (X_{t_{k+1}} - X_{t_k})`, one per path.
pub fn ito_integral_with(
    backend: Backend,
    z: &ProcessElement,
    ens: &PathEnsemble,
) -> Result<Vec<Complex64>, VerifyError> {
    ito_sums(backend, z, ens, 1)
}

/// Same sums on the sub-grid of every `stride`-th point.
pub(crate) fn ito_sums(
    backend: Backend,
    z: &ProcessElement,
    ens: &PathEnsemble,
    stride: usize,
) -> Result<Vec<Complex64>, VerifyError> {
    let m = ens.grid().steps();
    if stride == 0 || !m.is_multiple_of(stride) {
        return Err(VerifyError::InvalidArgument(format!("stride {stride} does not divide {m} steps")));
    }
    let zs = compile_left_points(z, ens, stride)?;
    let per_path = exec::map_indexed(backend, ens.n_paths(), |i| {
        let x = ens.path(i);
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, zk) in zs.iter().enumerate() {
            if zk.is_zero() {
                continue;
            }
            let k = j * stride;
            acc += zk.eval(x[k])? * (x[k + stride] - x[k]);
        }
        Ok(acc)
    });
    per_path.into_iter().collect()
}

pub fn mc_expectation(f: &ProcessElement, t: f64, ens: &PathEnsemble) -> Result<Estimate, VerifyError> {
    mc_expectation_with(Backend::default(), f, t, ens)
}

/// Sample mean of `f(t)` evaluated at `X_t` across the ensemble.
pub fn mc_expectation_with(
    backend: Backend,
    f: &ProcessElement,
    t: f64,
    ens: &PathEnsemble,
) -> Result<Estimate, VerifyError> {
    let k = ens.grid().index_of(t).map_err(|_| VerifyError::Process(ProcessError::NotOnGrid(t)))?;
    let compiled = CompiledElement::new(&f.at(ens.grid().points()[k], q_at(ens, k)?)?);
    let values = exec::map_indexed(backend, ens.n_paths(), |i| compiled.eval(ens.path(i)[k]));
    let values = values.into_iter().collect::<Result<Vec<_>, _>>()?;
    Estimate::from_samples(&values)
}

/// Trapezoid rule for `∫ F(t) dh(t)` over the ensemble's grid.
pub(crate) fn trapezoid_dh(ens: &PathEnsemble, values: &[f64]) -> f64 {
    let h = ens.quadratic_variation();
    let pieces: Vec<f64> = (0..h.len() - 1).map(|k| 0.5 * (values[k] + values[k + 1]) * (h[k + 1] - h[k])).collect();
    exec::pairwise_sum(&pieces)
}

/// `E|Z_t|²` at every grid point, exactly.
pub(crate) fn second_moments(z: &ProcessElement, ens: &PathEnsemble) -> Result<Vec<f64>, VerifyError> {
    let points = ens.grid().points();
    (0..points.len())
        .map(|k| {
            let n = norm(&z.at(points[k], q_at(ens, k)?)?)?;
            Ok(n * n)
        })
        .collect()
}

/// Largest step of the grid in either clock, `t` or `⟨X⟩_t`.
pub(crate) fn max_step(ens: &PathEnsemble) -> f64 {
    let h = ens.quadratic_variation();
    let dh = h.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    dh.max(ens.grid().max_step())
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsometryReport {
    /// Monte Carlo `E|∫ Z dX|²`.
    pub mc: Estimate,
    /// Trapezoid rule for `∫ E|Z_t|² d⟨X⟩_t`.
    pub exact: f64,
    pub z_score: f64,
    pub k_sigma: f64,
    pub discretization_allowance: f64,
    pub pass: bool,
}

/// Compares both sides of the Itô isometry. Passes when the Monte Carlo
/// side is within `k_sigma` standard errors plus an `O(max step)` allowance.
pub fn verify_isometry(z: &ProcessElement, ens: &PathEnsemble) -> Result<IsometryReport, VerifyError> {
    let integrals = ito_integral(z, ens)?;
    let squares: Vec<f64> = integrals.iter().map(|v| v.norm_sqr()).collect();
    let mc = Estimate::from_real_samples(&squares)?;
    let exact = trapezoid_dh(ens, &second_moments(z, ens)?);
    let disc = DEFAULT_DISCRETIZATION_FACTOR * max_step(ens) * exact.abs().max(1.0);
    let diff = (mc.mean.re - exact).abs();
    Ok(IsometryReport {
        mc,
        exact,
        z_score: mc.z_score(Complex64::new(exact, 0.0)),
        k_sigma: DEFAULT_K_SIGMA,
        discretization_allowance: disc,
        pass: diff <= DEFAULT_K_SIGMA * mc.stderr + disc,
    })
}
