use num_complex::Complex64;

use super::ito::{ito_sums, max_step, q_at, second_moments, trapezoid_dh};
use super::{CenteringFunction, Estimate, ProcessElement, VerifyError, DEFAULT_DISCRETIZATION_FACTOR, DEFAULT_K_SIGMA};
use crate::algebra::{inner_product, PolyExpElement, VarianceParam};
use crate::exec::Backend;
use crate::processes::PathEnsemble;

/// Relative tolerance of the exact fixed-time inequality.
pub const H1_TOLERANCE: f64 = 1e-9;

/// Note attached to reports whose two sides agree in exact arithmetic.
pub const EQUALITY_NOTE: &str = "derived equality case";

/// The same Monte Carlo left-hand side on the grid with every other point dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub coarse_steps: usize,
    pub coarse_lhs: f64,
    pub coarse_rhs: f64,
}

/// One evaluation of `sqrt(F1) sqrt(F2) ≥ RHS`.
#[derive(Debug, Clone, PartialEq)]
pub struct InequalityReport {
    pub factor1: Estimate,
    pub factor2: Estimate,
    pub lhs_product: f64,
    pub lhs_stderr: f64,
    pub rhs: f64,
    /// `lhs_product - rhs`.
    pub slack: f64,
    pub k_sigma: f64,
    pub discretization_allowance: f64,
    /// Total amount `lhs_product` may fall short of `rhs` and still pass.
    pub allowance: f64,
    pub pass: bool,
    pub equality_case: bool,
    pub refinement: Option<Refinement>,
}

impl InequalityReport {
    fn assemble(
        factor1: Estimate,
        factor2: Estimate,
        rhs: f64,
        k_sigma: f64,
        discretization_allowance: f64,
        extra_allowance: f64,
    ) -> Self {
        let (f1, f2) = (factor1.mean.re, factor2.mean.re);
        let lhs = (f1 * f2).sqrt();
        let (s1, s2) = (factor1.stderr, factor2.stderr);
        let lhs_stderr = if s1 == 0.0 && s2 == 0.0 {
            0.0
        } else if f1 > 0.0 && f2 > 0.0 {
            0.5 * (f2 / f1).sqrt() * s1 + 0.5 * (f1 / f2).sqrt() * s2
        } else {
            ((f1 + s1) * (f2 + s2)).sqrt() - lhs
        };
        let allowance = k_sigma * lhs_stderr + discretization_allowance + extra_allowance;
        Self {
            factor1,
            factor2,
            lhs_product: lhs,
            lhs_stderr,
            rhs,
            slack: lhs - rhs,
            k_sigma,
            discretization_allowance,
            allowance,
            pass: lhs >= rhs - allowance,
            equality_case: false,
            refinement: None,
        }
    }
}

fn squared_norm(f: &PolyExpElement) -> Result<f64, VerifyError> {
    Ok(inner_product(f, f)?.re)
}

fn centered(y: &PolyExpElement, c: f64) -> Result<PolyExpElement, VerifyError> {
    Ok(y.apply_x().sub(&y.scale(Complex64::new(c, 0.0))?)?)
}

/// Fixed-time inequality `‖(X - c)Y‖ ‖(X - c̃)𝒢Y‖ ≥ q ‖Y‖²`, all three
/// quantities computed exactly. `y` is read at `q`.
pub fn verify_h1(y: &PolyExpElement, c: f64, c_tilde: f64, q: VarianceParam) -> Result<InequalityReport, VerifyError> {
    verify_h1_with(y, c, c_tilde, q, H1_TOLERANCE)
}

/// As [`verify_h1`] with the pass threshold `tolerance * max(1, rhs)`.
pub fn verify_h1_with(
    y: &PolyExpElement,
    c: f64,
    c_tilde: f64,
    q: VarianceParam,
    tolerance: f64,
) -> Result<InequalityReport, VerifyError> {
    if !c.is_finite() || !c_tilde.is_finite() {
        return Err(VerifyError::InvalidArgument(format!("centerings must be finite reals, got {c}, {c_tilde}")));
    }
    let y = y.with_q(q);
    let gy = y.apply_g()?;
    let f1 = squared_norm(&centered(&y, c)?)?;
    let f2 = squared_norm(&centered(&gy, c_tilde)?)?;
    let rhs = q.get() * squared_norm(&y)?;
    let tol = tolerance * rhs.abs().max(1.0);
    let mut report = InequalityReport::assemble(
        Estimate::exact(Complex64::new(f1, 0.0)),
        Estimate::exact(Complex64::new(f2, 0.0)),
        rhs,
        0.0,
        0.0,
        tol,
    );
    let constant = y.terms().iter().all(|t| t.exponent() == Complex64::new(0.0, 0.0) && t.degree() == 0);
    report.equality_case = constant && c == 0.0 && c_tilde == 0.0;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct H2Options {
    pub k_sigma: f64,
    /// Multiplies the largest grid step (in `t` or `⟨X⟩_t`) and `max(1, rhs)`.
    pub discretization_factor: f64,
    pub refinement: bool,
    pub backend: Backend,
}

impl Default for H2Options {
    fn default() -> Self {
        Self {
            k_sigma: DEFAULT_K_SIGMA,
            discretization_factor: DEFAULT_DISCRETIZATION_FACTOR,
            refinement: true,
            backend: Backend::default(),
        }
    }
}

pub fn verify_h2(
    y: &ProcessElement,
    g: &CenteringFunction,
    g_tilde: &CenteringFunction,
    ens: &PathEnsemble,
) -> Result<InequalityReport, VerifyError> {
    verify_h2_with(y, g, g_tilde, ens, &H2Options::default())
}

/// Integrated inequality
/// `sqrt(E|∫(X-g)Y dX|²) sqrt(E|∫(X-g̃)𝒢Y dX|²) ≥ ∫ E|Y_t|² h(t) dh(t)`
/// with Monte Carlo factors on the ensemble's paths and an exact right side.
pub fn verify_h2_with(
    y: &ProcessElement,
    g: &CenteringFunction,
    g_tilde: &CenteringFunction,
    ens: &PathEnsemble,
    opts: &H2Options,
) -> Result<InequalityReport, VerifyError> {
    for c in [g, g_tilde] {
        c.validate().map_err(VerifyError::InvalidArgument)?;
    }
    let z1 = y.centered(g);
    let z2 = y.transformed().centered(g_tilde);
    let h = ens.quadratic_variation();

    let factors = |stride: usize| -> Result<(Estimate, Estimate), VerifyError> {
        let a: Vec<f64> = ito_sums(opts.backend, &z1, ens, stride)?.iter().map(|v| v.norm_sqr()).collect();
        let b: Vec<f64> = ito_sums(opts.backend, &z2, ens, stride)?.iter().map(|v| v.norm_sqr()).collect();
        Ok((Estimate::from_real_samples(&a)?, Estimate::from_real_samples(&b)?))
    };

    let weights: Vec<f64> = second_moments(y, ens)?.iter().zip(h).map(|(m, hk)| m * hk).collect();
    let rhs = trapezoid_dh(ens, &weights);
    let (f1, f2) = factors(1)?;
    let disc = opts.discretization_factor * max_step(ens) * rhs.abs().max(1.0);
    let mut report = InequalityReport::assemble(f1, f2, rhs, opts.k_sigma, disc, 0.0);

    let points = ens.grid().points();
    let times = (0..points.len()).map(|k| Ok((points[k], q_at(ens, k)?))).collect::<Result<Vec<_>, VerifyError>>()?;
    report.equality_case = g.is_zero() && g_tilde.is_zero() && y.is_constant_on(&times)?;

    let m = ens.grid().steps();
    if opts.refinement && m >= 2 && m.is_multiple_of(2) {
        let (c1, c2) = factors(2)?;
        let coarse: Vec<f64> = weights.iter().step_by(2).copied().collect();
        let pieces: Vec<f64> =
            (0..coarse.len() - 1).map(|j| 0.5 * (coarse[j] + coarse[j + 1]) * (h[2 * j + 2] - h[2 * j])).collect();
        report.refinement = Some(Refinement {
            coarse_steps: m / 2,
            coarse_lhs: (c1.mean.re * c2.mean.re).sqrt(),
            coarse_rhs: crate::exec::pairwise_sum(&pieces),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PolyExpElement;
    use crate::processes::{generate, TimeChange, TimeGrid};

    fn q(v: f64) -> VarianceParam {
        VarianceParam::new(v).unwrap()
    }

    #[test]
    fn h1_examples() {
        let r = verify_h1(&PolyExpElement::one(q(1.0)), 0.0, 0.0, q(1.0)).unwrap();
        assert!(r.pass && r.equality_case);
        assert!((r.lhs_product - 1.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-12);

        let r = verify_h1(&PolyExpElement::x(q(1.0)), 0.0, 0.0, q(1.0)).unwrap();
        assert!((r.factor1.mean.re - 3.0).abs() < 1e-12 && (r.factor2.mean.re - 3.0).abs() < 1e-12);
        assert!((r.lhs_product - 3.0).abs() < 1e-12 && (r.rhs - 1.0).abs() < 1e-12);
        assert!(r.pass && !r.equality_case);

        let e1 = PolyExpElement::exponential(Complex64::new(1.0, 0.0), q(1.0)).unwrap();
        let r = verify_h1(&e1, 0.0, 0.0, q(1.0)).unwrap();
        assert!((r.rhs - std::f64::consts::E).abs() < 1e-12);
        assert!(r.pass && r.lhs_product >= r.rhs);
    }

    #[test]
    fn h1_equality_slack_is_zero_at_every_q() {
        for v in [0.25, 1.0, 4.0] {
            let r = verify_h1(&PolyExpElement::one(q(v)), 0.0, 0.0, q(v)).unwrap();
            assert!(r.slack.abs() <= 1e-9, "q = {v}: slack {}", r.slack);
        }
    }

    #[test]
    fn h1_rejects_non_finite_centering() {
        assert!(verify_h1(&PolyExpElement::one(q(1.0)), f64::NAN, 0.0, q(1.0)).is_err());
    }

    #[test]
    fn h2_zero_process() {
        let ens = generate(&TimeChange::Identity, &TimeGrid::uniform(1.0, 8).unwrap(), 10, 1).unwrap();
        let r = verify_h2(&ProcessElement::zero(), &CenteringFunction::Zero, &CenteringFunction::Zero, &ens).unwrap();
        assert_eq!((r.lhs_product, r.rhs, r.slack), (0.0, 0.0, 0.0));
        assert!(r.pass);
        assert_eq!(r.refinement.as_ref().unwrap().coarse_steps, 4);
    }

    #[test]
    fn h2_rhs_is_trapezoid_of_t_squared() {
        let ens = generate(&TimeChange::Identity, &TimeGrid::uniform(1.0, 4).unwrap(), 4, 1).unwrap();
        let r = verify_h2(&ProcessElement::x(), &CenteringFunction::Zero, &CenteringFunction::Zero, &ens).unwrap();
        // trapezoid error of ∫ t² on a uniform grid is step² / 6
        assert!((r.rhs - (1.0 / 3.0 + 1.0 / 96.0)).abs() < 1e-14);
        let coarse = r.refinement.unwrap();
        assert!((coarse.coarse_rhs - (1.0 / 3.0 + 1.0 / 24.0)).abs() < 1e-14);
    }

    #[test]
    fn propagated_stderr_first_order() {
        let f1 = Estimate { mean: Complex64::new(4.0, 0.0), stderr: 0.1, n: 10 };
        let f2 = Estimate { mean: Complex64::new(1.0, 0.0), stderr: 0.2, n: 10 };
        let r = InequalityReport::assemble(f1, f2, 1.0, 4.0, 0.0, 0.0);
        assert!((r.lhs_product - 2.0).abs() < 1e-15);
        assert!((r.lhs_stderr - (0.5 * 0.5 * 0.1 + 0.5 * 2.0 * 0.2)).abs() < 1e-15);
    }
}
