//! Operator identities, `D`/`D*` adjointness and the unitarity and order of
//! `𝒢` on seeded random elements.

use heisenberg_core::algebra::sample::ElementSampler;
use heisenberg_core::algebra::{coefficient_sensitivity, inner_product, norm, Commutator};
use heisenberg_core::verify::VerifyError;
use heisenberg_core::{AlgebraError, PolyExpElement, VarianceParam};

use super::{seed_context, Collector, SuiteOutput};
use crate::config::{RunConfig, Suite};

pub const Q_VALUES: [f64; 4] = [0.0, 0.5, 1.0, 4.0];
pub const MAX_DEGREE: usize = 8;
pub const MAX_TERMS: usize = 3;
pub const MAX_ABS_C: f64 = 3.0;

/// Worst values seen over the sample.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AlgebraSummary {
    pub samples: usize,
    /// Samples whose residual was not the zero element, per commutator.
    pub nonzero_residuals: [usize; 4],
    pub adjoint_rel: f64,
    pub unitary_rel: f64,
    /// Largest `‖𝒢⁴f - f‖` as a fraction of its rounding bound.
    pub order_four_ratio: f64,
    pub order_four_rel: f64,
    pub order_four_exponents_exact: bool,
}

fn rel(err: f64, scale: f64) -> f64 {
    if err == 0.0 {
        0.0
    } else if scale > 0.0 {
        err / scale
    } else {
        f64::INFINITY
    }
}

fn order_four(f: &PolyExpElement, s: &mut AlgebraSummary) -> Result<(), AlgebraError> {
    let g1 = f.apply_g()?;
    let g2 = g1.apply_g()?;
    let g3 = g2.apply_g()?;
    let g4 = g3.apply_g()?;
    let same = g4.terms().len() == f.terms().len()
        && g4.terms().iter().zip(f.terms()).all(|(a, b)| a.exponent() == b.exponent());
    s.order_four_exponents_exact &= same;
    let err = norm(&g4.sub(f)?)?;
    let bound =
        f64::EPSILON * (coefficient_sensitivity(&g1)? + coefficient_sensitivity(&g2)? + coefficient_sensitivity(&g3)?);
    s.order_four_ratio = s.order_four_ratio.max(rel(err, bound));
    s.order_four_rel = s.order_four_rel.max(rel(err, norm(f)?));
    Ok(())
}

/// Runs every algebra check on `samples` random pairs drawn from `seed`.
pub fn summarize(samples: usize, seed: u64) -> Result<AlgebraSummary, AlgebraError> {
    let mut sampler = ElementSampler::new(seed);
    let mut s = AlgebraSummary { samples, order_four_exponents_exact: true, ..Default::default() };
    for i in 0..samples {
        let q = VarianceParam::new(Q_VALUES[i % Q_VALUES.len()])?;
        let f = sampler.element(q, MAX_DEGREE, MAX_TERMS, MAX_ABS_C);
        let g = sampler.element(q, MAX_DEGREE, MAX_TERMS, MAX_ABS_C);

        for (k, which) in Commutator::ALL.into_iter().enumerate() {
            if !f.commutator_residual(which)?.is_zero() {
                s.nonzero_residuals[k] += 1;
            }
        }

        let (df, dsg) = (f.apply_d()?, g.apply_d_star()?);
        let err = (inner_product(&df, &g)? - inner_product(&f, &dsg)?).norm();
        let scale = norm(&df)? * norm(&g)? + norm(&f)? * norm(&dsg)?;
        s.adjoint_rel = s.adjoint_rel.max(rel(err, scale));

        let err = (inner_product(&f.apply_g()?, &g.apply_g()?)? - inner_product(&f, &g)?).norm();
        s.unitary_rel = s.unitary_rel.max(rel(err, norm(&f)? * norm(&g)?));

        order_four(&f, &mut s)?;
        order_four(&g, &mut s)?;
    }
    Ok(s)
}

pub fn run(cfg: &RunConfig) -> SuiteOutput {
    let ctx = seed_context(cfg);
    let mut out = Collector::new(Suite::Algebra, &ctx);
    let n = cfg.cases.algebra_samples;
    let tol = &cfg.tolerances;
    match summarize(n, cfg.seed) {
        Err(e) => out.error("algebra", &VerifyError::Algebra(e)),
        Ok(s) => {
            for (k, which) in Commutator::ALL.into_iter().enumerate() {
                let bad = s.nonzero_residuals[k];
                out.metric(
                    format!("commutator-{which}"),
                    bad as f64,
                    0.0,
                    bad == 0,
                    format!("{bad} of {n} residuals nonzero"),
                );
            }
            out.metric(
                "d-adjoint",
                s.adjoint_rel,
                tol.adjointness,
                s.adjoint_rel <= tol.adjointness,
                format!("{n} pairs"),
            );
            out.metric("g-unitary", s.unitary_rel, tol.unitarity, s.unitary_rel <= tol.unitarity, format!("{n} pairs"));
            let pass = s.order_four_exponents_exact && s.order_four_ratio <= 1.0;
            out.metric(
                "g-order-four",
                s.order_four_ratio,
                1.0,
                pass,
                format!(
                    "error over rounding bound; exponents exact: {}; max relative L2 error {:e}",
                    s.order_four_exponents_exact, s.order_four_rel
                ),
            );
        }
    }
    out.finish()
}
