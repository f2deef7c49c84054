//! Integrated inequality with Monte Carlo factors on the shared ensemble.

use heisenberg_core::algebra::sample::ElementSampler;
use heisenberg_core::verify::report::ReportRecord;
use heisenberg_core::verify::{verify_h2_with, CenteringFunction, H2Options, ProcessElement, VerifyError};
use heisenberg_core::{Backend, PathEnsemble, VarianceParam};
use rand::Rng;

use super::{ensemble_context, Collector, SuiteOutput};
use crate::config::{RunConfig, Suite};

pub const RANDOM_MAX_DEGREE: usize = 2;
pub const RANDOM_MAX_TERMS: usize = 2;
pub const RANDOM_MAX_ABS: f64 = 1.0;

fn random_centering(sampler: &mut ElementSampler, horizon: f64) -> CenteringFunction {
    let rng = sampler.rng();
    match rng.random_range(0..3) {
        0 => CenteringFunction::Zero,
        1 => CenteringFunction::Constant { value: rng.random_range(-1.0..=1.0) },
        _ => CenteringFunction::PiecewiseLinear {
            knots: (0..3).map(|j| (horizon * j as f64 / 2.0, rng.random_range(-1.0..=1.0))).collect(),
        },
    }
}

/// `(Y, g, g̃)` triples with fixed `𝓔`-basis coefficients, small exponents.
pub fn random_cases(n: usize, seed: u64, horizon: f64) -> Vec<(ProcessElement, CenteringFunction, CenteringFunction)> {
    let mut sampler = ElementSampler::new(seed ^ 0x6832_6832);
    (0..n)
        .map(|_| {
            let y = sampler.element(VarianceParam::ZERO, RANDOM_MAX_DEGREE, RANDOM_MAX_TERMS, RANDOM_MAX_ABS);
            let g = random_centering(&mut sampler, horizon);
            let gt = random_centering(&mut sampler, horizon);
            (ProcessElement::fixed(y), g, gt)
        })
        .collect()
}

pub fn options(cfg: &RunConfig) -> H2Options {
    H2Options {
        k_sigma: cfg.tolerances.k_sigma,
        discretization_factor: cfg.tolerances.discretization_factor,
        refinement: true,
        backend: Backend::default(),
    }
}

fn check(
    y: &ProcessElement,
    g: &CenteringFunction,
    gt: &CenteringFunction,
    id: &str,
    ens: &PathEnsemble,
    opts: &H2Options,
    out: &mut Collector<'_>,
) {
    let r = verify_h2_with(y, g, gt, ens, opts).map(|r| {
        let mut rec = ReportRecord::from_inequality(id, out.suite(), out.ctx(), &r);
        let case = format!("Y = {}; g = {}; g~ = {}", y.label(), g.label(), gt.label());
        rec.note = if rec.note.is_empty() { case } else { format!("{case}; {}", rec.note) };
        rec
    });
    out.record(id, r);
}

pub fn run(cfg: &RunConfig, ens: &PathEnsemble) -> SuiteOutput {
    let ctx = ensemble_context(cfg, ens);
    let mut out = Collector::new(Suite::H2, &ctx);
    let opts = options(cfg);
    for case in &cfg.cases.h2 {
        match case.y.build() {
            Ok(y) => check(&y, &case.g, &case.g_tilde, &case.id, ens, &opts, &mut out),
            Err(e) => out.error(case.id.clone(), &VerifyError::Algebra(e)),
        }
    }
    for (i, (y, g, gt)) in random_cases(cfg.cases.h2_random, cfg.seed, cfg.horizon).iter().enumerate() {
        check(y, g, gt, &format!("random-{i:02}"), ens, &opts, &mut out);
    }
    out.finish()
}
