//! Fixed-time inequality, both sides exact.

use heisenberg_core::algebra::sample::ElementSampler;
use heisenberg_core::verify::report::ReportRecord;
use heisenberg_core::verify::{verify_h1_with, VerifyError};
use heisenberg_core::{PolyExpElement, VarianceParam};
use rand::Rng;

use super::{seed_context, Collector, SuiteOutput};
use crate::config::{RunConfig, Suite};

pub const RANDOM_Q: [f64; 3] = [0.25, 1.0, 4.0];
pub const RANDOM_MAX_DEGREE: usize = 4;
pub const RANDOM_MAX_TERMS: usize = 2;
pub const RANDOM_MAX_ABS: f64 = 2.0;

/// Random cases drawn from a stream independent of the algebra suite's.
pub fn random_cases(n: usize, seed: u64) -> Result<Vec<(PolyExpElement, f64, f64, VarianceParam)>, VerifyError> {
    let mut sampler = ElementSampler::new(seed ^ 0x6831_6831);
    (0..n)
        .map(|i| {
            let q = VarianceParam::new(RANDOM_Q[i % RANDOM_Q.len()])?;
            let y = sampler.element(q, RANDOM_MAX_DEGREE, RANDOM_MAX_TERMS, RANDOM_MAX_ABS);
            let c = sampler.rng().random_range(-RANDOM_MAX_ABS..=RANDOM_MAX_ABS);
            let ct = sampler.rng().random_range(-RANDOM_MAX_ABS..=RANDOM_MAX_ABS);
            Ok((y, c, ct, q))
        })
        .collect()
}

fn check(y: &PolyExpElement, c: f64, ct: f64, q: VarianceParam, cfg: &RunConfig, id: &str, out: &mut Collector<'_>) {
    let tol = cfg.tolerances.h1;
    match verify_h1_with(y, c, ct, q, tol) {
        Ok(r) => {
            let mut rec = ReportRecord::from_inequality(id, out.suite(), out.ctx(), &r);
            if r.equality_case {
                // both sides must agree, not just be ordered
                rec.metric = Some(r.slack.abs());
                rec.tolerance = Some(tol);
                rec.pass &= r.slack.abs() <= tol;
            }
            out.push(rec);
        }
        Err(e) => out.error(id, &e),
    }
}

pub fn run(cfg: &RunConfig) -> SuiteOutput {
    let ctx = seed_context(cfg);
    let mut out = Collector::new(Suite::H1, &ctx);
    for case in &cfg.cases.h1 {
        let built =
            VarianceParam::new(case.q).and_then(|q| Ok((case.y.build()?.at(0.0, q)?, q))).map_err(VerifyError::Algebra);
        match built {
            Ok((y, q)) => check(&y, case.c, case.c_tilde, q, cfg, &case.id, &mut out),
            Err(e) => out.error(case.id.clone(), &e),
        }
    }
    match random_cases(cfg.cases.h1_random, cfg.seed) {
        Ok(cases) => {
            for (i, (y, c, ct, q)) in cases.iter().enumerate() {
                check(y, *c, *ct, *q, cfg, &format!("random-{i:04}"), &mut out);
            }
        }
        Err(e) => out.error("random", &e),
    }
    out.finish()
}
