//! `E|∫ Z dX|² = ∫ E|Z_t|² d⟨X⟩_t` on the shared ensemble.

use heisenberg_core::verify::report::ReportRecord;
use heisenberg_core::verify::{verify_isometry, VerifyError, DEFAULT_DISCRETIZATION_FACTOR};
use heisenberg_core::PathEnsemble;

use super::{ensemble_context, Collector, SuiteOutput};
use crate::config::{RunConfig, Suite};

pub fn run(cfg: &RunConfig, ens: &PathEnsemble) -> SuiteOutput {
    let ctx = ensemble_context(cfg, ens);
    let mut out = Collector::new(Suite::Isometry, &ctx);
    let (k, factor) = (cfg.tolerances.k_sigma, cfg.tolerances.discretization_factor);
    for case in &cfg.cases.isometry {
        let r = case.z.build().map_err(VerifyError::Algebra).and_then(|z| verify_isometry(&z, ens)).map(|mut r| {
            r.discretization_allowance *= factor / DEFAULT_DISCRETIZATION_FACTOR;
            r.k_sigma = k;
            r.pass = (r.mc.mean.re - r.exact).abs() <= k * r.mc.stderr + r.discretization_allowance;
            let mut rec = ReportRecord::from_isometry(case.id.as_str(), Suite::Isometry.name(), out.ctx(), &r);
            rec.note = format!("Z = {}", case.z.label());
            rec
        });
        out.record(&case.id, r);
    }
    out.finish()
}
