//! `⟨𝓔_c, 𝓔_d⟩ = e^{c d̄ q}` three ways: closed form, algebra inner
//! product, and a Monte Carlo mean of `𝓔_c(X) conj(𝓔_d(X))`.

use heisenberg_core::algebra::inner_product;
use heisenberg_core::processes::generate;
use heisenberg_core::verify::report::{RecordContext, ReportRecord};
use heisenberg_core::verify::{mc_expectation, ProcessElement, VerifyError};
use heisenberg_core::{AlgebraError, PolyExpElement, TimeChange, TimeGrid, VarianceParam};

use super::{complex, complex_label, Collector, SuiteOutput};
use crate::config::{RunConfig, Suite};

pub fn run(cfg: &RunConfig) -> SuiteOutput {
    let c = &cfg.cases;
    let ctx = RecordContext {
        seed: Some(cfg.seed),
        n_paths: Some(c.lemma2_paths),
        grid_steps: Some(1),
        horizon: Some(c.lemma2_q),
        h_kind: Some(TimeChange::Identity.label()),
    };
    let mut out = Collector::new(Suite::Lemma2, &ctx);
    let ens = TimeGrid::uniform(c.lemma2_q, 1)
        .and_then(|grid| generate(&TimeChange::Identity, &grid, c.lemma2_paths, cfg.seed));
    let ens = match ens {
        Ok(e) => e,
        Err(e) => {
            out.error("lemma2", &VerifyError::Process(e));
            return out.finish();
        }
    };
    let q = match VarianceParam::new(c.lemma2_q) {
        Ok(q) => q,
        Err(e) => {
            out.error("lemma2", &VerifyError::Algebra(e));
            return out.finish();
        }
    };
    for &cz in &c.lemma2_exponents {
        for &dz in &c.lemma2_exponents {
            let (cc, dd) = (complex(cz), complex(dz));
            let id = format!("c={};d={}", complex_label(cc), complex_label(dd));
            let exact = (cc * dd.conj() * q.get()).exp();
            if !(exact.re.is_finite() && exact.im.is_finite()) {
                for kind in ["algebra", "mc"] {
                    let note = format!("skipped: exp(c conj(d) q) overflows for c = {cc}, d = {dd}");
                    out.push(ReportRecord::bare(format!("{kind}-{id}"), out.suite(), out.ctx(), true, note));
                }
                continue;
            }

            let algebra = (|| {
                let (ec, ed) = (PolyExpElement::exponential(cc, q)?, PolyExpElement::exponential(dd, q)?);
                inner_product(&ec, &ed)
            })();
            match algebra {
                Ok(v) => {
                    let err = (v - exact).norm() / exact.norm();
                    let tol = cfg.tolerances.inner_product;
                    out.metric(
                        format!("algebra-{id}"),
                        err,
                        tol,
                        err <= tol,
                        format!("relative error vs exp(c conj(d) q) = {exact}"),
                    );
                }
                Err(e) => out.error(format!("algebra-{id}"), &VerifyError::Algebra(e)),
            }

            let mc = (|| {
                let f = PolyExpElement::exponential(cc, q)?.mul(&PolyExpElement::exponential(dd, q)?.conjugate())?;
                Ok::<_, VerifyError>(f)
            })()
            .and_then(|f| mc_expectation(&ProcessElement::fixed(f), c.lemma2_q, &ens));
            match mc {
                Ok(est) => {
                    let z = est.z_score(exact);
                    let k = cfg.tolerances.k_sigma;
                    let mut rec = ReportRecord::metric(
                        format!("mc-{id}"),
                        out.suite(),
                        out.ctx(),
                        (est.mean - exact).norm(),
                        k * est.stderr,
                        est.within(exact, k),
                        format!("mc mean {} vs exact {exact}", est.mean),
                    );
                    rec.factor1_mean = Some(est.mean.re);
                    rec.factor1_stderr = Some(est.stderr);
                    rec.rhs_exact = Some(exact.re);
                    rec.z_score = Some(z);
                    rec.k_sigma = Some(k);
                    out.push(rec);
                }
                // exponentials too large to evaluate on this sample are skipped, not failed
                Err(e @ (VerifyError::Overflow { .. } | VerifyError::Algebra(AlgebraError::NonFinite(_)))) => {
                    let rec =
                        ReportRecord::bare(format!("mc-{id}"), out.suite(), out.ctx(), true, format!("skipped: {e}"));
                    out.push(rec);
                }
                Err(e) => out.error(format!("mc-{id}"), &e),
            }
        }
    }
    out.finish()
}
