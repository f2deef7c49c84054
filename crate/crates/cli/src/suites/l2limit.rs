//! Exact L² distance between the difference quotient `(𝓔_r - 1)/r · 𝓔_c`
//! and `X 𝓔_c` along `r = 2^-k`.

use heisenberg_core::verify::{l2_limit_steps, verify_l2_limit, VerifyError};
use heisenberg_core::VarianceParam;

use super::{complex, complex_label, seed_context, Collector, SuiteOutput};
use crate::config::{RunConfig, Suite};

/// What the norm sequence for one exponent looks like.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Outcome {
    pub norms: Vec<f64>,
    pub strictly_decreasing: bool,
    pub last_ratio: f64,
    pub final_norm: f64,
}

pub fn outcome(norms: Vec<f64>) -> L2Outcome {
    let n = norms.len();
    L2Outcome {
        strictly_decreasing: norms.windows(2).all(|w| w[1] < w[0]),
        last_ratio: if n >= 2 { norms[n - 1] / norms[n - 2] } else { f64::NAN },
        final_norm: norms.last().copied().unwrap_or(f64::NAN),
        norms,
    }
}

pub fn run(cfg: &RunConfig) -> SuiteOutput {
    let ctx = seed_context(cfg);
    let mut out = Collector::new(Suite::L2limit, &ctx);
    let c = &cfg.cases;
    let t = &cfg.tolerances;
    let rs = l2_limit_steps(c.l2_steps);
    for &cz in &c.l2_exponents {
        let cc = complex(cz);
        let id = format!("c={}", complex_label(cc));
        let norms = VarianceParam::new(c.l2_q).map_err(VerifyError::Algebra).and_then(|q| verify_l2_limit(cc, q, &rs));
        match norms {
            Ok(norms) => {
                let o = outcome(norms);
                let ratio_ok = (o.last_ratio - 0.5).abs() <= t.l2_ratio_band;
                let pass = o.strictly_decreasing && ratio_ok && o.final_norm < t.l2_final;
                out.metric(
                    id,
                    o.final_norm,
                    t.l2_final,
                    pass,
                    format!(
                        "final norm at r=2^-{}; last ratio {:.6}; strictly decreasing: {}",
                        c.l2_steps, o.last_ratio, o.strictly_decreasing
                    ),
                );
            }
            Err(e) => out.error(id, &e),
        }
    }
    out.finish()
}
