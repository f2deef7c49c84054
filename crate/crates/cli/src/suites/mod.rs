//! One module per suite. Each turns its cases into report records; a case
//! that errors still produces a (failing) record, so no suite reports
//! partially.

pub mod algebra;
pub mod h1;
pub mod h2;
pub mod isometry;
pub mod l2limit;
pub mod lemma2;
pub mod pde;

use heisenberg_core::verify::report::{RecordContext, ReportRecord};
use heisenberg_core::verify::VerifyError;
use heisenberg_core::PathEnsemble;
use num_complex::Complex64;

use crate::config::{RunConfig, Suite};

/// Records of one suite plus the number of cases stopped by overflow.
#[derive(Debug, Default)]
pub struct SuiteOutput {
    pub records: Vec<ReportRecord>,
    pub overflows: usize,
}

pub(crate) struct Collector<'a> {
    suite: Suite,
    ctx: &'a RecordContext,
    out: SuiteOutput,
}

impl<'a> Collector<'a> {
    pub(crate) fn new(suite: Suite, ctx: &'a RecordContext) -> Self {
        Self { suite, ctx, out: SuiteOutput::default() }
    }

    pub(crate) fn ctx(&self) -> &RecordContext {
        self.ctx
    }

    pub(crate) fn suite(&self) -> &'static str {
        self.suite.name()
    }

    pub(crate) fn push(&mut self, rec: ReportRecord) {
        self.out.records.push(rec);
    }

    pub(crate) fn metric(
        &mut self,
        case_id: impl Into<String>,
        metric: f64,
        tolerance: f64,
        pass: bool,
        note: impl Into<String>,
    ) {
        let rec = ReportRecord::metric(case_id, self.suite.name(), self.ctx, metric, tolerance, pass, note);
        self.push(rec);
    }

    pub(crate) fn error(&mut self, case_id: impl Into<String>, e: &VerifyError) {
        let note = match e {
            VerifyError::Overflow { .. } => {
                self.out.overflows += 1;
                format!("overflow: {e}")
            }
            _ => format!("error: {e}"),
        };
        let rec = ReportRecord::bare(case_id, self.suite.name(), self.ctx, false, note);
        self.push(rec);
    }

    pub(crate) fn record(&mut self, case_id: &str, r: Result<ReportRecord, VerifyError>) {
        match r {
            Ok(rec) => self.push(rec),
            Err(e) => self.error(case_id, &e),
        }
    }

    pub(crate) fn finish(self) -> SuiteOutput {
        self.out
    }
}

/// Context of records that depend only on the seed.
pub(crate) fn seed_context(cfg: &RunConfig) -> RecordContext {
    RecordContext { seed: Some(cfg.seed), ..Default::default() }
}

/// Context of records computed on the shared path ensemble.
pub(crate) fn ensemble_context(cfg: &RunConfig, ens: &PathEnsemble) -> RecordContext {
    RecordContext {
        seed: Some(ens.seed()),
        n_paths: Some(ens.n_paths()),
        grid_steps: Some(ens.grid().steps()),
        horizon: Some(ens.grid().horizon()),
        h_kind: Some(cfg.time_change.label()),
    }
}

pub(crate) fn complex(z: [f64; 2]) -> Complex64 {
    Complex64::new(z[0], z[1])
}

/// Compact label such as `1`, `-1`, `i`, `1+i`, `0.5-2i`.
pub(crate) fn complex_label(z: Complex64) -> String {
    let num = |v: f64| if v == v.trunc() && v.abs() < 1e15 { format!("{}", v as i64) } else { format!("{v}") };
    let imag = |v: f64| match v {
        1.0 => "i".to_string(),
        -1.0 => "-i".to_string(),
        _ => format!("{}i", num(v)),
    };
    match (z.re == 0.0, z.im == 0.0) {
        (_, true) => num(z.re),
        (true, false) => imag(z.im),
        (false, false) => {
            let im = imag(z.im);
            if im.starts_with('-') {
                format!("{}{}", num(z.re), im)
            } else {
                format!("{}+{}", num(z.re), im)
            }
        }
    }
}

/// Runs one suite. `ensemble` must be present for suites that need paths.
pub fn run_suite(suite: Suite, cfg: &RunConfig, ensemble: Option<&PathEnsemble>) -> SuiteOutput {
    match suite {
        Suite::Algebra => algebra::run(cfg),
        Suite::Lemma2 => lemma2::run(cfg),
        Suite::H1 => h1::run(cfg),
        Suite::Pde => pde::run(cfg),
        Suite::L2limit => l2limit::run(cfg),
        Suite::Isometry => isometry::run(cfg, ensemble.expect("isometry needs the path ensemble")),
        Suite::H2 => h2::run(cfg, ensemble.expect("h2 needs the path ensemble")),
    }
}
