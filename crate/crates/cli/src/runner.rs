//! Runs the selected suites and writes the two report files.

use std::fs;
use std::path::Path;

use heisenberg_core::processes::{generate, RNG_ALGORITHM};
use heisenberg_core::verify::report::{write_csv, write_json, ReportDocument, ReportHeader, ReportRecord};
use heisenberg_core::{PathEnsemble, TimeGrid};
use serde::Serialize;

use crate::config::{RunConfig, Suite};
use crate::suites::run_suite;
use crate::{CliError, EXIT_FAIL, EXIT_OVERFLOW, EXIT_PASS};

#[derive(Debug)]
pub struct RunOutcome {
    pub suites: Vec<Suite>,
    pub records: Vec<ReportRecord>,
    pub overflows: usize,
}

impl RunOutcome {
    pub fn failures(&self) -> impl Iterator<Item = &ReportRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// 0 when every case passes, 3 if any case overflowed, 1 otherwise.
    pub fn status(&self) -> i32 {
        if self.overflows > 0 {
            EXIT_OVERFLOW
        } else if self.failures().next().is_some() {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }
}

fn ensemble(cfg: &RunConfig) -> Result<PathEnsemble, CliError> {
    let grid = TimeGrid::uniform(cfg.horizon, cfg.grid).map_err(|e| CliError::Config(e.to_string()))?;
    generate(&cfg.time_change, &grid, cfg.paths, cfg.seed).map_err(|e| CliError::Config(e.to_string()))
}

/// Validates `cfg`, then runs each selected suite to completion.
pub fn run(cfg: &RunConfig) -> Result<RunOutcome, CliError> {
    cfg.validate()?;
    let suites = cfg.selected_suites();
    let ens = if suites.iter().any(|s| s.needs_paths()) { Some(ensemble(cfg)?) } else { None };
    let mut outcome = RunOutcome { suites: suites.clone(), records: Vec::new(), overflows: 0 };
    for s in suites {
        let out = run_suite(s, cfg, ens.as_ref());
        outcome.records.extend(out.records);
        outcome.overflows += out.overflows;
    }
    Ok(outcome)
}

#[derive(Serialize)]
struct Summary {
    cases: usize,
    failed: usize,
    overflows: usize,
    status: i32,
}

#[derive(Serialize)]
struct RunSection<'a> {
    suites: Vec<&'static str>,
    rng: &'static str,
    summary: Summary,
    config: &'a RunConfig,
}

/// Writes `report.csv` and `report.json` into `dir`, creating it if needed.
/// Only the JSON header's timestamp differs between identical runs.
pub fn write_reports(cfg: &RunConfig, outcome: &RunOutcome, dir: &Path) -> Result<(), CliError> {
    let io = |e: &dyn std::fmt::Display| CliError::Io(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(|e| io(&e))?;

    let csv = fs::File::create(dir.join("report.csv")).map_err(|e| io(&e))?;
    write_csv(&outcome.records, std::io::BufWriter::new(csv)).map_err(|e| io(&e))?;

    let run = RunSection {
        suites: outcome.suites.iter().map(|s| s.name()).collect(),
        rng: RNG_ALGORITHM,
        summary: Summary {
            cases: outcome.records.len(),
            failed: outcome.failures().count(),
            overflows: outcome.overflows,
            status: outcome.status(),
        },
        config: cfg,
    };
    let doc = ReportDocument {
        header: ReportHeader {
            generated_at: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        run: &run,
        records: &outcome.records,
    };
    let mut json = std::io::BufWriter::new(fs::File::create(dir.join("report.json")).map_err(|e| io(&e))?);
    write_json(&doc, &mut json).map_err(|e| io(&e))?;
    use std::io::Write;
    json.write_all(b"\n").and_then(|_| json.flush()).map_err(|e| io(&e))?;
    Ok(())
}
