//! The ten acceptance criteria as plain functions. Each returns whether it
//! passed and a one-line account of what it measured; the `acceptance` test
//! target runs them all.

use std::path::Path;
use std::time::{Duration, Instant};

use clap::Parser;
use heisenberg_cli::cli::{resolve, with_workers, Cli};
use heisenberg_cli::presets;
use heisenberg_cli::suites::{algebra, h1, lemma2, pde};
use heisenberg_cli::{run, write_reports, RunConfig};
use heisenberg_core::processes::generate;
use heisenberg_core::verify::{
    l2_limit_steps, pde_box_points, verify_h2, verify_isometry, verify_l2_limit, verify_pde, CenteringFunction,
    ProcessElement,
};
use heisenberg_core::{PathEnsemble, TimeChange, TimeGrid, VarianceParam};
use num_complex::Complex64;

pub struct Outcome {
    pub pass: bool,
    pub detail: String,
}

/// Name, runtime limit, check.
pub type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Runs `f`, failing it if it takes longer than `limit`.
pub fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    match limit {
        Some(l) => {
            o.detail = format!("{}; {:.2} s (limit {} s)", o.detail, took.as_secs_f64(), l.as_secs());
            o.pass &= took < l;
        }
        None => o.detail = format!("{}; {:.2} s", o.detail, took.as_secs_f64()),
    }
    o
}

fn preset(name: &str) -> RunConfig {
    let mut cfg = RunConfig::default();
    presets::find(name).expect("preset exists").apply(&mut cfg);
    cfg
}

const N: usize = 100_000;
const M: usize = 512;

fn brownian_ensemble() -> PathEnsemble {
    let grid = TimeGrid::uniform(1.0, M).unwrap();
    generate(&TimeChange::Identity, &grid, N, RunConfig::default().seed).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn commutators() -> Outcome {
    let s = algebra::summarize(1000, RunConfig::default().seed).unwrap();
    let pass = s.nonzero_residuals == [0; 4];
    outcome(pass, format!("nonzero residuals per identity {:?} over {} elements", s.nonzero_residuals, s.samples))
}

fn g_unitary() -> Outcome {
    let s = algebra::summarize(1000, RunConfig::default().seed).unwrap();
    let pass = s.unitary_rel <= 1e-9 && s.order_four_exponents_exact && s.order_four_ratio <= 1.0;
    outcome(
        pass,
        format!(
            "max unitarity error {:.2e} (bound 1e-9); G^4: exponents exact {}, error/rounding bound {:.3}, max relative L2 {:.2e}",
            s.unitary_rel, s.order_four_exponents_exact, s.order_four_ratio, s.order_four_rel
        ),
    )
}

fn lemma2_double_entry() -> Outcome {
    let cfg = preset("lemma2-double-entry");
    let out = lemma2::run(&cfg);
    let alg: Vec<_> = out.records.iter().filter(|r| r.case_id.starts_with("algebra-")).collect();
    let mc: Vec<_> = out.records.iter().filter(|r| r.case_id.starts_with("mc-")).collect();
    let max_alg = alg.iter().filter_map(|r| r.metric).fold(0.0, f64::max);
    let max_z = mc.iter().filter_map(|r| r.z_score).fold(0.0, f64::max);
    let skipped = out.records.iter().filter(|r| r.note.starts_with("skipped")).count();
    let pass = alg.len() == 9 && mc.len() == 9 && out.records.iter().all(|r| r.pass) && max_alg <= 1e-12;
    outcome(pass, format!("max algebra relative error {max_alg:.2e} (1e-12); max z-score {max_z:.2} at N = 10^6 (4); skipped {skipped}"))
}

fn l2_limit() -> Outcome {
    let q = VarianceParam::new(1.0).unwrap();
    let rs = l2_limit_steps(12);
    let mut pass = true;
    let mut parts = Vec::new();
    for (label, cc) in [("0", c(0.0, 0.0)), ("1", c(1.0, 0.0)), ("i", c(0.0, 1.0))] {
        let norms = verify_l2_limit(cc, q, &rs).unwrap();
        let decreasing = norms.windows(2).all(|w| w[1] < w[0]);
        let ratio = norms[11] / norms[10];
        let last = norms[11];
        let ok = decreasing && (ratio - 0.5).abs() <= 0.05 && last < 1e-3;
        pass &= ok;
        parts.push(format!("c={label}: final {last:.4e} ratio {ratio:.5} {}", if ok { "ok" } else { "FAIL" }));
    }
    outcome(pass, format!("{} (final < 1e-3, ratio 0.5 +- 0.05)", parts.join("; ")))
}

fn pde_residual() -> Outcome {
    let points = pde_box_points(pde::X_RANGE, pde::Y_RANGE, 81, 31);
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    for (label, cc) in [("0", c(0.0, 0.0)), ("1", c(1.0, 0.0)), ("i", c(0.0, 1.0)), ("1+i", c(1.0, 1.0))] {
        let r = verify_pde(cc, &points, 1e-4).unwrap();
        worst = worst.max(r.max());
        parts.push(format!("c={label} {:.1e}", r.max()));
    }
    outcome(worst <= 1e-6, format!("max residual {} over 81x31 points (1e-6)", parts.join(", ")))
}

fn h1_suite() -> Outcome {
    let cfg = preset("h1-suite");
    let out = h1::run(&cfg);
    let random: Vec<_> = out.records.iter().filter(|r| r.case_id.starts_with("random-")).collect();
    let eq = out.records.iter().find(|r| r.case_id == "y-one").expect("equality case present");
    let (lhs, rhs) = (eq.lhs_product.unwrap(), eq.rhs_exact.unwrap());
    let pass = random.len() == 500
        && out.records.iter().all(|r| r.pass)
        && (lhs - rhs).abs() <= 1e-9
        && (rhs - 1.0).abs() <= 1e-9;
    let failed = out.records.iter().filter(|r| !r.pass).count();
    outcome(
        pass,
        format!(
            "{} random + {} explicit cases, {failed} failed; Y = 1: |LHS - RHS| = {:.1e} (1e-9), RHS = q = {rhs}",
            random.len(),
            out.records.len() - random.len(),
            (lhs - rhs).abs()
        ),
    )
}

fn brownian_equality() -> Outcome {
    let ens = brownian_ensemble();
    let one = ProcessElement::constant(c(1.0, 0.0));
    let r = verify_h2(&one, &CenteringFunction::Zero, &CenteringFunction::Zero, &ens).unwrap();
    let bound = 4.0 * r.lhs_stderr + 10.0 / M as f64;
    let pass = (r.lhs_product - 0.5).abs() <= bound && (r.rhs - 0.5).abs() <= 1e-12 && r.pass && r.equality_case;
    outcome(
        pass,
        format!(
            "LHS {:.5} RHS {:.5}; |LHS - 0.5| = {:.2e} <= 4 sigma + 10/M = {bound:.2e}; inequality pass {}",
            r.lhs_product,
            r.rhs,
            (r.lhs_product - 0.5).abs(),
            r.pass
        ),
    )
}

fn brownian_strict() -> Outcome {
    let ens = brownian_ensemble();
    let r = verify_h2(&ProcessElement::x(), &CenteringFunction::Zero, &CenteringFunction::Zero, &ens).unwrap();
    let bound = 4.0 * r.lhs_stderr + 10.0 / M as f64;
    let rhs_err = (r.rhs - 1.0 / 3.0).abs();
    let slack_err = (r.slack - 2.0 / 3.0).abs();
    let pass = (r.lhs_product - 1.0).abs() <= bound && rhs_err <= 1e-6 && slack_err <= bound + 1e-6 && r.pass;
    outcome(pass, format!("LHS {:.5} (target 1, |err| {:.2e} <= {bound:.2e}); RHS - 1/3 = {rhs_err:.2e} (1e-6, trapezoid); slack {:.5} (target 2/3)", r.lhs_product, (r.lhs_product - 1.0).abs(), r.slack))
}

fn isometry() -> Outcome {
    let ens = brownian_ensemble();
    let one = verify_isometry(&ProcessElement::constant(c(1.0, 0.0)), &ens).unwrap();
    let x = verify_isometry(&ProcessElement::x(), &ens).unwrap();
    let pass =
        one.z_score <= 4.0 && x.z_score <= 4.0 && (one.exact - 1.0).abs() < 1e-12 && (x.exact - 0.5).abs() < 1e-12;
    outcome(
        pass,
        format!(
            "Z = 1: mc {:.5} exact {} z {:.2}; Z = X: mc {:.5} exact {} z {:.2} (4)",
            one.mc.mean.re, one.exact, one.z_score, x.mc.mean.re, x.exact, x.z_score
        ),
    )
}

/// Parses a command line the way the binary does and runs it without printing.
fn run_all(dir: &Path, workers: &str) -> (i32, Vec<u8>, String) {
    let dir_arg = dir.to_str().expect("utf-8 temp path");
    let args = [
        "heisenberg",
        "all",
        "--preset",
        "reproducibility",
        "--seed",
        "42",
        "--workers",
        workers,
        "--out-dir",
        dir_arg,
    ];
    let parsed = Cli::try_parse_from(args).expect("arguments parse");
    let cfg = resolve(parsed.command, &parsed.opts).expect("configuration resolves");
    let code = with_workers(parsed.opts.workers, || {
        let outcome = run(&cfg)?;
        write_reports(&cfg, &outcome, dir)?;
        Ok(outcome.status())
    })
    .expect("run completes");
    let csv = std::fs::read(dir.join("report.csv")).unwrap();
    let json = std::fs::read_to_string(dir.join("report.json")).unwrap();
    // everything after the header object
    let body = json[json.find("\"run\":").expect("run section")..].to_string();
    (code, csv, body)
}

fn reproducibility() -> Outcome {
    let root = tempfile::tempdir().unwrap();
    let runs: Vec<_> = ["1", "1", "2", "4"]
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let dir = root.path().join(format!("run{i}"));
            run_all(&dir, w)
        })
        .collect();
    let first = &runs[0];
    let identical = runs.iter().all(|r| r == first);
    let records = String::from_utf8_lossy(&first.1).lines().count() - 1;
    outcome(
        identical && first.0 == 0,
        format!(
            "4 runs of `all` (workers 1, 1, 2, 4): reports identical {identical}, {records} records, exit {}",
            first.0
        ),
    )
}

/// The criteria in order.
pub fn criteria() -> Vec<Criterion> {
    let secs = |s| Some(Duration::from_secs(s));
    vec![
        ("exact commutators", secs(5), commutators),
        ("G unitarity and order four", secs(5), g_unitary),
        ("exponential inner products, double entry", secs(30), lemma2_double_entry),
        ("L2 limit of the difference quotient", secs(1), l2_limit),
        ("heat-equation residual", secs(5), pde_residual),
        ("exact fixed-time inequality", secs(10), h1_suite),
        ("Brownian equality case", secs(60), brownian_equality),
        ("Brownian strict case", secs(60), brownian_strict),
        ("Ito isometry", secs(60), isometry),
        ("reproducibility across workers", None, reproducibility),
    ]
}
