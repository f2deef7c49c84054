//! Command-line interface.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::{RunConfig, Suite, SuiteSelection};
use crate::presets::{self, PRESETS};
use crate::runner::{run, write_reports, RunOutcome};
use crate::{CliError, EXIT_PASS};

#[derive(Debug, Parser)]
#[command(
    name = "heisenberg",
    version,
    about = "Exact and Monte Carlo checks of the stochastic uncertainty inequality"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Option<Command>,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Operator identities, adjointness, unitarity and order of G.
    CheckAlgebra,
    /// Inner products of exponential martingales: closed form, algebra, Monte Carlo.
    Lemma2,
    /// Ito isometry on simulated paths.
    Isometry,
    /// Fixed-time inequality, exact.
    H1,
    /// Integrated inequality, Monte Carlo.
    H2,
    /// Heat-equation residual of the generating functions.
    Pde,
    /// L2 convergence of the difference quotient.
    L2limit,
    /// Every suite.
    All,
}

impl Command {
    pub fn selection(self) -> SuiteSelection {
        match self {
            Command::CheckAlgebra => SuiteSelection::Algebra,
            Command::Lemma2 => SuiteSelection::Lemma2,
            Command::Isometry => SuiteSelection::Isometry,
            Command::H1 => SuiteSelection::H1,
            Command::H2 => SuiteSelection::H2,
            Command::Pde => SuiteSelection::Pde,
            Command::L2limit => SuiteSelection::L2limit,
            Command::All => SuiteSelection::All,
        }
    }
}

#[derive(Debug, Args, Clone, Default)]
pub struct Opts {
    /// TOML run configuration; omitted keys take their defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of simulated paths N.
    #[arg(long, global = true)]
    pub paths: Option<usize>,
    /// Number of grid steps M.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Directory for report.csv and report.json.
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    /// Named configuration applied on top of --config.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Print the available presets and exit.
    #[arg(long)]
    pub list_presets: bool,
}

/// Final configuration: file (or defaults), then preset, then subcommand, then flags.
pub fn resolve(command: Option<Command>, opts: &Opts) -> Result<RunConfig, CliError> {
    let mut cfg = match &opts.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(name) = &opts.preset {
        let p = presets::find(name).ok_or_else(|| {
            let names: Vec<_> = PRESETS.iter().map(|p| p.name).collect();
            CliError::Usage(format!("unknown preset '{name}'; available: {}", names.join(", ")))
        })?;
        p.apply(&mut cfg);
    }
    match command {
        Some(c) => cfg.suites = vec![c.selection()],
        None if opts.config.is_none() && opts.preset.is_none() => {
            return Err(CliError::Usage("give a subcommand, --config or --preset (see --help)".into()))
        }
        None => {}
    }
    if let Some(seed) = opts.seed {
        cfg.seed = seed;
    }
    if let Some(n) = opts.paths {
        cfg.paths = n;
    }
    if let Some(m) = opts.grid {
        cfg.grid = m;
    }
    Ok(cfg)
}

fn print_summary(outcome: &RunOutcome) {
    for s in &outcome.suites {
        let recs: Vec<_> = outcome.records.iter().filter(|r| r.suite == s.name()).collect();
        let passed = recs.iter().filter(|r| r.pass).count();
        println!("{:<9} {passed}/{} passed", s.name(), recs.len());
    }
    let failed: Vec<_> = outcome.failures().collect();
    for r in &failed {
        eprintln!("FAIL {}/{}: {}", r.suite, r.case_id, r.note);
    }
    if !failed.is_empty() {
        eprintln!("{} of {} cases failed", failed.len(), outcome.records.len());
    }
}

fn execute(cfg: &RunConfig, opts: &Opts) -> Result<i32, CliError> {
    let outcome = run(cfg)?;
    write_reports(cfg, &outcome, &opts.out_dir)?;
    print_summary(&outcome);
    Ok(outcome.status())
}

/// Runs `f` on a pool of `workers` threads, or the global pool when `None`.
#[cfg(feature = "parallel")]
pub fn with_workers(workers: Option<usize>, f: impl FnOnce() -> Result<i32, CliError> + Send) -> Result<i32, CliError> {
    match workers {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} workers: {e}")))?
            .install(f),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_workers(_workers: Option<usize>, f: impl FnOnce() -> Result<i32, CliError>) -> Result<i32, CliError> {
    f()
}

/// Parses `args`, runs, and returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if cli.opts.list_presets {
        for p in PRESETS {
            let suite = p.suite.map_or("all", Suite::name);
            println!("{:<20} {:<9} {}", p.name, suite, p.description);
        }
        return EXIT_PASS;
    }
    if cli.opts.workers == Some(0) {
        eprintln!("error: {}", CliError::Usage("--workers must be at least 1".into()));
        return 2;
    }
    let result =
        resolve(cli.command, &cli.opts).and_then(|cfg| with_workers(cli.opts.workers, || execute(&cfg, &cli.opts)));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("heisenberg").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn subcommands_and_flags() {
        let cli = parse(&["h2", "--preset", "brownian-equality", "--seed", "9", "--paths", "100", "--grid", "8"]);
        assert_eq!(cli.command, Some(Command::H2));
        let cfg = resolve(cli.command, &cli.opts).unwrap();
        assert_eq!((cfg.seed, cfg.paths, cfg.grid), (9, 100, 8));
        assert_eq!(cfg.selected_suites(), vec![Suite::H2]);
        assert_eq!(cfg.cases.h2.len(), 1);
        assert_eq!(parse(&["check-algebra"]).command, Some(Command::CheckAlgebra));
        assert_eq!(parse(&["l2limit"]).command, Some(Command::L2limit));
    }

    #[test]
    fn preset_without_subcommand_picks_its_suite() {
        let cli = parse(&["--preset", "isometry"]);
        let cfg = resolve(cli.command, &cli.opts).unwrap();
        assert_eq!(cfg.selected_suites(), vec![Suite::Isometry]);
    }

    #[test]
    fn usage_errors() {
        let cli = parse(&[]);
        assert!(matches!(resolve(cli.command, &cli.opts), Err(CliError::Usage(_))));
        let cli = parse(&["all", "--preset", "nope"]);
        assert!(matches!(resolve(cli.command, &cli.opts), Err(CliError::Usage(_))));
        assert_eq!(main_with_args(["heisenberg", "all", "--workers", "0"]), 2);
        assert_eq!(main_with_args(["heisenberg", "frobnicate"]), 2);
    }
}
