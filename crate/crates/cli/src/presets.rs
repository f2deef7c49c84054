//! Named configurations, one per acceptance case. A preset edits a base
//! configuration (defaults or `--config`) and names the suite it targets.

use crate::config::{H2Case, IsometryCase, ProcessDef, RunConfig, Suite, SuiteSelection};
use heisenberg_core::verify::CenteringFunction;
use heisenberg_core::TimeChange;

pub struct Preset {
    pub name: &'static str,
    pub suite: Option<Suite>,
    pub description: &'static str,
    apply: fn(&mut RunConfig),
}

impl Preset {
    pub fn apply(&self, cfg: &mut RunConfig) {
        (self.apply)(cfg);
        cfg.suites = match self.suite {
            Some(s) => vec![selection(s)],
            None => vec![SuiteSelection::All],
        };
    }
}

fn selection(s: Suite) -> SuiteSelection {
    match s {
        Suite::Algebra => SuiteSelection::Algebra,
        Suite::Lemma2 => SuiteSelection::Lemma2,
        Suite::Isometry => SuiteSelection::Isometry,
        Suite::H1 => SuiteSelection::H1,
        Suite::H2 => SuiteSelection::H2,
        Suite::Pde => SuiteSelection::Pde,
        Suite::L2limit => SuiteSelection::L2limit,
    }
}

fn brownian(cfg: &mut RunConfig) {
    cfg.horizon = 1.0;
    cfg.grid = 512;
    cfg.paths = 100_000;
    cfg.time_change = TimeChange::Identity;
}

fn algebra(cfg: &mut RunConfig) {
    cfg.cases.algebra_samples = 1000;
}

fn lemma2(cfg: &mut RunConfig) {
    cfg.cases.lemma2_exponents = vec![[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]];
    cfg.cases.lemma2_q = 1.0;
    cfg.cases.lemma2_paths = 1_000_000;
}

fn l2(cfg: &mut RunConfig) {
    cfg.cases.l2_exponents = vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
    cfg.cases.l2_q = 1.0;
    cfg.cases.l2_steps = 12;
}

fn pde(cfg: &mut RunConfig) {
    cfg.cases.pde_exponents = vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]];
    cfg.cases.pde_step = 1e-4;
    cfg.cases.pde_lattice = [81, 31];
}

fn h1(cfg: &mut RunConfig) {
    cfg.cases.h1_random = 500;
}

fn h2_single(cfg: &mut RunConfig, id: &str, y: ProcessDef) {
    brownian(cfg);
    cfg.cases.h2 = vec![H2Case { id: id.into(), y, g: CenteringFunction::Zero, g_tilde: CenteringFunction::Zero }];
    cfg.cases.h2_random = 0;
}

fn brownian_equality(cfg: &mut RunConfig) {
    h2_single(cfg, "brownian-equality", ProcessDef::Constant { value: [1.0, 0.0] });
}

fn brownian_strict(cfg: &mut RunConfig) {
    h2_single(cfg, "brownian-strict", ProcessDef::X);
}

fn isometry(cfg: &mut RunConfig) {
    brownian(cfg);
    cfg.cases.isometry = vec![
        IsometryCase { id: "z-one".into(), z: ProcessDef::Constant { value: [1.0, 0.0] } },
        IsometryCase { id: "z-x".into(), z: ProcessDef::X },
    ];
}

/// Every suite at a size that finishes in seconds.
fn reproducibility(cfg: &mut RunConfig) {
    cfg.horizon = 1.0;
    cfg.grid = 64;
    cfg.paths = 2_000;
    cfg.cases.algebra_samples = 50;
    cfg.cases.lemma2_paths = 20_000;
    cfg.cases.h1_random = 50;
    cfg.cases.h2_random = 2;
    cfg.cases.pde_lattice = [11, 5];
    // c = 1 needs k = 13 to reach the final-norm bound
    cfg.cases.l2_exponents = vec![[0.0, 0.0], [0.0, 1.0]];
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "commutators",
        suite: Some(Suite::Algebra),
        description: "operator identities on 1000 random elements",
        apply: algebra,
    },
    Preset {
        name: "g-unitary",
        suite: Some(Suite::Algebra),
        description: "unitarity and order four of G on 1000 random pairs",
        apply: algebra,
    },
    Preset {
        name: "lemma2-double-entry",
        suite: Some(Suite::Lemma2),
        description: "<E_c, E_d> closed form vs algebra vs Monte Carlo, N = 10^6",
        apply: lemma2,
    },
    Preset {
        name: "l2-limit",
        suite: Some(Suite::L2limit),
        description: "difference quotient -> X E_c along r = 2^-k, k = 1..12",
        apply: l2,
    },
    Preset {
        name: "pde-residual",
        suite: Some(Suite::Pde),
        description: "heat-equation residual on [-2,2] x [0.5,2], step 1e-4",
        apply: pde,
    },
    Preset {
        name: "h1-suite",
        suite: Some(Suite::H1),
        description: "exact fixed-time inequality, 500 random cases",
        apply: h1,
    },
    Preset {
        name: "brownian-equality",
        suite: Some(Suite::H2),
        description: "integrated inequality, Y = 1, zero centerings, T = 1, M = 512, N = 10^5",
        apply: brownian_equality,
    },
    Preset {
        name: "brownian-strict",
        suite: Some(Suite::H2),
        description: "integrated inequality, Y = X, zero centerings, T = 1, M = 512, N = 10^5",
        apply: brownian_strict,
    },
    Preset {
        name: "isometry",
        suite: Some(Suite::Isometry),
        description: "Ito isometry for Z = 1 and Z = X, M = 512, N = 10^5",
        apply: isometry,
    },
    Preset { name: "reproducibility", suite: None, description: "every suite at a small size", apply: reproducibility },
];

pub fn find(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}
