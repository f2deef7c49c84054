//! Run configuration, read from TOML. Every field has a default, so a file
//! only needs the keys it changes.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use heisenberg_core::algebra::AlgebraError;
use heisenberg_core::verify::{CenteringFunction, ProcessElement};
use heisenberg_core::{PolyExpElement, TimeChange, TimeGrid, VarianceParam};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Algebra,
    Lemma2,
    Isometry,
    H1,
    H2,
    Pde,
    L2limit,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Algebra, Suite::Lemma2, Suite::Isometry, Suite::H1, Suite::H2, Suite::Pde, Suite::L2limit];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Lemma2 => "lemma2",
            Suite::Isometry => "isometry",
            Suite::H1 => "h1",
            Suite::H2 => "h2",
            Suite::Pde => "pde",
            Suite::L2limit => "l2limit",
        }
    }

    /// Whether the suite draws on the shared path ensemble.
    pub fn needs_paths(self) -> bool {
        matches!(self, Suite::Isometry | Suite::H2)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name as written in a config; `all` expands to every suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteSelection {
    All,
    Algebra,
    Lemma2,
    Isometry,
    H1,
    H2,
    Pde,
    L2limit,
}

impl SuiteSelection {
    fn expand(self) -> Vec<Suite> {
        match self {
            SuiteSelection::All => Suite::ALL.to_vec(),
            SuiteSelection::Algebra => vec![Suite::Algebra],
            SuiteSelection::Lemma2 => vec![Suite::Lemma2],
            SuiteSelection::Isometry => vec![Suite::Isometry],
            SuiteSelection::H1 => vec![Suite::H1],
            SuiteSelection::H2 => vec![Suite::H2],
            SuiteSelection::Pde => vec![Suite::Pde],
            SuiteSelection::L2limit => vec![Suite::L2limit],
        }
    }
}

impl FromStr for SuiteSelection {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "all" => SuiteSelection::All,
            "algebra" | "check-algebra" => SuiteSelection::Algebra,
            "lemma2" => SuiteSelection::Lemma2,
            "isometry" => SuiteSelection::Isometry,
            "h1" => SuiteSelection::H1,
            "h2" => SuiteSelection::H2,
            "pde" => SuiteSelection::Pde,
            "l2limit" => SuiteSelection::L2limit,
            other => return Err(format!("unknown suite '{other}'")),
        })
    }
}

/// One exponential term `p(x) e^{c x}` (or `p(x) 𝓔_c`, depending on context).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDef {
    pub exponent: [f64; 2],
    pub poly: Vec<[f64; 2]>,
}

fn complex(z: [f64; 2]) -> Complex64 {
    Complex64::new(z[0], z[1])
}

fn raw_terms(terms: &[TermDef]) -> Vec<(Complex64, Vec<Complex64>)> {
    terms.iter().map(|t| (complex(t.exponent), t.poly.iter().map(|c| complex(*c)).collect())).collect()
}

/// How a case describes `Y_t` (or `Z_t`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProcessDef {
    Zero,
    Constant {
        value: [f64; 2],
    },
    /// `Y_t = X_t`.
    X,
    /// Fixed coefficients on `x^j 𝓔_{c,t}`, so exponentials stay martingales.
    Element {
        terms: Vec<TermDef>,
    },
    /// `φ(X_t)` with `φ(x) = Σ p(x) e^{c x}`.
    FunctionOfX {
        terms: Vec<TermDef>,
    },
}

impl ProcessDef {
    pub fn build(&self) -> Result<ProcessElement, AlgebraError> {
        Ok(match self {
            ProcessDef::Zero => ProcessElement::zero(),
            ProcessDef::Constant { value } => ProcessElement::constant(complex(*value)),
            ProcessDef::X => ProcessElement::x(),
            ProcessDef::Element { terms } => {
                ProcessElement::fixed(PolyExpElement::from_terms(VarianceParam::ZERO, raw_terms(terms))?)
            }
            ProcessDef::FunctionOfX { terms } => {
                // validate once up front
                PolyExpElement::from_function_terms(VarianceParam::ZERO, raw_terms(terms))?;
                ProcessElement::function_of_x(raw_terms(terms))
            }
        })
    }

    pub fn label(&self) -> String {
        match self {
            ProcessDef::Zero => "0".into(),
            ProcessDef::Constant { value } => format!("{}", complex(*value)),
            ProcessDef::X => "X_t".into(),
            ProcessDef::Element { terms } => format!("element({} terms)", terms.len()),
            ProcessDef::FunctionOfX { terms } => format!("phi(X_t)({} terms)", terms.len()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsometryCase {
    pub id: String,
    pub z: ProcessDef,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H1Case {
    pub id: String,
    pub y: ProcessDef,
    pub c: f64,
    pub c_tilde: f64,
    pub q: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H2Case {
    pub id: String,
    pub y: ProcessDef,
    #[serde(default)]
    pub g: CenteringFunction,
    #[serde(default)]
    pub g_tilde: CenteringFunction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Cases {
    /// Random elements for the commutator, adjointness and 𝒢 checks.
    pub algebra_samples: usize,
    pub lemma2_exponents: Vec<[f64; 2]>,
    pub lemma2_q: f64,
    pub lemma2_paths: usize,
    pub isometry: Vec<IsometryCase>,
    pub h1: Vec<H1Case>,
    pub h1_random: usize,
    pub h2: Vec<H2Case>,
    pub h2_random: usize,
    pub pde_exponents: Vec<[f64; 2]>,
    pub pde_step: f64,
    /// Lattice size on `[-2, 2] × [0.5, 2]`.
    pub pde_lattice: [usize; 2],
    pub l2_exponents: Vec<[f64; 2]>,
    pub l2_q: f64,
    /// Uses `r = 2^-k` for `k = 1..=l2_steps`.
    pub l2_steps: u32,
}

impl Default for Cases {
    fn default() -> Self {
        let zero = CenteringFunction::Zero;
        Self {
            algebra_samples: 1000,
            lemma2_exponents: vec![[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]],
            lemma2_q: 1.0,
            lemma2_paths: 1_000_000,
            isometry: vec![
                IsometryCase { id: "z-one".into(), z: ProcessDef::Constant { value: [1.0, 0.0] } },
                IsometryCase { id: "z-x".into(), z: ProcessDef::X },
            ],
            h1: vec![
                H1Case {
                    id: "y-one".into(),
                    y: ProcessDef::Constant { value: [1.0, 0.0] },
                    c: 0.0,
                    c_tilde: 0.0,
                    q: 1.0,
                },
                H1Case { id: "y-x".into(), y: ProcessDef::X, c: 0.0, c_tilde: 0.0, q: 1.0 },
                H1Case {
                    id: "y-exp1".into(),
                    y: ProcessDef::Element { terms: vec![TermDef { exponent: [1.0, 0.0], poly: vec![[1.0, 0.0]] }] },
                    c: 0.0,
                    c_tilde: 0.0,
                    q: 1.0,
                },
                H1Case {
                    id: "y-one-q0.25".into(),
                    y: ProcessDef::Constant { value: [1.0, 0.0] },
                    c: 0.0,
                    c_tilde: 0.0,
                    q: 0.25,
                },
                H1Case {
                    id: "y-one-q4".into(),
                    y: ProcessDef::Constant { value: [1.0, 0.0] },
                    c: 0.0,
                    c_tilde: 0.0,
                    q: 4.0,
                },
            ],
            h1_random: 500,
            h2: vec![
                H2Case {
                    id: "brownian-equality".into(),
                    y: ProcessDef::Constant { value: [1.0, 0.0] },
                    g: zero.clone(),
                    g_tilde: zero.clone(),
                },
                H2Case { id: "brownian-strict".into(), y: ProcessDef::X, g: zero.clone(), g_tilde: zero.clone() },
                H2Case { id: "y-zero".into(), y: ProcessDef::Zero, g: zero.clone(), g_tilde: zero },
            ],
            h2_random: 20,
            pde_exponents: vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
            pde_step: 1e-4,
            pde_lattice: [81, 31],
            l2_exponents: vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]],
            l2_q: 1.0,
            l2_steps: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Statistical allowance in standard errors.
    pub k_sigma: f64,
    /// Multiplies the largest grid step in the Itô-sum bias allowance.
    pub discretization_factor: f64,
    pub h1: f64,
    pub unitarity: f64,
    pub adjointness: f64,
    pub inner_product: f64,
    pub pde: f64,
    pub l2_ratio_band: f64,
    pub l2_final: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            k_sigma: 4.0,
            discretization_factor: 10.0,
            h1: 1e-9,
            unitarity: 1e-9,
            adjointness: 1e-9,
            inner_product: 1e-12,
            pde: 1e-6,
            l2_ratio_band: 0.05,
            l2_final: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub horizon: f64,
    pub grid: usize,
    pub paths: usize,
    pub seed: u64,
    pub time_change: TimeChange,
    pub suites: Vec<SuiteSelection>,
    pub cases: Cases,
    pub tolerances: Tolerances,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            horizon: 1.0,
            grid: 512,
            paths: 100_000,
            seed: 20_240_601,
            time_change: TimeChange::Identity,
            suites: vec![SuiteSelection::All],
            cases: Cases::default(),
            tolerances: Tolerances::default(),
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Selected suites in canonical order, duplicates removed.
    pub fn selected_suites(&self) -> Vec<Suite> {
        let mut v: Vec<Suite> = self.suites.iter().flat_map(|s| s.expand()).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.selected_suites().is_empty() {
            return Err(CliError::Usage("no suites selected".into()));
        }
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return bad(format!("horizon must be > 0, got {}", self.horizon));
        }
        if self.grid == 0 || self.paths < 2 {
            return bad(format!("grid must be ≥ 1 and paths ≥ 2, got grid = {}, paths = {}", self.grid, self.paths));
        }
        let grid = TimeGrid::uniform(self.horizon, self.grid).map_err(|e| CliError::Config(e.to_string()))?;
        self.time_change.check_on(&grid).map_err(|e| CliError::Config(e.to_string()))?;
        let c = &self.cases;
        if c.lemma2_paths < 2 || !(c.lemma2_q.is_finite() && c.lemma2_q > 0.0) {
            return bad("lemma2 needs lemma2_paths ≥ 2 and lemma2_q > 0".into());
        }
        if !(c.pde_step.is_finite() && c.pde_step > 0.0 && c.pde_step < 0.5) || c.pde_lattice.contains(&0) {
            return bad("pde_step must lie in (0, 0.5) and pde_lattice entries must be positive".into());
        }
        if c.l2_steps < 2 || VarianceParam::new(c.l2_q).is_err() {
            return bad("l2_steps must be ≥ 2 and l2_q ≥ 0".into());
        }
        for case in &c.h1 {
            if VarianceParam::new(case.q).is_err() || !case.c.is_finite() || !case.c_tilde.is_finite() {
                return bad(format!("h1 case '{}': q must be ≥ 0 and centerings finite", case.id));
            }
            case.y.build().map_err(|e| CliError::Config(format!("h1 case '{}': {e}", case.id)))?;
        }
        for case in &c.h2 {
            case.y.build().map_err(|e| CliError::Config(format!("h2 case '{}': {e}", case.id)))?;
            for g in [&case.g, &case.g_tilde] {
                g.validate().map_err(|e| CliError::Config(format!("h2 case '{}': {e}", case.id)))?;
            }
        }
        for case in &c.isometry {
            case.z.build().map_err(|e| CliError::Config(format!("isometry case '{}': {e}", case.id)))?;
        }
        let t = &self.tolerances;
        let all = [
            t.k_sigma,
            t.discretization_factor,
            t.h1,
            t.unitarity,
            t.adjointness,
            t.inner_product,
            t.pde,
            t.l2_ratio_band,
            t.l2_final,
        ];
        if all.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return bad("tolerances must be finite and non-negative".into());
        }
        Ok(())
    }
}
