//! Flat records for CSV output and a JSON document whose only
//! run-dependent field is the header timestamp.

use std::io::Write;

use serde::Serialize;

use super::inequality::EQUALITY_NOTE;
use super::{InequalityReport, IsometryReport};

/// Run context shared by every record produced from one ensemble.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RecordContext {
    pub seed: Option<u64>,
    pub n_paths: Option<usize>,
    pub grid_steps: Option<usize>,
    pub horizon: Option<f64>,
    pub h_kind: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub case_id: String,
    pub suite: String,
    pub seed: Option<u64>,
    pub n_paths: Option<usize>,
    pub grid_steps: Option<usize>,
    pub horizon: Option<f64>,
    pub h_kind: Option<String>,
    pub factor1_mean: Option<f64>,
    pub factor1_stderr: Option<f64>,
    pub factor2_mean: Option<f64>,
    pub factor2_stderr: Option<f64>,
    pub lhs_product: Option<f64>,
    pub rhs_exact: Option<f64>,
    pub slack: Option<f64>,
    pub allowance: Option<f64>,
    pub k_sigma: Option<f64>,
    pub z_score: Option<f64>,
    /// Suite-specific measured quantity (max residual, max relative error, ...).
    pub metric: Option<f64>,
    /// Bound the metric is compared against.
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub note: String,
}

impl ReportRecord {
    /// A record with only identification, context and outcome filled in.
    pub fn bare(
        case_id: impl Into<String>,
        suite: impl Into<String>,
        ctx: &RecordContext,
        pass: bool,
        note: impl Into<String>,
    ) -> Self {
        Self {
            case_id: case_id.into(),
            suite: suite.into(),
            seed: ctx.seed,
            n_paths: ctx.n_paths,
            grid_steps: ctx.grid_steps,
            horizon: ctx.horizon,
            h_kind: ctx.h_kind.clone(),
            factor1_mean: None,
            factor1_stderr: None,
            factor2_mean: None,
            factor2_stderr: None,
            lhs_product: None,
            rhs_exact: None,
            slack: None,
            allowance: None,
            k_sigma: None,
            z_score: None,
            metric: None,
            tolerance: None,
            pass,
            note: note.into(),
        }
    }

    /// A check summarised by one measured quantity against a bound.
    pub fn metric(
        case_id: impl Into<String>,
        suite: impl Into<String>,
        ctx: &RecordContext,
        metric: f64,
        tolerance: f64,
        pass: bool,
        note: impl Into<String>,
    ) -> Self {
        let mut rec = Self::bare(case_id, suite, ctx, pass, note);
        rec.metric = Some(metric);
        rec.tolerance = Some(tolerance);
        rec
    }

    pub fn from_inequality(
        case_id: impl Into<String>,
        suite: impl Into<String>,
        ctx: &RecordContext,
        r: &InequalityReport,
    ) -> Self {
        let mut notes = Vec::new();
        if r.equality_case {
            notes.push(EQUALITY_NOTE.to_string());
        }
        if let Some(c) = &r.refinement {
            notes.push(format!("refinement M={}: lhs={:?} rhs={:?}", c.coarse_steps, c.coarse_lhs, c.coarse_rhs));
        }
        let mut rec = Self::bare(case_id, suite, ctx, r.pass, notes.join("; "));
        rec.factor1_mean = Some(r.factor1.mean.re);
        rec.factor1_stderr = Some(r.factor1.stderr);
        rec.factor2_mean = Some(r.factor2.mean.re);
        rec.factor2_stderr = Some(r.factor2.stderr);
        rec.lhs_product = Some(r.lhs_product);
        rec.rhs_exact = Some(r.rhs);
        rec.slack = Some(r.slack);
        rec.allowance = Some(r.allowance);
        rec.k_sigma = Some(r.k_sigma);
        rec
    }

    /// Isometry checks reuse the inequality columns: factor 1 is the Monte
    /// Carlo side, `rhs_exact` the quadrature side, `slack` their difference.
    pub fn from_isometry(
        case_id: impl Into<String>,
        suite: impl Into<String>,
        ctx: &RecordContext,
        r: &IsometryReport,
    ) -> Self {
        let mut rec = Self::bare(case_id, suite, ctx, r.pass, "");
        rec.z_score = Some(r.z_score);
        rec.factor1_mean = Some(r.mc.mean.re);
        rec.factor1_stderr = Some(r.mc.stderr);
        rec.lhs_product = Some(r.mc.mean.re);
        rec.rhs_exact = Some(r.exact);
        rec.slack = Some(r.mc.mean.re - r.exact);
        rec.allowance = Some(r.k_sigma * r.mc.stderr + r.discretization_allowance);
        rec.k_sigma = Some(r.k_sigma);
        rec
    }
}

pub fn write_csv<W: Write>(records: &[ReportRecord], writer: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportHeader {
    pub generated_at: String,
    pub tool: String,
    pub version: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportDocument<'a, R: Serialize> {
    pub header: ReportHeader,
    pub run: &'a R,
    pub records: &'a [ReportRecord],
}

pub fn write_json<W: Write, R: Serialize>(doc: &ReportDocument<'_, R>, writer: W) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(writer, doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_has_schema_columns() {
        let ctx = RecordContext { seed: Some(3), n_paths: Some(10), ..Default::default() };
        let rec = ReportRecord::bare("a", "pde", &ctx, true, "");
        let mut out = Vec::new();
        write_csv(&[rec], &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let header = text.lines().next().unwrap();
        for col in [
            "case_id",
            "seed",
            "n_paths",
            "grid_steps",
            "horizon",
            "h_kind",
            "factor1_mean",
            "factor1_stderr",
            "factor2_mean",
            "factor2_stderr",
            "lhs_product",
            "rhs_exact",
            "slack",
            "allowance",
            "pass",
        ] {
            assert!(header.split(',').any(|c| c == col), "missing {col}");
        }
        assert!(text.lines().nth(1).unwrap().starts_with("a,pde,3,10,"));
    }

    #[test]
    fn json_layout() {
        let doc = ReportDocument {
            header: ReportHeader { generated_at: "t".into(), tool: "x".into(), version: "0".into() },
            run: &serde_json::json!({"seed": 1}),
            records: &[],
        };
        let mut out = Vec::new();
        write_json(&doc, &mut out).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["run"]["seed"], 1);
        assert!(v["records"].as_array().unwrap().is_empty());
    }
}
