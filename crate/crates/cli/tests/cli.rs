use std::path::Path;
use std::process::{Command, Output};

fn heisenberg(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_heisenberg")).args(args).arg("--out-dir").arg(out).output().expect("binary runs")
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("run.toml");
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn check_algebra_passes_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = heisenberg(&["check-algebra"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert!(csv.starts_with("case_id,suite,seed,n_paths,grid_steps,horizon,h_kind,factor1_mean"));
    assert_eq!(csv.lines().count(), 1 + 7);
    assert!(csv.lines().skip(1).all(|l| l.contains(",true,")));
    let json = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(v["header"]["generated_at"].is_string());
    assert_eq!(v["run"]["summary"]["status"], 0);
    assert_eq!(v["records"].as_array().unwrap().len(), 7);
}

#[test]
fn brownian_equality_preset_reports_half() {
    let dir = tempfile::tempdir().unwrap();
    let out = heisenberg(&["h2", "--preset", "brownian-equality", "--paths", "20000", "--grid", "128"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json = std::fs::read_to_string(dir.path().join("report.json")).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let rec = &v["records"][0];
    assert_eq!(rec["case_id"], "brownian-equality");
    assert_eq!(rec["n_paths"], 20000);
    assert_eq!(rec["grid_steps"], 128);
    assert!((rec["rhs_exact"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((rec["lhs_product"].as_f64().unwrap() - 0.5).abs() < 0.05);
    assert!(rec["note"].as_str().unwrap().contains("derived equality case"));
    assert!(rec["note"].as_str().unwrap().contains("refinement M=64"));
}

#[test]
fn empty_suite_selection_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "suites = []\n");
    let out = heisenberg(&["--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no suites selected"));
    assert!(!dir.path().join("report.csv").exists());

    let out = heisenberg(&[], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    for text in ["horizon = -1.0\n", "suites = [\"fourier\"]\n", "grid = \"many\"\n", "paths = 1\n"] {
        let cfg = write_config(dir.path(), text);
        let out = heisenberg(&["--config", &cfg], dir.path());
        assert_eq!(out.status.code(), Some(2), "config {text:?}");
    }
    let out = heisenberg(&["--config", "/nonexistent/run.toml"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = heisenberg(&["pde", "--preset", "nope"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = heisenberg(&["pde", "--workers", "0"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn overflow_exits_three_with_a_full_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"
grid = 16
paths = 100
suites = ["isometry"]

[[cases.isometry]]
id = "fine"
z = { kind = "x" }

[[cases.isometry]]
id = "huge"
z = { kind = "element", terms = [{ exponent = [0.0, 2000.0], poly = [[1.0, 0.0]] }] }
"#,
    );
    let out = heisenberg(&["--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("FAIL isometry/huge: overflow"), "{stderr}");
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.lines().any(|l| l.starts_with("fine,") && l.contains(",true,")));
}

#[test]
fn lemma2_skips_overflowing_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg =
        write_config(dir.path(), "[cases]\nlemma2_exponents = [[1.0, 0.0], [0.0, 2000.0]]\nlemma2_paths = 1000\n");
    let out = heisenberg(&["lemma2", "--config", &cfg], dir.path());
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(out.status.code(), Some(0), "{csv}");
    assert!(csv.contains("skipped: exponential overflow"), "{csv}");
    assert!(csv.contains("skipped: exp(c conj(d) q) overflows"), "{csv}");
    assert!(csv.lines().any(|l| l.starts_with("mc-c=1;d=1,") && l.contains(",true,")));
    assert_eq!(csv.lines().count(), 1 + 8);
}

#[test]
fn failing_case_exits_one_with_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "[cases]\nl2_exponents = [[1.0, 0.0]]\n");
    let out = heisenberg(&["l2limit", "--config", &cfg], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("FAIL l2limit/c=1"));
    assert!(stderr.contains("1 of 1 cases failed"));
}

#[test]
fn flags_override_config_and_time_change_is_recorded() {
    let dir = tempfile::tempdir().unwrap();
    let cfg =
        write_config(dir.path(), "seed = 1\npaths = 500\ngrid = 32\n\n[time_change]\nkind = \"power\"\nalpha = 2.0\n");
    let out = heisenberg(&["isometry", "--config", &cfg, "--seed", "5", "--grid", "16"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    for line in csv.lines().skip(1) {
        assert!(line.contains(",isometry,5,500,16,1.0,power(2),"), "{line}");
    }
}

#[test]
fn example_config_lists_the_defaults() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/example.toml");
    let cfg = heisenberg_cli::RunConfig::load(&path).unwrap();
    assert_eq!(cfg, heisenberg_cli::RunConfig::default());
    cfg.validate().unwrap();
}

#[test]
fn binary_reports_do_not_depend_on_workers() {
    let root = tempfile::tempdir().unwrap();
    let cfg = write_config(
        root.path(),
        "grid = 32\npaths = 3000\nsuites = [\"isometry\", \"h2\"]\n\n[cases]\nh2_random = 2\n",
    );
    let body = |w: &str| {
        let dir = root.path().join(format!("w{w}"));
        let out = heisenberg(&["--config", &cfg, "--workers", w], &dir);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let json = std::fs::read_to_string(dir.join("report.json")).unwrap();
        let csv = std::fs::read(dir.join("report.csv")).unwrap();
        (json[json.find("\"run\":").unwrap()..].to_string(), csv)
    };
    let one = body("1");
    assert_eq!(one, body("3"));
}
