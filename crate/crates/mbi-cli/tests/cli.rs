//! End-to-end behaviour of the `mbi` binary and the run-directory artifacts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mbi_cli::config::RunConfig;
use mbi_cli::report::decay_report;
use mbi_cli::simulate::{snapshot_dir, RunSummary, CONFIG_FILE, SERIES_FILE, SUMMARY_FILE};
use mbi_cli::verify::{verify_algebra, Mutation};
use mbi_field::diagnostics::{DiagnosticRecord, DiagnosticSeries, ShellProfile};
use mbi_field::read_snapshot;

fn mbi(args: &[&str], workers: Option<usize>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mbi"));
    cmd.args(args);
    match workers {
        Some(w) => cmd.env("MBI_WORKERS", w.to_string()),
        None => cmd.env_remove("MBI_WORKERS"),
    };
    cmd.output().expect("binary runs")
}

fn write_config(dir: &Path, json: &str) -> PathBuf {
    let path = dir.join("input.json");
    std::fs::write(&path, json).unwrap();
    path
}

fn small_config(mode: &str, amplitude: f64, extra: &str) -> String {
    format!(
        r#"{{
  "mode": "{mode}",
  "grid": {{ "n": 24, "h": 0.5 }},
  "initial_data": {{ "type": "gaussian_loop", "amplitude": {amplitude:?}, "width": 1.0 }},
  "t_end": 1.0,
  "output": {{ "cadence": 2, "snapshots": "every_output" }}{extra}
}}"#
    )
}

fn summary(dir: &Path) -> RunSummary {
    serde_json::from_str(&std::fs::read_to_string(dir.join(SUMMARY_FILE)).unwrap()).unwrap()
}

#[test]
fn shipped_configs_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        RunConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        count += 1;
    }
    assert!(count >= 4);
}

#[test]
fn config_errors_exit_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    let run = tmp.path().join("run");
    let run = run.to_str().unwrap();
    let cases = [
        small_config("mbi", 0.1, r#", "unknown_key": 1"#),
        small_config("mbi", 0.1, "").replace("\"mbi\"", "\"vlasov\""),
        small_config("mbi", 0.1, "").replace("\"n\": 24, \"h\": 0.5", "\"n\": 24, \"h\": 0.1"),
        small_config("mbi", 0.1, "").replace("\"t_end\": 1.0", "\"t_end\": 1.0, \"cfl\": 0.9"),
        "{ not json".to_string(),
    ];
    for json in cases {
        let cfg = write_config(tmp.path(), &json);
        let out = mbi(&["simulate", "--config", cfg.to_str().unwrap(), "--run-dir", run], None);
        assert_eq!(out.status.code(), Some(1), "{json}\n{}", String::from_utf8_lossy(&out.stderr));
    }
    let out = mbi(&["simulate", "--config", tmp.path().join("missing.json").to_str().unwrap(), "--run-dir", run], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn wrap_rule_can_be_waived() {
    let json = small_config("maxwell", 0.1, r#", "checks": { "allow_wrap": true }"#)
        .replace("\"n\": 24, \"h\": 0.5", "\"n\": 16, \"h\": 0.25");
    assert!(RunConfig::from_json(&json).is_ok());
    assert!(RunConfig::from_json(&json.replace("true", "false")).is_err());
}

#[test]
fn zero_amplitude_run_writes_all_zero_series() {
    let tmp = tempfile::tempdir().unwrap();
    let run = tmp.path().join("run");
    let cfg = write_config(tmp.path(), &small_config("mbi", 0.0, ""));
    let out = mbi(&["simulate", "--config", cfg.to_str().unwrap(), "--run-dir", run.to_str().unwrap()], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let file = std::fs::File::open(run.join(SERIES_FILE)).unwrap();
    let series = DiagnosticSeries::read_csv(std::io::BufReader::new(file)).unwrap();
    assert!(series.records.len() >= 2);
    for r in &series.records {
        assert_eq!((r.e0, r.knorm_int, r.div_b_max, r.div_d_max), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(r.ell_min, 1.0);
        assert!(r.profile.ualpha.iter().chain(&r.profile.alpha).chain(&r.profile.rho).all(|&v| v == 0.0));
    }
    let s = summary(&run);
    assert_eq!(s.status, "completed");
    assert_eq!(s.e0_drift, 0.0);
}

#[test]
fn mbi_small_data_run_stays_admissible_and_reloads() {
    let tmp = tempfile::tempdir().unwrap();
    let run = tmp.path().join("run");
    let cfg = write_config(
        tmp.path(),
        &small_config("mbi", 0.3, r#", "diagnostics": { "energy_order": 1 }, "checks": { "algebra_samples": 50 }"#),
    );
    let out = mbi(&["simulate", "--config", cfg.to_str().unwrap(), "--run-dir", run.to_str().unwrap()], None);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let s = summary(&run);
    assert!(s.ell_min > 0.9, "{}", s.ell_min);
    assert!(s.residual.is_some());
    assert!(run.join("algebra.json").exists());
    let (state, meta) = read_snapshot(&snapshot_dir(&run, s.steps)).unwrap();
    assert_eq!(state.t, s.t_final);
    assert_eq!(meta.mode, mbi_field::Mode::Mbi);
    let series = DiagnosticSeries::read_csv(std::io::BufReader::new(std::fs::File::open(run.join(SERIES_FILE)).unwrap())).unwrap();
    assert!(series.records.iter().all(|r| r.e1.is_some()));
    // The stored configuration is the normalized input.
    let stored = RunConfig::load(&run.join(CONFIG_FILE)).unwrap();
    assert_eq!(stored, RunConfig::load(&cfg).unwrap());
}

#[test]
fn degenerate_state_exits_with_two_and_reports_location() {
    let tmp = tempfile::tempdir().unwrap();
    let run = tmp.path().join("run");
    let cfg = write_config(tmp.path(), &small_config("mbi", 1e160, ""));
    let out = mbi(&["simulate", "--config", cfg.to_str().unwrap(), "--run-dir", run.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("node"), "{stderr}");
    // Non-finite diagnostics serialize as null, so read the summary untyped.
    let s: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(run.join(SUMMARY_FILE)).unwrap()).unwrap();
    assert_eq!(s["status"], "degenerate");
    assert!(s["failure"].as_str().unwrap().contains("node"));
}

#[test]
fn verify_algebra_single_sample_passes() {
    let out = mbi(&["verify-algebra", "--samples", "1", "--seed", "0"], None);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["passed"], true);
    assert!(json["properties"].as_array().unwrap().len() >= 20);
    assert_eq!(mbi(&["verify-algebra", "--samples", "0"], None).status.code(), Some(1));
}

#[test]
fn corrupted_dual_fails_exactly_the_dual_properties() {
    let report = verify_algebra(200, 3, None, Some(Mutation::DualSign));
    let expected: Vec<&str> = report.outcomes.iter().filter(|o| o.dual_sign_sensitive).map(|o| o.id).collect();
    assert!(!expected.is_empty());
    assert_eq!(report.failures(), expected);

    let out = mbi(&["verify-algebra", "--samples", "20", "--seed", "3", "--mutate", "dual-sign"], None);
    assert_eq!(out.status.code(), Some(3));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let failures: Vec<&str> = json["failures"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(failures, expected);
}

#[test]
fn rerun_with_other_worker_count_is_bit_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), &small_config("mbi", 0.4, ""));
    let runs: Vec<PathBuf> = [1usize, 3]
        .iter()
        .map(|&w| {
            let run = tmp.path().join(format!("run{w}"));
            let out = mbi(&["simulate", "--config", cfg.to_str().unwrap(), "--run-dir", run.to_str().unwrap()], Some(w));
            assert!(out.status.success());
            run
        })
        .collect();
    let read = |p: PathBuf| std::fs::read(p).unwrap();
    assert_eq!(read(runs[0].join(SERIES_FILE)), read(runs[1].join(SERIES_FILE)));
    assert_eq!(read(runs[0].join(SUMMARY_FILE)), read(runs[1].join(SUMMARY_FILE)));
    let steps = summary(&runs[0]).steps;
    for file in ["b.bin", "d.bin", "meta.txt"] {
        assert_eq!(read(snapshot_dir(&runs[0], steps).join(file)), read(snapshot_dir(&runs[1], steps).join(file)));
    }
    assert_eq!(mbi(&["verify-algebra", "--samples", "1"], Some(0)).status.code(), Some(1));
}

/// Synthetic run directory whose profiles follow exact power laws along the tracked shells.
fn synthetic_run(dir: &Path, rho_exponent: f64) {
    std::fs::create_dir_all(dir).unwrap();
    let config = small_config("maxwell", 0.1, r#", "diagnostics": { "q0": 0.0, "band": 0.0 }"#);
    std::fs::write(dir.join(CONFIG_FILE), config).unwrap();
    let radii: Vec<f64> = (1..=40).map(|k| 0.5 * k as f64).collect();
    let mut series = DiagnosticSeries::default();
    for k in 0..12 {
        let t = 0.5 * k as f64;
        let mut profile = ShellProfile::zeros(radii.clone());
        for (i, &r) in radii.iter().enumerate() {
            let s = 1.0 + t + r;
            profile.ualpha[i] = s.powf(-1.0) * (1.0 + (r - t).abs()).powf(-1.5);
            profile.alpha[i] = s.powf(-2.5);
            profile.rho[i] = s.powf(rho_exponent);
            profile.sigma[i] = s.powf(-2.0);
        }
        series
            .push(DiagnosticRecord {
                t,
                e0: 1.0,
                e1: None,
                knorm_int: 2.0,
                div_b_max: 0.0,
                div_d_max: 0.0,
                ell_min: 1.0,
                profile,
            })
            .unwrap();
    }
    series.write_csv(std::fs::File::create(dir.join(SERIES_FILE)).unwrap()).unwrap();
}

#[test]
fn decay_report_recovers_synthetic_exponents() {
    let tmp = tempfile::tempdir().unwrap();
    let run = tmp.path().join("run");
    let reference = tmp.path().join("reference");
    synthetic_run(&run, -2.0);
    synthetic_run(&reference, -2.1);
    let report = decay_report(&run, Some(&reference)).unwrap();
    for e in &report.exponents {
        let x = e.exponent.unwrap();
        assert!((x - e.target).abs() < 1e-6, "{}: {x}", e.component);
        assert!(e.within_target);
    }
    let paired = report.paired.unwrap();
    let rho = paired.iter().find(|p| p.component == "rho").unwrap();
    assert!((rho.difference.unwrap() - 0.1).abs() < 1e-6);

    let out = mbi(&["decay-report", "--run", run.to_str().unwrap()], None);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["exponents"].as_array().unwrap().len(), 4);
    assert_eq!(mbi(&["decay-report", "--run", tmp.path().join("nope").to_str().unwrap()], None).status.code(), Some(1));
}
