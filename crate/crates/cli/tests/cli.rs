//! End-to-end checks of the binary: exit codes, file outputs, manifests,
//! and rerun determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_catsmith"))
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    bin()
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, contents: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn read_csv(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(|s| s.to_string()).collect())
        .collect()
}

const SIM_CONFIG: &str = r#"{
  "input": {"kind": "coherent", "gamma": [0.7, 0.2]},
  "aux_photons": [2],
  "bs_theta": [0.85],
  "aux_alpha": [[0.1, 0.9]],
  "alpha0": 0.3,
  "target": {"beta": 1.5, "parity": "even"}
}"#;

#[test]
fn scq_bound_exceeds_098_at_beta2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "scq",
            "--n",
            "10",
            "--parity",
            "even",
            "--beta",
            "2",
            "--alpha-mode",
            "maximized",
        ],
    );
    assert!(out.status.success());
    let rows = read_csv(&dir.path().join("scq.csv"));
    assert_eq!(rows[0], ["beta", "fidelity_upper_bound", "alpha_used"]);
    let fidelity: f64 = rows[1][1].parse().unwrap();
    assert!(fidelity > 0.98);
    assert!(dir.path().join("scq.csv.manifest.json").exists());
}

#[test]
fn scq_roots_match_closed_form() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "scq",
            "--n",
            "4",
            "--parity",
            "even",
            "--beta",
            "1.5",
            "--emit-roots",
        ],
    );
    assert!(out.status.success());
    let rows = read_csv(&dir.path().join("scq_roots.csv"));
    assert_eq!(rows.len(), 5);
    let beta = 1.5f64;
    let big = 2.0f64.sqrt() / beta * (3.0 + 3.0f64.sqrt()).sqrt();
    let small = 2.0f64.sqrt() / beta * (3.0 - 3.0f64.sqrt()).sqrt();
    let mut expected = vec![big, -big, small, -small];
    for row in &rows[1..] {
        let re: f64 = row[2].parse().unwrap();
        let im: f64 = row[3].parse().unwrap();
        assert!(re.abs() < 1e-8, "roots are purely imaginary");
        let idx = expected
            .iter()
            .position(|e| (e - im).abs() < 1e-8)
            .unwrap_or_else(|| panic!("unexpected root {im}"));
        expected.swap_remove(idx);
    }
    assert!(expected.is_empty());
}

#[test]
fn scq_rerun_is_byte_identical() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    let args = [
        "scq",
        "--n",
        "6",
        "--parity",
        "even",
        "--beta-range",
        "1.0:2.0:0.5",
        "--alpha-mode",
        "maximized",
    ];
    assert!(run_in(dir_a.path(), &args).status.success());
    assert!(run_in(dir_b.path(), &args).status.success());
    let a = std::fs::read(dir_a.path().join("scq.csv")).unwrap();
    let b = std::fs::read(dir_b.path().join("scq.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn simulate_with_oracle_check() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "sim.json", SIM_CONFIG);
    let out = run_in(
        dir.path(),
        &["simulate", cfg.to_str().unwrap(), "--verify-oracle"],
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let result: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("result.json")).unwrap())
            .unwrap();
    let p = result["success_probability"].as_f64().unwrap();
    assert!(p > 0.0 && p <= 1.0);
    assert!(result["fidelity"].as_f64().is_some());
    assert!(dir.path().join("result.json.manifest.json").exists());
}

#[test]
fn simulate_vacuum_heralds_fock_state() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "vac.json",
        r#"{
          "input": {"kind": "vacuum"},
          "aux_photons": [2, 1],
          "bs_theta": [0.8, 0.6],
          "aux_alpha": [[0.0, 0.0], [0.0, 0.0]],
          "alpha0": 0.0
        }"#,
    );
    let out = run_in(dir.path(), &["simulate", cfg.to_str().unwrap()]);
    assert!(out.status.success());
    let result: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("result.json")).unwrap())
            .unwrap();
    let amps = result["amplitudes"].as_array().unwrap();
    for (l, amp) in amps.iter().enumerate() {
        let re = amp[0].as_f64().unwrap();
        let im = amp[1].as_f64().unwrap();
        let mag = (re * re + im * im).sqrt();
        if l == 3 {
            assert!((mag - 1.0).abs() < 1e-12);
        } else {
            assert_eq!(mag, 0.0);
        }
    }
}

#[test]
fn malformed_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "bad.json", "{ not json");
    let out = run_in(dir.path(), &["simulate", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn free_markers_rejected_by_simulate() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "free.json",
        r#"{
          "input": {"kind": "vacuum"},
          "aux_photons": [1],
          "bs_theta": "free",
          "aux_alpha": [[0.0, 0.0]],
          "alpha0": 0.0
        }"#,
    );
    let out = run_in(dir.path(), &["simulate", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vanished_amplitude_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "zp.json",
        r#"{
          "input": {"kind": "vacuum"},
          "aux_photons": [1],
          "bs_theta": [1e-160],
          "aux_alpha": [[0.0, 0.0]],
          "alpha0": 0.0
        }"#,
    );
    let out = run_in(dir.path(), &["simulate", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

const OPT_CONFIG: &str = r#"{
  "input": {"kind": "vacuum"},
  "aux_photons": [1],
  "bs_theta": "free",
  "aux_alpha": "free",
  "alpha0": "free",
  "target": {"beta": 0.5, "parity": "odd"},
  "optimizer": {"restarts": 3, "seed": 11, "max_evals_per_start": 400}
}"#;

#[test]
fn optimize_writes_outcome_and_is_deterministic() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let cfg = write(dir.path(), "opt.json", OPT_CONFIG);
        let out = run_in(dir.path(), &["optimize", cfg.to_str().unwrap()]);
        assert!(
            out.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(dir_a.path().join("outcome.json")).unwrap();
    let b = std::fs::read(dir_b.path().join("outcome.json")).unwrap();
    assert_eq!(a, b);
    let outcome: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert!(outcome["fidelity"].as_f64().unwrap() > 0.9);
    assert_eq!(outcome["seed"].as_u64().unwrap(), 11);
}

#[test]
fn sweep_rejects_empty_range() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "opt.json", OPT_CONFIG);
    let out = run_in(
        dir.path(),
        &["sweep", cfg.to_str().unwrap(), "--beta-range", "2.0:1.0:0.1"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_emits_bound_columns() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "opt.json", OPT_CONFIG);
    let out = run_in(
        dir.path(),
        &[
            "sweep",
            cfg.to_str().unwrap(),
            "--beta-range",
            "0.4:0.6:0.1",
            "--restarts",
            "2",
        ],
    );
    assert!(out.status.success());
    let rows = read_csv(&dir.path().join("sweep.csv"));
    assert_eq!(rows.len(), 4);
    for row in &rows[1..] {
        let fidelity: f64 = row[3].parse().unwrap();
        let bound: f64 = row[6].parse().unwrap();
        assert!(fidelity <= bound + 1e-9);
    }
}

#[test]
fn unknown_recipe_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["reproduce", "table9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reproduce_small_kitten_table_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(dir.path(), &["reproduce", "table2", "--restarts", "8"]);
    assert!(
        out.status.success(),
        "stdout: {} stderr: {}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = read_csv(&dir.path().join("reproduce_table2.csv"));
    assert_eq!(
        rows[0],
        [
            "case",
            "parity",
            "beta",
            "fidelity",
            "probability",
            "paper_fidelity",
            "paper_probability",
            "pass"
        ]
    );
    assert_eq!(rows.len(), 3);
    for row in &rows[1..] {
        assert_eq!(row[7], "true");
    }
    assert!(dir
        .path()
        .join("reproduce_table2.csv.manifest.json")
        .exists());
}

#[test]
fn figure_recipe_emits_sweep_data() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_in(
        dir.path(),
        &[
            "reproduce",
            "fig8",
            "--restarts",
            "1",
            "--beta-range",
            "1.5:1.5:1.0",
        ],
    );
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = read_csv(&dir.path().join("reproduce_fig8.csv"));
    // six cases, one beta point each
    assert_eq!(rows.len(), 7);
    assert!(dir.path().join("reproduce_fig8.gp").exists());
}
