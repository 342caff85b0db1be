use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn invset(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invset"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn zero_angles_give_classical_bound() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "c.json", r#"{"n_bits": 8, "a1": "0", "a2": "0", "b1": "0", "b2": "0"}"#);
    let out = invset(&["chsh", "--config", &cfg], &dir.path().join("o"));
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&dir.path().join("o/chsh.json"));
    assert_eq!(report["report"]["s"], "2/1");
    assert!(dir.path().join("o/chsh_counterfactuals.csv").exists());
}

#[test]
fn inadmissible_angle_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "c.json",
        r#"{"n_bits": 12, "a1": "0", "a2": "1/4", "b1": "1/7", "b2": "3/8", "window": "1/1099511627776"}"#,
    );
    let out = invset(&["chsh", "--config", &cfg], &dir.path().join("o"));
    assert_eq!(out.status.code(), Some(2));
    let report = read_json(&dir.path().join("o/chsh.json"));
    assert_eq!(report["status"], "excluded");
    assert!(report["reason"].as_str().unwrap().contains("no admissible angle"));
}

#[test]
fn mz_which_way_off_grid_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "m.json", r#"{"mode": "which_way", "phi": "1/3", "n_bits": 8}"#);
    let out = invset(&["mz", "--config", &cfg], &dir.path().join("o"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_violations_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.json", r#"{"n_bits": 4, "colour": "red"}"#);
    assert_eq!(invset(&["sample", "--config", &cfg], &dir.path().join("o")).status.code(), Some(1));
    let cfg = write_config(dir.path(), "m.json", r#"{"mode": "sideways", "phi": "0", "n_bits": 4}"#);
    assert_eq!(invset(&["mz", "--config", &cfg], &dir.path().join("o")).status.code(), Some(1));
    let out = invset(&["chsh", "--config", "/no/such/file.json"], &dir.path().join("o"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = invset(&["check", "foo"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("algebra"));
}

#[test]
fn algebra_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = invset(&["check", "algebra", "--n-bits", "12"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let report = read_json(&dir.path().join("check.json"));
    assert_eq!(report["seed"], 2016);
}

#[test]
fn golden_modes_match() {
    let dir = tempfile::tempdir().unwrap();
    let out = invset(&["sample", "--golden"], &dir.path().join("s"));
    assert_eq!(out.status.code(), Some(0));
    let table = std::fs::read_to_string(dir.path().join("s/sample_n4.txt")).unwrap();
    assert_eq!(table.lines().next(), Some("0000101011110101"));
    let out = invset(&["padic", "--golden"], &dir.path().join("p"));
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("15/1,7/1,1/8"));
    assert_eq!(invset(&["chsh", "--golden"], &dir.path().join("c")).status.code(), Some(1));
}

#[test]
fn dirac_full_period_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    let out = invset(&["dirac", "--n-bits", "6"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let report = read_json(&dir.path().join("dirac.json"));
    assert_eq!(report["report"]["steps"], 32);
    assert_eq!(report["report"]["returns_to_start"], true);
    let csv = std::fs::read_to_string(dir.path().join("dirac_trace.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 33 * 4);
}

#[test]
fn padic_example_distances() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(invset(&["padic", "--format", "csv"], dir.path()).status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("padic.csv")).unwrap();
    assert_eq!(csv, "a,b,ord_p,d_p\n7/1,3/1,2,1/4\n15/1,7/1,3,1/8\n");
    assert!(!dir.path().join("padic.json").exists());
}

#[test]
fn manifest_hash_ignores_timestamp() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert_eq!(invset(&["mz"], &a).status.code(), Some(0));
    assert_eq!(invset(&["mz"], &b).status.code(), Some(0));
    let (ma, mb) = (read_json(&a.join("manifest.json")), read_json(&b.join("manifest.json")));
    assert_eq!(ma["output_hash"], mb["output_hash"]);
    assert_eq!(ma["input_hash"], mb["input_hash"]);
    assert_eq!(ma["config"]["mode"], "interference");
    assert_eq!(std::fs::read(a.join("mz.json")).unwrap(), std::fs::read(b.join("mz.json")).unwrap());
}

#[test]
fn sample_report_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.json", r#"{"n_bits": 5, "theta": {"cos": "3/4"}, "phi": "1/8"}"#);
    assert_eq!(invset(&["sample", "--config", &cfg], &dir.path().join("o")).status.code(), Some(0));
    let r = read_json(&dir.path().join("o/sample.json"));
    assert_eq!(r["report"]["fraction"], "7/8");
    assert_eq!(r["report"]["shadow"]["phi_turns"], "1/8");
}

#[test]
fn golden_rejects_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "p.json", r#"{"p": 3}"#);
    let out = invset(&["padic", "--golden", "--config", &cfg], &dir.path().join("o"));
    assert_eq!(out.status.code(), Some(1));
}
