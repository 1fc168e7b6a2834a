use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kwall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kwall"))
        .args(args)
        .env_remove("KWALL_ATLAS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(o: &Output) -> Vec<Vec<String>> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn temp(name: &str, body: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("kwall-test-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn f1_walls_csv() {
    let o = kwall(&["walls", "--surface", "f1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let rows = csv_rows(&o);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0][0], "1/14");
    assert_eq!(rows[10][0], "2/7");
    assert!(rows.iter().all(|r| r[2] == "published"));
}

#[test]
fn walls_json_is_sorted() {
    let o = kwall(&["walls", "--surface", "all", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let walls: Vec<kwall_core::Rational> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| kwall_core::exactnum::parse_rational(r["wall"].as_str().unwrap()).unwrap())
        .collect();
    assert!(walls.windows(2).all(|w| w[0] <= w[1]));
    // 2/7 is kept once per surface.
    assert_eq!(
        v.as_array()
            .unwrap()
            .iter()
            .filter(|r| r["wall"] == "2/7")
            .count(),
        2
    );
}

#[test]
fn blp114_check_reports_engine_only_walls() {
    let o = kwall(&["walls", "--surface", "blp114", "--check", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("41/130"));
}

#[test]
fn sfun_engine_equals_formula() {
    let o = kwall(&[
        "sfun", "--chart", "case2-yv", "--a", "2", "--b", "1", "--c", "0", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = &csv_rows(&o)[0];
    assert_eq!(
        (r[5].as_str(), r[6].as_str(), r[7].as_str()),
        ("41/12", "41/12", "yes")
    );
}

#[test]
fn hkl_map_passes() {
    let o = kwall(&["hkl", "map", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let sum = v["summary"].as_array().unwrap();
    assert_eq!(sum[1]["value"], "{1/31, 1/28, 1/27, 1/25}");
}

#[test]
fn tables_round_trip() {
    let emit = kwall(&["tables", "--emit"]);
    assert_eq!(emit.status.code(), Some(0));
    let mut child = Command::new(env!("CARGO_BIN_EXE_kwall"))
        .args(["tables", "--check", "--format", "csv"])
        .env_remove("KWALL_ATLAS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&emit.stdout).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert_eq!(stdout(&o).lines().count(), 21);
}

#[test]
fn tables_check_flags_an_edited_row() {
    let text = stdout(&kwall(&["tables", "--emit"])).replacen("\"5/58\"", "\"5/57\"", 1);
    let p = temp("edited.json", &text);
    let o = kwall(&["tables", "--check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stderr).unwrap().contains("5/57"));
}

#[test]
fn atlas_override_by_environment() {
    let text = stdout(&kwall(&["tables", "--emit"]));
    let mut a = kwall_core::hkl::WallAtlas::from_json(&text).unwrap();
    a.walls.retain(|r| r.wall != "7/62");
    let p = temp("atlas.json", &a.to_json());
    let o = Command::new(env!("CARGO_BIN_EXE_kwall"))
        .args(["walls", "--surface", "f1", "--format", "csv"])
        .env("KWALL_ATLAS", &p)
        .output()
        .unwrap();
    let rows = csv_rows(&o);
    assert_eq!(
        rows.iter().find(|r| r[0] == "7/62").unwrap()[2],
        "engine-only"
    );
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(kwall(&["walls", "--surface", "p2"]).status.code(), Some(2));
    assert_eq!(kwall(&["frobnicate"]).status.code(), Some(2));
    let o = kwall(&[
        "beta",
        "--surface",
        "f1",
        "--curve",
        "x^9",
        "--weights",
        "1,0,0",
        "--c",
        "1/5",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("weighted degree"));
    assert_eq!(
        kwall(&["certify", "index3", "--c", "1/2"]).status.code(),
        Some(2)
    );
}

#[test]
fn config_supplies_defaults() {
    let p = temp("kwall.conf", "# defaults\nformat = csv\nsurface = f1\n");
    let o = kwall(&["walls", "--config", p.to_str().unwrap()]);
    assert_eq!(csv_rows(&o).len(), 11);
    let o = kwall(&[
        "walls",
        "--config",
        p.to_str().unwrap(),
        "--surface",
        "blp114",
    ]);
    assert_eq!(csv_rows(&o).len(), 7);
    let bad = temp("bad.conf", "colour = red\n");
    assert_eq!(
        kwall(&["hkl", "cone", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn certificates_and_threshold() {
    let o = kwall(&["certify", "index3", "--c", "1/5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_rows(&o)[0][3], "-1/3");
    let o = kwall(&["certify", "quotient-point", "--c", "1/5", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let o = kwall(&[
        "threshold",
        "--surface",
        "f1",
        "--curve",
        "x^3*z^3 + x*y^5",
        "--bound",
        "15",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_rows(&o)[0][2], "{2/7}");
}

#[test]
fn curve_from_file_and_approx() {
    let p = temp("curve.txt", "x^4*y*z\n");
    let o = kwall(&[
        "beta",
        "--surface",
        "f1",
        "--curve",
        p.to_str().unwrap(),
        "--divisor",
        "E",
        "--c",
        "1/10",
        "--approx",
        "4",
        "--format",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r = &csv_rows(&o)[0];
    assert_eq!((r[2].as_str(), r[3].as_str()), ("14/15", "0.9333"));
}

#[test]
fn output_is_deterministic() {
    let a = kwall(&["walls", "--format", "json"]);
    let b = kwall(&["walls", "--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn audit_and_cone() {
    let o = kwall(&["hkl", "audit", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| 5/22 | F1 | D9 | 9 | 9 | 0 | 1 | no |"));
    let o = kwall(&["hkl", "cone", "--format", "csv"]);
    let rows = csv_rows(&o);
    assert_eq!(
        rows.iter()
            .filter(|r| r.contains(&"no".to_string()))
            .count(),
        1
    );
}
