use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fplpp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fplpp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn count_values() {
    let o = run(&["count", "1", "1", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
    assert_eq!(stdout(&run(&["count", "3", "0", "5"])).trim(), "1");
    assert_eq!(stdout(&run(&["count", "2", "2", "2"])).trim(), "20");
}

#[test]
fn count_q_polynomial() {
    let o = run(&["count", "1", "1", "1", "--q"]);
    assert_eq!(stdout(&o).trim(), "1 + q");
    let o = run(&["count", "2", "2", "2", "--q"]);
    assert_eq!(stdout(&o).trim(), "1 + q + 3q^2 + 3q^3 + 4q^4 + 3q^5 + 3q^6 + q^7 + q^8");
}

#[test]
fn verify_small_grids() {
    let report = tmp("verify.json");
    let start = Instant::now();
    let o = run(&["verify", "4", "--json-out", report.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(start.elapsed() < Duration::from_secs(10));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["command"], "verify");
    let checks = json["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 9);
    assert!(checks.iter().all(|c| c["passed"] == true), "{json}");
}

#[test]
fn verify_beyond_bound_is_a_usage_error() {
    let o = run(&["verify", "99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound"));
}

#[test]
fn render_ascii_golden() {
    let input = golden("base_111.json");
    let o = run(&["render", input.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), std::fs::read_to_string(golden("base_111.txt")).unwrap());
}

#[test]
fn render_svg_is_stable() {
    let input = golden("base_111.json");
    let args = ["render", input.to_str().unwrap(), "--format", "svg"];
    let first = stdout(&run(&args));
    assert_eq!(first, stdout(&run(&args)));
    assert_eq!(first, std::fs::read_to_string(golden("base_111.svg")).unwrap());
}

#[test]
fn biject_round_trip() {
    let input = golden("base_111.json");
    let o = run(&["biject", "fpl-to-pp", input.to_str().unwrap(), "--round-trip"]);
    assert!(o.status.success());
    let pp = stdout(&o);
    assert_eq!(pp.trim(), r#"{"a":1,"b":1,"c":1,"rows":[[0]]}"#);

    let pp_file = tmp("pp.json");
    std::fs::write(&pp_file, pp).unwrap();
    let o = run(&["biject", "pp-to-fpl", pp_file.to_str().unwrap(), "--n", "3", "--centers", "0,4,8", "--round-trip"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let back: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let want: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(input).unwrap()).unwrap();
    assert_eq!(back, want);
}

#[test]
fn biject_rejects_other_patterns() {
    let input = golden("not_three_bundle.json");
    let o = run(&["biject", "fpl-to-pp", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_is_a_parse_error() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, r#"{"n":3,"#).unwrap();
    let o = run(&["biject", "fpl-to-pp", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_partitions_counts_match() {
    let o = run(&["enumerate", "pp", "2", "2", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 20);
}
