use std::path::PathBuf;
use std::process::{Command, Output};

use mosagg_cli::report::RunReport;

fn mosagg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mosagg")).args(args).env_remove("MOSAGG_TIMEOUT").output().expect("spawn mosagg")
}

struct TempDir(PathBuf);

impl TempDir {
    fn new(tag: &str) -> Self {
        let dir = std::env::temp_dir().join(format!("mosagg-cli-{tag}-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        TempDir(dir)
    }

    fn file(&self, name: &str) -> String {
        self.0.join(name).to_str().unwrap().to_string()
    }
}

impl Drop for TempDir {
    fn drop(&mut self) {
        std::fs::remove_dir_all(&self.0).ok();
    }
}

fn small_ou(dir: &TempDir) -> String {
    let path = dir.file("ou.json");
    let out = mosagg(&[
        "gen",
        "--domain",
        "ou",
        "--seed",
        "3",
        "--samples",
        "12",
        "--radius",
        "3",
        "--size",
        "5",
        "--obstacles",
        "3",
        "--pairs",
        "2",
        "--out",
        &path,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn missing_instance_exits_2() {
    let out = mosagg(&["run", "--instance", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scheme_mismatch_exits_3() {
    let dir = TempDir::new("mismatch");
    let inst = small_ou(&dir);
    let out = mosagg(&["run", "--instance", &inst, "--scheme", "road"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_budget_exits_4() {
    let dir = TempDir::new("budget");
    let inst = small_ou(&dir);
    let out = mosagg(&["verify", "--instance", &inst, "--max-paths", "1"]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn usage_errors_do_not_use_the_missing_input_code() {
    assert_eq!(mosagg(&["run"]).status.code(), Some(1));
    assert_eq!(mosagg(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_accepts_fresh_runs_and_saved_reports() {
    let dir = TempDir::new("verify");
    let inst = small_ou(&dir);
    let out = mosagg(&["verify", "--instance", &inst]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.lines().all(|l| !l.starts_with("FAIL")));

    let report = dir.file("report.json");
    assert!(mosagg(&["run", "--instance", &inst, "--eps", "0", "--out", &report]).status.success());
    let out = mosagg(&["verify", "--instance", &inst, "--report", &report]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    // a frontier with a forged cost no longer matches the oracle
    let mut forged = RunReport::from_json(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(!forged.frontier.is_empty());
    forged.frontier[0].cost[1] += 1.0;
    std::fs::write(&report, forged.to_json()).unwrap();
    let out = mosagg(&["verify", "--instance", &inst, "--report", &report]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn approximate_run_is_no_larger_than_exact() {
    let dir = TempDir::new("eps");
    let inst = small_ou(&dir);
    let size = |eps: &str| {
        let out = mosagg(&["run", "--instance", &inst, "--eps", eps]);
        assert!(out.status.success());
        RunReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap().frontier.len()
    };
    assert!(size("10") <= size("0"));
    assert!(size("10") >= 1);
}

#[test]
fn unreachable_goal_gives_empty_frontier() {
    let dir = TempDir::new("unreachable");
    let path = dir.file("split.txt");
    std::fs::write(&path, "0 1 1.0 paved\n2 3 1.0 unpaved\n").unwrap();
    let out = mosagg(&["run", "--instance", &path, "--start", "0", "--goal", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = RunReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(report.frontier.is_empty());
    assert!(!report.timed_out);
}

#[test]
fn compare_emits_rows_and_summary() {
    let dir = TempDir::new("compare");
    let inst = small_ou(&dir);
    let out = mosagg(&["compare", "--instance", &inst, "--pairs", "2", "--eps-list", "0,0.1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(mosagg_cli::CSV_HEADER));
    let rows: Vec<&str> = lines.collect();
    // 2 pairs x 2 eps x 2 modes, then one summary row per eps
    assert_eq!(rows.iter().filter(|r| !r.starts_with("summary")).count(), 8);
    assert_eq!(rows.iter().filter(|r| r.starts_with("summary")).count(), 2);
}
