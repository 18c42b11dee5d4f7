use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

use fuzzypid::RuleTable;

fn fuzzypid(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fuzzypid"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn simulate_writes_header_and_one_row_per_step() {
    let dir = TempDir::new().unwrap();
    let o = fuzzypid(&["simulate", "--controller", "pid", "--duration", "0.05", "-o", "run.csv"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("run.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,r,e,u,y,kp,ki,kd"));
    assert_eq!(lines.count(), 501);
    assert!(stdout(&o).contains("overshoot (%)"));
    for field in text.lines().nth(1).unwrap().split(',') {
        assert_eq!(field.split('.').nth(1).map(str::len), Some(9), "{field}");
    }
}

#[test]
fn zero_duration_is_a_config_error_and_writes_nothing() {
    let dir = TempDir::new().unwrap();
    let o = fuzzypid(&["simulate", "--duration", "0", "-o", "run.csv"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(!dir.path().join("run.csv").exists());
}

#[test]
fn config_file_and_flag_override() {
    let dir = TempDir::new().unwrap();
    std::fs::write(
        dir.path().join("s.cfg"),
        "# short run\nduration = 0.02\ncontroller = pid\noutput = from_file.csv\n",
    )
    .unwrap();
    let o = fuzzypid(&["simulate", "--config", "s.cfg", "--dt", "0.001"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("from_file.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 21);

    let bad = fuzzypid(&["simulate", "--config", "missing.cfg"], dir.path());
    assert_eq!(bad.status.code(), Some(1));
    std::fs::write(dir.path().join("bad.cfg"), "colour = blue\n").unwrap();
    assert_eq!(fuzzypid(&["simulate", "--config", "bad.cfg"], dir.path()).status.code(), Some(1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for name in ["a.csv", "b.csv"] {
        let o = fuzzypid(&["simulate", "--duration", "0.2", "-o", name], dir.path());
        assert_eq!(o.status.code(), Some(0));
    }
    let a = std::fs::read(dir.path().join("a.csv")).unwrap();
    let b = std::fs::read(dir.path().join("b.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn unstable_loop_exits_2_and_keeps_partial_trajectory() {
    let dir = TempDir::new().unwrap();
    let o = fuzzypid(
        &["simulate", "--controller", "pid", "--kp", "1e6", "--kd", "1", "--duration", "1", "-o", "boom.csv"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    let text = std::fs::read_to_string(dir.path().join("boom.csv")).unwrap();
    assert!(text.starts_with("t,r,e,u,y,kp,ki,kd\n"));
    assert!(text.lines().count() < 10_002);
}

fn compare_columns(text: &str) -> Vec<(String, String, String)> {
    text.lines()
        .skip(1)
        .map(|line| {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let n = parts.len();
            (parts[..n - 2].join(" "), parts[n - 2].to_string(), parts[n - 1].to_string())
        })
        .collect()
}

#[test]
fn compare_with_zero_scaling_gives_identical_columns() {
    let dir = TempDir::new().unwrap();
    let o = fuzzypid(&["compare", "--kup", "0", "--kui", "0", "--kud", "0"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let rows = compare_columns(&stdout(&o));
    assert!(rows.len() >= 5);
    for (label, pid, fuzzy) in rows {
        assert_eq!(pid, fuzzy, "{label}");
    }
}

#[test]
fn compare_default_favours_fuzzy_overshoot() {
    let dir = TempDir::new().unwrap();
    let o = fuzzypid(&["compare"], dir.path());
    let rows = compare_columns(&stdout(&o));
    let labels: Vec<&str> = rows.iter().map(|r| r.0.as_str()).collect();
    for want in ["maximum output", "peak time (s)", "settling time (s)", "final value", "overshoot (%)"] {
        assert!(labels.contains(&want), "{want}");
    }
    assert!(!labels.contains(&"peak deviation"));
    let os = rows.iter().find(|r| r.0 == "overshoot (%)").unwrap();
    assert!(os.2.parse::<f64>().unwrap() < os.1.parse::<f64>().unwrap());
}

#[test]
fn compare_with_disturbance_adds_deviation_rows() {
    let dir = TempDir::new().unwrap();
    let o = fuzzypid(
        &["compare", "--duration", "1", "--disturbance_time", "0.5", "--disturbance_magnitude", "5e-4"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let rows = compare_columns(&stdout(&o));
    assert!(rows.iter().any(|r| r.0 == "peak deviation"));
}

#[test]
fn rules_dump_round_trips_through_a_file() {
    let dir = TempDir::new().unwrap();
    let o = fuzzypid(&["rules"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let first = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert!(first.starts_with("PB/NB/PS,"));
    assert!(text.contains("PM/NM/NB?"));
    assert_eq!(text.parse::<RuleTable>().unwrap(), RuleTable::default());

    std::fs::write(dir.path().join("rules.txt"), &text).unwrap();
    let again = fuzzypid(&["rules", "--rules_file", "rules.txt"], dir.path());
    assert_eq!(stdout(&again), text);
}

#[test]
fn metrics_subcommand_matches_simulate() {
    let dir = TempDir::new().unwrap();
    let sim = fuzzypid(&["simulate", "-o", "run.csv"], dir.path());
    let met = fuzzypid(&["metrics", "run.csv"], dir.path());
    assert_eq!(met.status.code(), Some(0));
    let pick = |text: &str| {
        text.lines()
            .find(|l| l.starts_with("overshoot (%)"))
            .map(|l| l.split_whitespace().last().unwrap().to_string())
    };
    assert_eq!(pick(&stdout(&sim)), pick(&stdout(&met)));
    assert_eq!(fuzzypid(&["metrics", "nope.csv"], dir.path()).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_1_and_help_exits_0() {
    let dir = TempDir::new().unwrap();
    assert_eq!(fuzzypid(&["frobnicate"], dir.path()).status.code(), Some(1));
    assert_eq!(fuzzypid(&["simulate", "--kp", "abc"], dir.path()).status.code(), Some(1));
    assert_eq!(fuzzypid(&["--help"], dir.path()).status.code(), Some(0));
}
