//! Exit-code and interface tests driving the compiled binary: the exit
//! taxonomy is 0 success, 1 config/backend, 2 unstable, 3 no data, 4 I/O.

use std::path::Path;
use std::process::Output;

fn jw(args: &[&str], cwd: &Path) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_joulewatch"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn write(path: &Path, content: &str) {
    std::fs::write(path, content).unwrap();
}

/// Three commits, two with an explicit-run trace, one model-based; commit
/// medians are pinned campaign values.
fn standard_fixture(dir: &Path, stability_deltas: &str) {
    write(
        &dir.join("repo.json"),
        r#"[
  {"id": "aaa", "date": "2024-01-01T00:00:00Z", "message": "initial import"},
  {"id": "bbb", "date": "2024-01-02T00:00:00Z", "message": "tune parser internals"},
  {"id": "ccc", "date": "2024-01-03T00:00:00Z", "message": "update poi read streaming benchmark"}
]"#,
    );
    // Explicit runs with exact medians 644.05 (aaa, bbb) and 651.97 (ccc).
    let runs = |median: f64| {
        let values = [
            median - 0.2,
            median - 0.1,
            median,
            median + 0.1,
            median + 0.2,
        ];
        let items: Vec<String> = values
            .iter()
            .map(|v| format!(r#"{{"energy_joules": {v}, "duration_seconds": 1.5}}"#))
            .collect();
        format!("[{}]", items.join(","))
    };
    write(
        &dir.join("trace.json"),
        &format!(
            r#"{{"schema": 1, "commits": {{"aaa": {}, "bbb": {}, "ccc": {}}}, "stability_deltas": {stability_deltas}}}"#,
            runs(644.05),
            runs(644.05),
            runs(651.97)
        ),
    );
    write(
        &dir.join("pipeline.toml"),
        "manifest = 'repo.json'\nenergy_backend = 'trace'\ntrace_manifest = 'trace.json'\nrepetitions = 5\nbatch_size = 10\nrng_seed = 3\n",
    );
}

fn constant_deltas() -> String {
    let v = vec!["10.0"; 40];
    format!("[{}]", v.join(","))
}

fn spiked_deltas() -> String {
    let mut v = vec!["10.0".to_string(); 12];
    v.push("100.0".into());
    v.extend(std::iter::repeat_n("10.0".to_string(), 27));
    format!("[{}]", v.join(","))
}

#[test]
fn stability_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    let out = jw(&["stability", "--config", "pipeline.toml"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("verdict: stable"), "{stdout}");

    standard_fixture(dir.path(), &spiked_deltas());
    let out = jw(&["stability", "--config", "pipeline.toml"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("verdict: unstable"), "{stdout}");
    assert!(stdout.contains("violation"), "{stdout}");
}

#[test]
fn missing_config_is_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let out = jw(&["stability", "--config", "nope.toml"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let out = jw(
        &["measure", "--config", "nope.toml", "--out", "x"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_config_is_exit_1_and_names_the_key() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    write(
        &dir.path().join("bad.toml"),
        "manifest = 'repo.json'\nenergy_backend = 'trace'\ntrace_manifest = 'trace.json'\nrepetitions = 0\n",
    );
    let out = jw(
        &["measure", "--config", "bad.toml", "--out", "x"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("repetitions"));
}

#[test]
fn measure_writes_expected_row_count() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    write(
        &dir.path().join("p2.toml"),
        "manifest = 'repo.json'\nenergy_backend = 'trace'\ntrace_manifest = 'trace.json'\nrepetitions = 2\nbatch_size = 10\n",
    );
    let out = jw(
        &["measure", "--config", "p2.toml", "--out", "m"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("m/raw.csv")).unwrap();
    assert_eq!(csv.lines().count(), 7, "header + 3 commits x 2 repetitions");
}

#[test]
fn dry_run_prints_plan_without_measuring() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    let out = jw(
        &[
            "measure",
            "--config",
            "pipeline.toml",
            "--out",
            "d",
            "--dry-run",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("15 tasks"), "{stdout}");
    assert!(!dir.path().join("d/raw.csv").exists());
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    let base = jw(
        &[
            "measure",
            "--config",
            "pipeline.toml",
            "--out",
            "s0",
            "--dry-run",
        ],
        dir.path(),
    );
    let overridden = jw(
        &[
            "measure",
            "--config",
            "pipeline.toml",
            "--out",
            "s1",
            "--dry-run",
            "--seed",
            "99",
        ],
        dir.path(),
    );
    let a = String::from_utf8_lossy(&base.stdout).to_string();
    let b = String::from_utf8_lossy(&overridden.stdout).to_string();
    assert!(b.contains("seed 99"));
    assert_ne!(a, b);
}

#[test]
fn analyze_flags_tagged_commit_at_level_5() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    let out = jw(
        &["run", "--config", "pipeline.toml", "--out", "r"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    // the 644.05 -> 651.97 commit with "benchmark" in its message
    let row = stdout
        .lines()
        .find(|l| l.starts_with("ccc"))
        .unwrap_or_else(|| panic!("no table row for ccc in: {stdout}"));
    assert!(row.contains("5"), "expected level 5 in row: {row}");
    assert!(row.contains("regression"), "{row}");

    let events: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("r/events.json")).unwrap())
            .unwrap();
    let ev = events["events"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["test"] == "ccc")
        .unwrap();
    assert_eq!(ev["level"], 5);
    assert_eq!(ev["matched_tags"][0], "benchmark");
    assert_eq!(ev["pc_category"], "minor");
    assert_eq!(ev["dj_category"], "info");
}

#[test]
fn analyze_is_row_order_independent() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    let out = jw(
        &["measure", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        jw(&["analyze", "--out", "o"], dir.path()).status.code(),
        Some(0)
    );
    let events_sorted = std::fs::read(dir.path().join("o/events.json")).unwrap();
    let series_sorted = std::fs::read(dir.path().join("o/series.json")).unwrap();

    // shuffle the raw csv rows (keep the header) and re-analyze
    let csv = std::fs::read_to_string(dir.path().join("o/raw.csv")).unwrap();
    let mut lines: Vec<&str> = csv.lines().collect();
    let header = lines.remove(0);
    lines.reverse();
    lines.rotate_left(3);
    let shuffled = format!("{header}\n{}\n", lines.join("\n"));
    std::fs::write(dir.path().join("o/raw.csv"), shuffled).unwrap();
    assert_eq!(
        jw(&["analyze", "--out", "o"], dir.path()).status.code(),
        Some(0)
    );
    assert_eq!(
        events_sorted,
        std::fs::read(dir.path().join("o/events.json")).unwrap()
    );
    assert_eq!(
        series_sorted,
        std::fs::read(dir.path().join("o/series.json")).unwrap()
    );
}

#[test]
fn analyze_skips_malformed_rows_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    jw(
        &["measure", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    let csv_path = dir.path().join("o/raw.csv");
    let mut csv = std::fs::read_to_string(&csv_path).unwrap();
    csv.insert_str(csv.find('\n').unwrap() + 1, "this,is,garbage\n");
    std::fs::write(&csv_path, csv).unwrap();
    let out = jw(&["analyze", "--out", "o", "-v"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));
}

#[test]
fn single_commit_campaign_yields_no_events() {
    let dir = tempfile::tempdir().unwrap();
    write(
        &dir.path().join("repo.json"),
        r#"[{"id": "only", "date": "2024-01-01T00:00:00Z", "message": "m"}]"#,
    );
    write(
        &dir.path().join("trace.json"),
        r#"{"schema": 1, "commits": {"only": {"mean": 10.0, "sd": 0.1}}}"#,
    );
    write(
        &dir.path().join("pipeline.toml"),
        "manifest = 'repo.json'\nenergy_backend = 'trace'\ntrace_manifest = 'trace.json'\nrepetitions = 5\n",
    );
    let out = jw(
        &["run", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let events: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/events.json")).unwrap())
            .unwrap();
    assert_eq!(events["events"].as_array().unwrap().len(), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("no significant changes"), "{stdout}");
}

#[test]
fn failing_tests_exclude_a_commit() {
    let dir = tempfile::tempdir().unwrap();
    write(
        &dir.path().join("repo.json"),
        r#"[
  {"id": "ok1", "date": "2024-01-01T00:00:00Z", "message": "a"},
  {"id": "bad", "date": "2024-01-02T00:00:00Z", "message": "b", "test_ok": false},
  {"id": "ok2", "date": "2024-01-03T00:00:00Z", "message": "c"}
]"#,
    );
    write(
        &dir.path().join("trace.json"),
        r#"{"schema": 1, "commits": {"ok1": {"mean": 10.0, "sd": 0.1}, "bad": {"mean": 10.0, "sd": 0.1}, "ok2": {"mean": 10.0, "sd": 0.1}}}"#,
    );
    write(
        &dir.path().join("pipeline.toml"),
        "manifest = 'repo.json'\nenergy_backend = 'trace'\ntrace_manifest = 'trace.json'\nrepetitions = 4\n",
    );
    let out = jw(
        &["run", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let series: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/series.json")).unwrap())
            .unwrap();
    let bad = series["commits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "bad")
        .unwrap();
    assert_eq!(bad["n_runs"], 4);
    assert_eq!(bad["n_passing"], 0);
    assert_eq!(bad["exclusion_reason"], "no passing samples");
    // ok2 compares against ok1, skipping the failing commit
    let events: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/events.json")).unwrap())
            .unwrap();
    let ev = &events["events"].as_array().unwrap()[0];
    assert_eq!(ev["baseline"], "ok1");
    assert_eq!(ev["test"], "ok2");
}

#[test]
fn build_failures_exclude_a_commit_but_campaign_continues() {
    let dir = tempfile::tempdir().unwrap();
    write(
        &dir.path().join("repo.json"),
        r#"[
  {"id": "ok1", "date": "2024-01-01T00:00:00Z", "message": "a"},
  {"id": "broken", "date": "2024-01-02T00:00:00Z", "message": "b", "build_ok": false},
  {"id": "ok2", "date": "2024-01-03T00:00:00Z", "message": "c"}
]"#,
    );
    write(
        &dir.path().join("trace.json"),
        r#"{"schema": 1, "commits": {"ok1": {"mean": 10.0, "sd": 0.1}, "broken": {"mean": 10.0, "sd": 0.1}, "ok2": {"mean": 10.0, "sd": 0.1}}}"#,
    );
    write(
        &dir.path().join("pipeline.toml"),
        "manifest = 'repo.json'\nenergy_backend = 'trace'\ntrace_manifest = 'trace.json'\nrepetitions = 3\n",
    );
    let out = jw(
        &["run", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("o/raw.csv")).unwrap();
    assert_eq!(
        csv.lines().count(),
        7,
        "header + 2 buildable commits x 3 reps"
    );
    let series: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/series.json")).unwrap())
            .unwrap();
    let broken = series["commits"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "broken")
        .unwrap();
    assert!(broken["exclusion_reason"]
        .as_str()
        .unwrap()
        .contains("build failed"));
}

#[test]
fn perf_backend_unavailable_fails_fast_with_exit_1() {
    // This sandbox has no perf / RAPL interface, which is exactly the
    // fail-fast path the run command must take before any work.
    if std::path::Path::new("/sys/class/powercap/intel-rapl:0").exists() {
        eprintln!("skipping: host actually has RAPL");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    // a git repo source so config validation passes
    write(
        &dir.path().join("pipeline.toml"),
        "repo = 'https://example.invalid/repo.git'\nenergy_backend = 'perf-rapl'\ntest_command = 'true'\n",
    );
    let out = jw(
        &["run", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("backend unavailable"), "{stderr}");
    assert!(
        !dir.path().join("o").exists(),
        "no work before the backend check"
    );
}

#[test]
fn unstable_system_blocks_measurement_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &spiked_deltas());
    let out = jw(
        &["measure", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("o/raw.csv").exists());

    // --skip-stability bypasses the gate
    let out = jw(
        &[
            "measure",
            "--config",
            "pipeline.toml",
            "--out",
            "o",
            "--skip-stability",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("o/raw.csv").exists());
}

#[test]
fn missing_bundles_give_exit_3_for_report() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::create_dir(dir.path().join("empty")).unwrap();
    let out = jw(&["report", "--out", "empty"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn report_is_deterministic_via_cli() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    jw(
        &["run", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    let first = std::fs::read(dir.path().join("o/index.html")).unwrap();
    let out = jw(&["report", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        first,
        std::fs::read(dir.path().join("o/index.html")).unwrap()
    );
}

#[test]
fn measurements_never_overlap_and_cover_every_commit() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &constant_deltas());
    jw(
        &["measure", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    let csv = std::fs::read_to_string(dir.path().join("o/raw.csv")).unwrap();

    let mut intervals: Vec<(chrono::DateTime<chrono::Utc>, f64)> = Vec::new();
    let mut per_commit = std::collections::HashMap::new();
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        *per_commit.entry(fields[0].to_string()).or_insert(0u32) += 1;
        let start = chrono::DateTime::parse_from_rfc3339(fields[7])
            .unwrap()
            .with_timezone(&chrono::Utc);
        intervals.push((start, fields[3].parse().unwrap()));
    }
    // coverage: every passing-build commit has exactly `repetitions` rows
    assert_eq!(per_commit.len(), 3);
    assert!(per_commit.values().all(|&n| n == 5), "{per_commit:?}");
    // serialization: measurement intervals are disjoint
    intervals.sort_by_key(|(start, _)| *start);
    for pair in intervals.windows(2) {
        let end = pair[0].0 + chrono::Duration::milliseconds((pair[0].1 * 1000.0) as i64);
        assert!(
            pair[1].0 >= end,
            "overlapping measurements: {:?} then {:?}",
            pair[0],
            pair[1]
        );
    }
}

#[test]
fn recheck_stability_aborts_between_batches() {
    let dir = tempfile::tempdir().unwrap();
    standard_fixture(dir.path(), &spiked_deltas());
    // batch_size 1 forces several batches; skip the entry gate so the
    // mid-campaign recheck is the one that trips.
    write(
        &dir.path().join("p.toml"),
        "manifest = 'repo.json'\nenergy_backend = 'trace'\ntrace_manifest = 'trace.json'\nrepetitions = 3\nbatch_size = 1\n",
    );
    let out = jw(
        &[
            "measure",
            "--config",
            "p.toml",
            "--out",
            "o",
            "--skip-stability",
            "--recheck-stability",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
    let csv = std::fs::read_to_string(dir.path().join("o/raw.csv")).unwrap();
    assert_eq!(
        csv.lines().count(),
        4,
        "first batch measured before the recheck tripped"
    );
}

#[test]
fn campaign_with_no_samples_is_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    write(
        &dir.path().join("repo.json"),
        r#"[{"id": "x", "date": "2024-01-01T00:00:00Z", "message": "m", "build_ok": false}]"#,
    );
    write(
        &dir.path().join("trace.json"),
        r#"{"schema": 1, "commits": {}}"#,
    );
    write(
        &dir.path().join("pipeline.toml"),
        "manifest = 'repo.json'\nenergy_backend = 'trace'\ntrace_manifest = 'trace.json'\nrepetitions = 3\n",
    );
    let out = jw(
        &["measure", "--config", "pipeline.toml", "--out", "o"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
}
