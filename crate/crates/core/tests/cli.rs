use std::path::PathBuf;
use std::process::Command;

use loveline::cli::{run, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

fn fixture(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let path = if name.starts_with("malformed") { dir.join("tests/data").join(name) } else { dir.join("fixtures").join(name) };
    path.to_string_lossy().into_owned()
}

fn loveline(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("loveline").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn eval_timeline_a() {
    let (code, out, err) = loveline(&["eval", &fixture("timeline_a.love")]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out, "loves(sally,john) over [0,10) T=1: FAILS s=4 c=6\n");
}

#[test]
fn eval_timeline_b_has_no_love_events() {
    let (code, out, _) = loveline(&["eval", &fixture("timeline_b.love")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.ends_with("FAILS s=0 c=10")), "{out}");
}

#[test]
fn eval_timeline_c_holds() {
    let (_, out, _) = loveline(&["eval", &fixture("timeline_c.love")]);
    assert!(out.contains("HOLDS s=10 c=0"), "{out}");
}

#[test]
fn json_agrees_with_text() {
    for name in ["timeline_a.love", "timeline_b.love", "timeline_c.love", "inhibition.love"] {
        let (_, text, _) = loveline(&["eval", &fixture(name)]);
        let (code, json, _) = loveline(&["eval", "--format", "json", &fixture(name)]);
        assert_eq!(code, EXIT_OK);
        let records: Vec<serde_json::Value> = serde_json::from_str(&json).unwrap();
        assert_eq!(records.len(), text.lines().count());
        for (r, line) in records.iter().zip(text.lines()) {
            let verdict = if r["holds"].as_bool().unwrap() { "HOLDS" } else { "FAILS" };
            let tail = format!("{verdict} s={} c={}", r["s"].as_str().unwrap(), r["c"].as_str().unwrap());
            assert!(line.ends_with(&tail), "{line} vs {tail}");
        }
    }
}

#[test]
fn check_reports_malformed_line() {
    let path = fixture("malformed.love");
    let (code, out, err) = loveline(&["check", &path]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(out.is_empty());
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.starts_with(&format!("{path}:")));
    assert!(err.contains("E_SYNTAX"), "{err}");
}

#[test]
fn check_accepts_fixtures() {
    for name in ["timeline_a.love", "timeline_b.love", "timeline_c.love", "inhibition.love"] {
        let (code, _, err) = loveline(&["check", &fixture(name)]);
        assert_eq!(code, EXIT_OK, "{name}: {err}");
        assert!(err.is_empty());
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(loveline(&["eval", "--bogus", &fixture("timeline_a.love")]).0, EXIT_USAGE);
    assert_eq!(loveline(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(loveline(&[]).0, EXIT_USAGE);
    assert_eq!(loveline(&["explain", &fixture("timeline_a.love")]).0, EXIT_USAGE);
    assert_eq!(loveline(&["oracle", &fixture("timeline_a.love"), "--granularity", "x"]).0, EXIT_USAGE);
}

#[test]
fn missing_file_exits_one() {
    let (code, _, err) = loveline(&["eval", "/nonexistent/file.love"]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(err.contains("/nonexistent/file.love"));
}

#[test]
fn explain_prints_trace() {
    let (code, out, _) = loveline(&["explain", &fixture("timeline_a.love"), "--query", "1"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("condition_i: [2,8)"), "{out}");
    assert!(out.contains("condition_ii_derived: [3,7)"));
    assert!(out.contains("love_events: [3,7)"));
    assert!(out.contains("first_failure: ratio below threshold"));

    let (_, out, _) = loveline(&["explain", &fixture("timeline_b.love"), "--query", "1"]);
    assert!(out.contains("acquaintance_onset: none"), "{out}");
    assert!(out.contains("first_failure: no acquaintance"));

    assert_eq!(loveline(&["explain", &fixture("timeline_a.love"), "--query", "2"]).0, EXIT_FAILURE);
    assert_eq!(loveline(&["explain", &fixture("timeline_a.love"), "--query", "0"]).0, EXIT_FAILURE);
}

#[test]
fn explain_inhibition_mask() {
    let (_, out, _) = loveline(&["explain", &fixture("inhibition.love"), "--query", "1"]);
    assert!(out.contains("inhibition_mask: [4,6)"), "{out}");
    assert!(out.contains("condition_ii_direct: [7,9)"));
    assert!(out.contains("verdict: FAILS s=3 c=7"));
}

#[test]
fn export_bfo_is_sorted() {
    let (code, out, _) = loveline(&["export-bfo", &fixture("timeline_a.love")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("individual sally Agent \"sally\"\n"));
    assert!(out.contains("s1 inheres_in sally\n"));
    assert!(out.contains("ice_j1 is_about john\n"));
    let individuals: Vec<&str> = out.lines().filter(|l| l.starts_with("individual ")).collect();
    let mut sorted = individuals.clone();
    sorted.sort();
    assert_eq!(individuals, sorted);
}

#[test]
fn oracle_agrees_on_fixtures() {
    for g in ["1", "1/2"] {
        for name in ["timeline_a.love", "timeline_b.love", "timeline_c.love"] {
            let (code, out, err) = loveline(&["oracle", &fixture(name), "--granularity", g]);
            assert_eq!(code, EXIT_OK, "{name} at {g}: {out}{err}");
            assert!(out.lines().all(|l| l.contains(": agree: ")));
        }
    }
    // 1.5 is not a multiple of 1, so the acquaintance onset is off the tick grid.
    let (code, _, err) = loveline(&["oracle", &fixture("inhibition.love"), "--granularity", "1"]);
    assert_eq!(code, EXIT_FAILURE);
    assert!(err.contains("E_GRANULARITY"), "{err}");
    assert_eq!(loveline(&["oracle", &fixture("inhibition.love"), "--granularity", "0.5"]).0, EXIT_OK);
}

#[test]
fn binary_matches_library_entry_point() {
    let output = Command::new(env!("CARGO_BIN_EXE_loveline"))
        .args(["eval", &fixture("timeline_a.love")])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8(output.stdout).unwrap(), loveline(&["eval", &fixture("timeline_a.love")]).1);

    let output = Command::new(env!("CARGO_BIN_EXE_loveline")).arg("--nope").output().unwrap();
    assert_eq!(output.status.code(), Some(EXIT_USAGE));
}
