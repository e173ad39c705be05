mod common;

use std::fs;
use std::process::Command;

use common::data;
use spatial_templates::io::{load_report, load_situation, Method};

fn run(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_spatial-templates")).args(args).output().unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn validate_match_render_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let t = data("division_template.json");
    let s = data("division_situation.json");
    let (t, s) = (t.to_str().unwrap(), s.to_str().unwrap());
    assert!(ok(&["validate", t]).contains("12 objects, 8 constraints"));

    let report = dir.path().join("r.json");
    let oracle = dir.path().join("o.json");
    let r = report.to_str().unwrap();
    ok(&["match", "--template", t, "--situation", s, "--threshold", "0.3", "--out", r]);
    ok(&["match", "--template", t, "--situation", s, "--threshold", "0.3", "--oracle", "--out", oracle.to_str().unwrap()]);
    let (a, b) = (load_report(&report).unwrap(), load_report(&oracle).unwrap());
    assert_eq!(a.method, Method::Search);
    assert_eq!(b.method, Method::Oracle);
    assert_eq!(a.instances, b.instances);
    assert_eq!(a.instances[0].weakest, "IS_TR_1");

    let unfiltered = ok(&["match", "--template", t, "--situation", s, "--threshold", "0.3", "--span-filter", "off", "--knn", "3"]);
    let c: spatial_templates::io::MatchReport = serde_json::from_str(&unfiltered).unwrap();
    assert_eq!(c.instances, a.instances);

    let svg = dir.path().join("r.svg");
    ok(&["render", "--situation", s, "--report", r, "--out", svg.to_str().unwrap()]);
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches(r#"class="glyph""#).count(), 15);
}

#[test]
fn gen_is_deterministic_and_bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = data("division_gen.json");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        ok(&["gen", "--spec", spec.to_str().unwrap(), "--seed", "4", "--out", out.to_str().unwrap()]);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(load_situation(&a).unwrap().objects.len(), 15);

    let csv = dir.path().join("b.csv");
    ok(&["bench", "--n-list", "5,8", "--reps", "1", "--out", csv.to_str().unwrap()]);
    let text = fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("5,0,") && lines[1].contains(",60,"));
    assert!(lines[2].starts_with("8,0,") && lines[2].contains(",336,"));
}

#[test]
fn errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"id\": \"x\", \"objects\": [], \"constraints\": []}").unwrap();
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid template"));
    assert!(!run(&["validate", "/nonexistent/t.json"]).status.success());
}
