use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn girth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_girth")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn map_arg(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

#[test]
fn curve_examples() {
    let o = girth(&["curve", "--rank", "2", "--word", "abAB"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "girth=2\n");

    let o = girth(&["curve", "--rank", "2", "--word", "abbb"]);
    assert_eq!(stdout(&o), "girth=0\n");

    let o = girth(&["curve", "--rank", "2", "--word", "abAB", "--oracle"]);
    assert_eq!(stdout(&o), "girth=2\n");
}

#[test]
fn curve_trace_lists_steps_and_witness() {
    let o = girth(&["curve", "--rank", "2", "--word", "abbb", "--trace"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "girth=0");
    assert!(lines[1].starts_with("step 1: halfdisc="), "{text}");
    assert!(lines[1].ends_with("complexity 4→3"), "{text}");
    assert!(lines.last().unwrap().starts_with("witness=B:"), "{text}");
}

#[test]
fn curve_exit_codes() {
    assert_eq!(girth(&["curve", "--rank", "2", "--word", "abBA"]).status.code(), Some(2));
    let o = girth(&["curve", "--rank", "2", "--word", "abababAB", "--oracle", "--budget", "2"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(girth(&["curve", "--rank", "2", "--word", "abc"]).status.code(), Some(64));
    assert_eq!(girth(&["curve", "--word", "ab"]).status.code(), Some(64));
    assert_eq!(girth(&["bogus"]).status.code(), Some(64));
    assert_eq!(girth(&["curve", "--rank", "2", "--word", "ab", "--budget", "0"]).status.code(), Some(64));
}

#[test]
fn surface_reports_bound_or_failure() {
    let m = map_arg("annulus_abAB.json");
    let o = girth(&["surface", "--map", &m]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("girth<=2 curve="), "{text}");
    assert!(text.contains(" disc=f"), "{text}");

    let o = girth(&["surface", "--map", &m, "--max", "1"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(stdout(&o), "girth>1\n");

    let o = girth(&["surface", "--map", &m, "--oracle"]);
    assert!(stdout(&o).starts_with("girth<=2 curve="));
    let o = girth(&["surface", "--map", &m, "--oracle", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(3));

    assert_eq!(girth(&["surface", "--map", "/nonexistent.json"]).status.code(), Some(64));
}

#[test]
fn map_validate_prints_diagnostics() {
    let o = girth(&["map", "validate", "--map", &map_arg("annulus.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("valid genus=2 chi=0"));

    let dir = std::env::temp_dir().join(format!("girth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"genus\": 0, \"countries\": [], \"gluing\": [], \"arcs\": [], \"faces\": []}").unwrap();
    let o = girth(&["map", "validate", "--map", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("invalid: "));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_lines_parse() {
    let o = girth(&["--format", "json", "curve", "--rank", "2", "--word", "abAB", "--trace"]);
    for line in stdout(&o).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["kind"].is_string());
    }
    let o = girth(&["surface", "--map", &map_arg("dual_graph.json"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["bound"], 0);
}

#[test]
fn corpus_is_deterministic_and_seeded() {
    let dir = fixtures();
    let dir = dir.to_str().unwrap();
    let a = Command::new(env!("CARGO_BIN_EXE_girth"))
        .args(["corpus", "--dir", dir, "--seed", "11"])
        .env("GIRTH_THREADS", "1")
        .output()
        .unwrap();
    let b = girth(&["corpus", "--dir", dir, "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(stdout(&a), stdout(&b));
    let text = stdout(&a);
    assert!(text.starts_with(&format!("corpus dir={dir} seed=11 cases=")));
    assert!(text.lines().last().unwrap().ends_with("fail=0"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn corpus_reports_counterexamples() {
    let dir = std::env::temp_dir().join(format!("girth-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("w.words"), "2 abAB\n2 abBA\n").unwrap();
    let o = girth(&["corpus", "--dir", dir.to_str().unwrap(), "--timings"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("case 0 word w.words:1 PASS girth=2"), "{text}");
    assert!(text.contains("case 1 word w.words:2 FAIL abBA: word is trivial"), "{text}");
    assert!(text.lines().all(|l| l.starts_with("corpus") || l.contains(" ms=")), "{text}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn empty_corpus_is_an_empty_report() {
    let dir = std::env::temp_dir().join(format!("girth-empty-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let o = girth(&["corpus", "--dir", dir.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), format!("corpus dir={} seed=5 cases=0\nsummary cases=0 pass=0 fail=0\n", dir.display()));
    std::fs::remove_dir_all(&dir).unwrap();

    let o = Command::new(env!("CARGO_BIN_EXE_girth"))
        .args(["corpus", "--dir", "."])
        .env("GIRTH_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(64));
}
