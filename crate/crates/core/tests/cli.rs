use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use levelplan::{parse_instance, LevelEmbedding};
use serde_json::Value;

const CHORDS: &str = r#"{
  "height": 4,
  "vertices": [
    {"id": "v1", "level": 1, "rank": 1},
    {"id": "v2", "level": 2, "rank": 1},
    {"id": "v3", "level": 3, "rank": 1},
    {"id": "v4", "level": 4, "rank": 1}
  ],
  "edges": [["v1","v2"],["v2","v3"],["v3","v4"],["v1","v3"],["v2","v4"]]
}"#;

const HEIGHT_FOUR: &str = r#"{
  "height": 4,
  "vertices": [
    {"id": "a", "level": 1}, {"id": "b", "level": 2},
    {"id": "c", "level": 3}, {"id": "d", "level": 4}
  ],
  "edges": [["a","b"],["b","c"],["c","d"]]
}"#;

const CROSSED: &str = r#"{
  "height": 2,
  "vertices": [
    {"id": "a", "level": 1, "rank": 1}, {"id": "b", "level": 1, "rank": 2},
    {"id": "c", "level": 2, "rank": 1}, {"id": "d", "level": 2, "rank": 2}
  ],
  "edges": [["a","d"],["b","c"]]
}"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_levelplan"));
    c.env_remove("LEVELPLAN_MEMO_LIMIT");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| {
        panic!(
            "stderr is not JSON ({e}): {}",
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = file(dir.path(), "chords.json", CHORDS);
    let emb = dir.path().join("emb.json");
    let svg = dir.path().join("emb.svg");
    let o = run(&[
        "solve",
        "--mode",
        "olp",
        "--input",
        s(&inst),
        "--out",
        s(&emb),
        "--svg",
        s(&svg),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let drawing: LevelEmbedding =
        serde_json::from_str(&std::fs::read_to_string(&emb).unwrap()).unwrap();
    assert_eq!(drawing.levels.len(), 4);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));

    let o = run(&["verify", "--instance", s(&inst), "--drawing", s(&emb)]);
    assert_eq!(code(&o), 0);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["ok"], true);
}

#[test]
fn verify_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let inst = file(dir.path(), "chords.json", CHORDS);
    let bad = file(
        dir.path(),
        "bad.json",
        r#"{"levels": {"1": [{"vertex": "v1"}], "2": [{"vertex": "v2"}],
            "3": [{"vertex": "v3"}, {"edge": ["v2","v4"]}], "4": [{"vertex": "v4"}]}}"#,
    );
    let o = run(&["verify", "--instance", s(&inst), "--drawing", s(&bad)]);
    assert_eq!(code(&o), 1);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["ok"], false);
    assert!(!report["violations"].as_array().unwrap().is_empty());
}

#[test]
fn infeasible_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let inst = file(dir.path(), "crossed.json", CROSSED);
    for cmd in ["solve", "oracle"] {
        let o = run(&[cmd, "--input", s(&inst)]);
        assert_eq!(code(&o), 1, "{cmd}");
        assert_eq!(stderr_json(&o)["error"], "Infeasible");
    }
}

#[test]
fn height_four_constrained_is_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let inst = file(dir.path(), "h4.json", HEIGHT_FOUR);
    let o = run(&["solve", "--mode", "clp", "--input", s(&inst)]);
    assert_eq!(code(&o), 2);
    let err = stderr_json(&o);
    assert_eq!(err["error"], "UnsupportedHeight");
    assert!(err["message"].as_str().unwrap().contains("NP-hard"));
}

#[test]
fn olp_mode_needs_ranks() {
    let dir = tempfile::tempdir().unwrap();
    let inst = file(dir.path(), "h4.json", HEIGHT_FOUR);
    let o = run(&["solve", "--mode", "olp", "--input", s(&inst)]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_json(&o)["error"], "ParameterInvalid");
}

#[test]
fn usage_errors_are_json() {
    for args in [
        &["frobnicate"][..],
        &["solve"][..],
        &["solve", "--input", "x.json", "--jobs", "0"][..],
        &["gen", "mcis", "--params", "{}", "--select", "a"][..],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert_eq!(stderr_json(&o)["error"], "Usage", "{args:?}");
    }
    let o = run(&["solve", "--input", "/nonexistent/file.json"]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_json(&o)["error"], "Io");
}

#[test]
fn memo_limit_breach_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let inst = file(dir.path(), "chords.json", CHORDS);
    let o = bin()
        .args(["solve", "--input", s(&inst)])
        .env("LEVELPLAN_MEMO_LIMIT", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    assert_eq!(stderr_json(&o)["error"], "MemoLimit");
    let o = bin()
        .args(["solve", "--input", s(&inst)])
        .env("LEVELPLAN_MEMO_LIMIT", "lots")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn random_generation_depends_only_on_seed() {
    let a = run(&["gen", "random", "--seed", "7", "--ordered"]);
    let b = run(&["gen", "random", "--seed", "7", "--ordered"]);
    let c = run(&["gen", "random", "--seed", "8", "--ordered"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    parse_instance(std::str::from_utf8(&a.stdout).unwrap(), false).unwrap();
}

#[test]
fn jobs_do_not_change_the_output() {
    let dir = tempfile::tempdir().unwrap();
    let mut compared = 0;
    for seed in 0..40 {
        let g = run(&[
            "gen",
            "random",
            "--seed",
            &seed.to_string(),
            "--height",
            "3",
            "--vertices",
            "8",
            "--edge-prob",
            "0.4",
        ]);
        let inst = file(
            dir.path(),
            "r.json",
            std::str::from_utf8(&g.stdout).unwrap(),
        );
        let one = run(&["solve", "--mode", "clp", "--input", s(&inst), "--jobs", "1"]);
        let four = run(&["solve", "--mode", "clp", "--input", s(&inst), "--jobs", "4"]);
        assert_eq!(code(&one), code(&four), "seed {seed}");
        assert_eq!(one.stdout, four.stdout, "seed {seed}");
        compared += (code(&one) == 0) as usize;
    }
    assert!(compared > 0);
}

#[test]
fn partition_generator_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("p.json");
    let drawing = dir.path().join("d.json");
    let o = run(&[
        "gen",
        "3partition",
        "--params",
        r#"{"numbers":[3,3,3,3,3,3],"m":2,"B":9}"#,
        "--out",
        s(&inst),
        "--triples",
        "[[0,1,2],[3,4,5]]",
        "--drawing",
        s(&drawing),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["verify", "--instance", s(&inst), "--drawing", s(&drawing)]);
    assert_eq!(code(&o), 0);

    let o = run(&[
        "gen",
        "3partition",
        "--params",
        r#"{"numbers":[2,3,4],"m":1,"B":9}"#,
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_json(&o)["error"], "ParameterInvalid");
}

#[test]
fn mcis_generator_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let params = file(
        dir.path(),
        "g.json",
        r#"{"edges":[["a1","b1"]],"colors":{"a1":1,"a2":1,"b1":2,"b2":2},"k":2}"#,
    );
    let inst = dir.path().join("m.json");
    let drawing = dir.path().join("d.json");
    let o = run(&[
        "gen",
        "mcis",
        "--params",
        s(&params),
        "--out",
        s(&inst),
        "--select",
        "a2,b1",
        "--drawing",
        s(&drawing),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let parsed = parse_instance(&std::fs::read_to_string(&inst).unwrap(), false).unwrap();
    assert_eq!(parsed.graph().height(), 43);
    let o = run(&["verify", "--instance", s(&inst), "--drawing", s(&drawing)]);
    assert_eq!(code(&o), 0);

    let o = run(&[
        "gen",
        "mcis",
        "--params",
        s(&params),
        "--select",
        "a1,b1",
        "--drawing",
        s(&drawing),
    ]);
    assert_eq!(code(&o), 2);
    assert_eq!(stderr_json(&o)["error"], "WitnessInvalid");
}
