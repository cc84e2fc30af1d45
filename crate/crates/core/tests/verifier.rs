use levelplan::oracle::{brute_clp, brute_olp, verify_drawing, Limits, ViolationKind};
use levelplan::{parse_instance, Error, Instance, LevelEmbedding};

fn instance(text: &str) -> Instance {
    parse_instance(text, true).unwrap()
}

fn drawing(text: &str) -> LevelEmbedding {
    serde_json::from_str(text).unwrap()
}

fn kinds(inst: &Instance, emb: &LevelEmbedding) -> Vec<ViolationKind> {
    match verify_drawing(inst, emb) {
        Ok(()) => Vec::new(),
        Err(v) => v.into_iter().map(|x| x.kind).collect(),
    }
}

const TWO_BY_TWO: &str = r#"{"height": 2,
  "vertices": [{"id": "a", "level": 1}, {"id": "b", "level": 1},
               {"id": "c", "level": 2}, {"id": "d", "level": 2}],
  "edges": [["a", "c"], ["b", "d"]],
  "constraints": [{"level": 1, "before": "a", "after": "b"}]}"#;

#[test]
fn accepts_a_planar_drawing() {
    let inst = instance(TWO_BY_TWO);
    let emb = drawing(
        r#"{"levels": {"1": [{"vertex": "a"}, {"vertex": "b"}],
                       "2": [{"vertex": "c"}, {"vertex": "d"}]}}"#,
    );
    assert!(kinds(&inst, &emb).is_empty());
}

#[test]
fn reports_crossings() {
    let inst = instance(TWO_BY_TWO);
    let emb = drawing(
        r#"{"levels": {"1": [{"vertex": "a"}, {"vertex": "b"}],
                       "2": [{"vertex": "d"}, {"vertex": "c"}]}}"#,
    );
    assert_eq!(kinds(&inst, &emb), vec![ViolationKind::EdgeCrossing]);
}

#[test]
fn reports_constraint_violations() {
    let inst = instance(TWO_BY_TWO);
    let emb = drawing(
        r#"{"levels": {"1": [{"vertex": "b"}, {"vertex": "a"}],
                       "2": [{"vertex": "d"}, {"vertex": "c"}]}}"#,
    );
    assert_eq!(kinds(&inst, &emb), vec![ViolationKind::ConstraintViolated]);
}

#[test]
fn reports_rank_mismatches() {
    let inst = instance(
        r#"{"height": 2,
          "vertices": [{"id": "a", "level": 1, "rank": 1}, {"id": "b", "level": 1, "rank": 2},
                       {"id": "c", "level": 2, "rank": 1}],
          "edges": [["a", "c"], ["b", "c"]]}"#,
    );
    let emb = drawing(
        r#"{"levels": {"1": [{"vertex": "b"}, {"vertex": "a"}],
                       "2": [{"vertex": "c"}]}}"#,
    );
    assert_eq!(kinds(&inst, &emb), vec![ViolationKind::RankMismatch]);
}

#[test]
fn reports_structure_mismatches() {
    let inst = instance(TWO_BY_TWO);
    for text in [
        r#"{"levels": {"1": [{"vertex": "a"}], "2": [{"vertex": "c"}, {"vertex": "d"}]}}"#,
        r#"{"levels": {"1": [{"vertex": "a"}, {"vertex": "b"}, {"vertex": "a"}],
                       "2": [{"vertex": "c"}, {"vertex": "d"}]}}"#,
        r#"{"levels": {"1": [{"vertex": "a"}, {"vertex": "b"}],
                       "2": [{"vertex": "c"}, {"vertex": "d"}, {"edge": ["a", "d"]}]}}"#,
        r#"{"levels": {"1": [{"vertex": "a"}, {"vertex": "b"}]}}"#,
    ] {
        let found = kinds(&inst, &drawing(text));
        assert!(!found.is_empty(), "{text}");
        assert!(
            found.iter().all(|&k| k == ViolationKind::StructureMismatch),
            "{text}: {found:?}"
        );
    }
}

#[test]
fn long_edges_need_crossing_points() {
    let inst = instance(
        r#"{"height": 3,
          "vertices": [{"id": "a", "level": 1}, {"id": "b", "level": 2}, {"id": "c", "level": 3}],
          "edges": [["a", "c"], ["a", "b"]]}"#,
    );
    let missing = drawing(
        r#"{"levels": {"1": [{"vertex": "a"}], "2": [{"vertex": "b"}], "3": [{"vertex": "c"}]}}"#,
    );
    assert_eq!(
        kinds(&inst, &missing),
        vec![ViolationKind::StructureMismatch]
    );
    let full = drawing(
        r#"{"levels": {"1": [{"vertex": "a"}],
                       "2": [{"edge": ["a", "c"]}, {"vertex": "b"}],
                       "3": [{"vertex": "c"}]}}"#,
    );
    assert!(kinds(&inst, &full).is_empty());
}

#[test]
fn oracle_respects_its_budget() {
    let inst = instance(TWO_BY_TWO);
    let Instance::Constrained(g) = &inst else {
        unreachable!()
    };
    let tight = Limits {
        max_nodes: 1,
        shuffle: None,
    };
    assert!(matches!(
        brute_clp(g, tight),
        Err(Error::SearchSpaceExceeded { .. })
    ));
    let emb = brute_clp(g, Limits::default()).unwrap();
    assert!(verify_drawing(&inst, &emb).is_ok());
}

#[test]
fn shuffled_oracle_agrees_with_plain_oracle() {
    use levelplan::generators::{random_instance, RandomParams};
    for seed in 0..200 {
        let params = RandomParams {
            height: 3,
            vertices: 7,
            max_width: 3,
            edge_prob: 0.3,
            ordered: seed % 2 == 0,
            ..RandomParams::default()
        };
        let inst = random_instance(&params, seed).unwrap();
        let shuffled = Limits {
            shuffle: Some(seed),
            ..Limits::default()
        };
        let (a, b) = match &inst {
            Instance::Ordered(g) => (brute_olp(g, Limits::default()), brute_olp(g, shuffled)),
            Instance::Constrained(g) => (brute_clp(g, Limits::default()), brute_clp(g, shuffled)),
        };
        assert_eq!(a.is_ok(), b.is_ok(), "seed {seed}");
        if let Ok(emb) = b {
            assert!(verify_drawing(&inst, &emb).is_ok(), "seed {seed}");
        }
    }
}
