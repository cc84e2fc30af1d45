use std::collections::BTreeMap;

use levelplan::generators::{
    color_classes, gen_mcis, mcis_layout, realize_mcis_witness, McisInstance,
};
use levelplan::oracle::verify_drawing;
use levelplan::{Error, Instance};

fn instance(colors: &[(&str, usize)], edges: &[(&str, &str)], k: usize) -> McisInstance {
    McisInstance {
        edges: edges
            .iter()
            .map(|&(a, b)| (a.to_string(), b.to_string()))
            .collect(),
        colors: colors
            .iter()
            .map(|&(v, c)| (v.to_string(), c))
            .collect::<BTreeMap<_, _>>(),
        k,
    }
}

fn selections(classes: &[Vec<String>]) -> Vec<Vec<String>> {
    classes.iter().fold(vec![Vec::new()], |acc, class| {
        acc.iter()
            .flat_map(|s| {
                class.iter().map(move |v| {
                    let mut s = s.clone();
                    s.push(v.clone());
                    s
                })
            })
            .collect()
    })
}

/// Every multicolored selection verifies exactly when it is independent.
fn check_all(inst: &McisInstance) -> usize {
    let g = Instance::Ordered(gen_mcis(inst).unwrap());
    let classes = color_classes(inst).unwrap();
    let adjacent = |a: &String, b: &String| {
        inst.edges
            .iter()
            .any(|(u, v)| (u == a && v == b) || (u == b && v == a))
    };
    let mut independent = 0;
    for sel in selections(&classes) {
        let padded = sel.iter().any(|v| !inst.colors.contains_key(v));
        let ok = !padded
            && sel
                .iter()
                .enumerate()
                .all(|(i, a)| sel[i + 1..].iter().all(|b| !adjacent(a, b)));
        if padded {
            continue;
        }
        match realize_mcis_witness(inst, &sel) {
            Ok(emb) => {
                assert!(ok, "{sel:?} is not independent but was drawn");
                if let Err(v) = verify_drawing(&g, &emb) {
                    panic!("{sel:?}: {:?}", &v[..v.len().min(5)]);
                }
                independent += 1;
            }
            Err(Error::WitnessInvalid(_)) => assert!(!ok, "{sel:?} is independent but rejected"),
            Err(e) => panic!("{sel:?}: {e}"),
        }
    }
    independent
}

#[test]
fn two_colors_one_edge() {
    let inst = instance(
        &[("a1", 1), ("a2", 1), ("b1", 2), ("b2", 2)],
        &[("a1", "b1")],
        2,
    );
    assert_eq!(check_all(&inst), 3);
}

#[test]
fn three_colors_with_padding() {
    let inst = instance(
        &[("a1", 1), ("a2", 1), ("b1", 2), ("c1", 3), ("c2", 3)],
        &[("a1", "b1"), ("b1", "c2")],
        3,
    );
    let lay = mcis_layout(&inst).unwrap();
    assert_eq!(lay.height, 26 * 3 - 9);
    assert_eq!(lay.class_size, 2);
    assert_eq!(check_all(&inst), 1);
}

#[test]
fn three_colors_skipping_a_band() {
    let inst = instance(
        &[
            ("a1", 1),
            ("a2", 1),
            ("a3", 1),
            ("b1", 2),
            ("b2", 2),
            ("c1", 3),
            ("c2", 3),
        ],
        &[("c1", "a1"), ("a2", "c2"), ("a3", "b2"), ("b1", "c1")],
        3,
    );
    assert_eq!(check_all(&inst), 4);
}

#[test]
fn no_independent_set_means_no_witness() {
    let inst = instance(
        &[("a1", 1), ("a2", 1), ("b1", 2), ("b2", 2)],
        &[("a1", "b1"), ("a1", "b2"), ("a2", "b1"), ("a2", "b2")],
        2,
    );
    assert_eq!(check_all(&inst), 0);
}

#[test]
fn level_types_follow_vertex_names() {
    let inst = instance(
        &[("a1", 1), ("a2", 1), ("b1", 2), ("b2", 2), ("c1", 3)],
        &[("a1", "c1"), ("a2", "b2")],
        3,
    );
    let lay = mcis_layout(&inst).unwrap();
    let types: Vec<char> = lay.level_types().chars().collect();
    let g = gen_mcis(&inst).unwrap();
    let graph = &g.graph;
    let right_wall = format!("w{}@", lay.columns);
    for v in graph.vertices() {
        let id = graph.id(v);
        let ty = types[graph.level(v) - 1];
        let kind = id.split('.').nth(1).unwrap_or("");
        let expected: &[char] = if id.starts_with("w0@") || id.starts_with(&right_wall) {
            continue;
        } else if id.starts_with('w') {
            &['R']
        } else if kind.starts_with("hi") {
            &['H', 'R']
        } else if kind.starts_with("co") {
            &['C', 'R']
        } else if kind.starts_with("pt") {
            &['P']
        } else if kind.starts_with('a') {
            &['A']
        } else if kind.starts_with('b') {
            &['B']
        } else if kind.starts_with('s') {
            &['R']
        } else {
            continue;
        };
        // Plugs touch their own levels only; the inner vertices of
        // high and color plugs never land on rigid levels either.
        assert!(expected.contains(&ty), "{id} on a {ty} level");
        if expected.len() == 2 {
            assert_ne!(ty, 'R', "{id} on a rigid level");
        }
    }
    assert!(graph
        .vertices()
        .any(|v| graph.id(v).starts_with(&right_wall)));
}

#[test]
fn scaffold_is_proper_over_rigid_levels() {
    let inst = instance(
        &[("a1", 1), ("a2", 1), ("b1", 2), ("c1", 3), ("c2", 3)],
        &[("a1", "b1"), ("a2", "c1")],
        3,
    );
    let lay = mcis_layout(&inst).unwrap();
    let rigid = lay.rigid_levels();
    let g = gen_mcis(&inst).unwrap();
    let graph = &g.graph;
    let outer = |id: &str| id.starts_with("w0@") || id.starts_with(&format!("w{}@", lay.columns));
    let scaffold = |id: &str| id.starts_with('w') || id.contains(".s");
    for &(u, v) in graph.edges() {
        let (a, b) = (graph.id(u), graph.id(v));
        if !scaffold(a) || !scaffold(b) || outer(a) || outer(b) {
            continue;
        }
        let pos = |x| rigid.iter().position(|&l| l == graph.level(x)).unwrap();
        assert_eq!(pos(v), pos(u) + 1, "{a} - {b} skips a rigid level");
    }
}

#[test]
fn bad_parameters_are_rejected() {
    let one_color = instance(&[("a", 1)], &[], 1);
    assert!(matches!(
        gen_mcis(&one_color),
        Err(Error::ParameterInvalid(_))
    ));
    let bad_color = instance(&[("a", 1), ("b", 3)], &[], 2);
    assert!(matches!(
        gen_mcis(&bad_color),
        Err(Error::ParameterInvalid(_))
    ));
    let dangling = instance(&[("a", 1), ("b", 2)], &[("a", "z")], 2);
    assert!(matches!(
        gen_mcis(&dangling),
        Err(Error::ParameterInvalid(_))
    ));
}

#[test]
fn json_round_trip() {
    let text = r#"{"edges":[["u","v"]],"colors":{"u":1,"v":2,"w":2},"k":2}"#;
    let inst: McisInstance = serde_json::from_str(text).unwrap();
    assert_eq!(inst.edges, vec![("u".to_string(), "v".to_string())]);
    assert_eq!(mcis_layout(&inst).unwrap().height, 43);
}
