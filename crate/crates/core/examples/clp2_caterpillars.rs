//! Two-level constrained planarity: components must be caterpillars, and
//! constraints decide their zigzag direction and left-to-right order.

use levelplan::clp2::{self, caterpillar};
use levelplan::{ConstrainedLevelGraph, Error, LevelGraph};

fn build(constraints: &[(&str, &str)]) -> Result<ConstrainedLevelGraph, Error> {
    let mut g = LevelGraph::new(2);
    for (id, l) in [
        ("a", 1),
        ("b", 1),
        ("c", 1),
        ("x", 2),
        ("y", 2),
        ("p", 1),
        ("q", 2),
    ] {
        g.add_vertex(id, l)?;
    }
    for (a, b) in [("a", "x"), ("b", "x"), ("b", "y"), ("c", "y"), ("p", "q")] {
        g.add_edge(g.vertex(a).unwrap(), g.vertex(b).unwrap())?;
    }
    let mut c = ConstrainedLevelGraph::new(g);
    for &(a, b) in constraints {
        let (a, b) = (c.graph.vertex(a).unwrap(), c.graph.vertex(b).unwrap());
        c.add_constraint(a, b)?;
    }
    Ok(c)
}

fn main() -> Result<(), Error> {
    let g = build(&[])?;
    let main_part: Vec<_> = ["a", "b", "c", "x", "y"]
        .iter()
        .map(|id| g.graph.vertex(id).unwrap())
        .collect();
    let cat = caterpillar(&g.graph, &main_part).expect("a path is a caterpillar");
    let spine: Vec<&str> = cat.spine.iter().map(|&v| g.graph.id(v)).collect();
    println!("spine: {}", spine.join(" - "));

    for constraints in [
        vec![("c", "a")],
        vec![("c", "a"), ("p", "b")],
        vec![("c", "a"), ("p", "b"), ("x", "q")],
        vec![("b", "a"), ("b", "c")],
    ] {
        let g = build(&constraints)?;
        match clp2::solve(&g) {
            Ok(emb) => {
                let lines: Vec<String> = (1..=2).map(|l| emb.vertex_order(l).join(" ")).collect();
                println!(
                    "{constraints:?}: level 1 [{}], level 2 [{}]",
                    lines[0], lines[1]
                );
            }
            Err(e) => println!("{constraints:?}: {e}"),
        }
    }
    Ok(())
}
