//! Constraint closure on three levels: one input constraint between leaves
//! propagates through shared edges to the upper levels.

use levelplan::clp3::close_constraints;
use levelplan::{ConstrainedLevelGraph, Error, LevelGraph};

fn main() -> Result<(), Error> {
    let mut g = LevelGraph::new(3);
    for (id, l) in [
        ("b1", 1),
        ("b2", 1),
        ("m1", 2),
        ("m2", 2),
        ("m3", 2),
        ("t1", 3),
        ("t2", 3),
    ] {
        g.add_vertex(id, l)?;
    }
    for (a, b) in [
        ("b1", "m1"),
        ("b2", "m2"),
        ("m1", "t1"),
        ("m2", "t2"),
        ("m3", "t2"),
    ] {
        g.add_edge(g.vertex(a).unwrap(), g.vertex(b).unwrap())?;
    }
    let mut c = ConstrainedLevelGraph::new(g);
    let (b1, b2) = (c.graph.vertex("b1").unwrap(), c.graph.vertex("b2").unwrap());
    c.add_constraint(b1, b2)?;

    let closed = close_constraints(&c).map_err(|_| Error::Infeasible)?;
    for (a, b) in closed.pairs() {
        println!(
            "level {}: {} before {}",
            c.graph.level(a),
            c.graph.id(a),
            c.graph.id(b)
        );
    }

    // Adding t2 before t1 contradicts the derived pair and closes to a cycle.
    let (t1, t2) = (c.graph.vertex("t1").unwrap(), c.graph.vertex("t2").unwrap());
    c.add_constraint(t2, t1)?;
    match close_constraints(&c) {
        Ok(_) => println!("unexpectedly consistent"),
        Err(cycle) => println!(
            "cycle between {} and {}",
            c.graph.id(cycle.0),
            c.graph.id(cycle.1)
        ),
    }
    Ok(())
}
