//! Ordered level planarity on a path with two chords: solve, inspect the
//! sweeping sequence, draw and verify.

use levelplan::olp::{realize, solve, OlpOptions};
use levelplan::oracle::verify_drawing;
use levelplan::{Instance, Item, LevelGraph, OrderedLevelGraph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut g = LevelGraph::new(4);
    let v: Vec<_> = (1..=4)
        .map(|l| g.add_vertex(format!("v{l}"), l))
        .collect::<Result<_, _>>()?;
    for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)] {
        g.add_edge(v[a], v[b])?;
    }
    let g = OrderedLevelGraph::new(g, v.iter().map(|&x| vec![x]).collect())?;

    let (seq, stats) = solve(&g, &OlpOptions::default())?;
    println!(
        "feasible; {} separations, {} memo entries",
        seq.separations.len(),
        stats.memo_entries
    );
    for s in &seq.separations {
        println!("  {s:?}");
    }

    let emb = realize(&g, &seq)?;
    verify_drawing(&Instance::Ordered(g), &emb).map_err(|v| format!("{v:?}"))?;
    for (i, level) in emb.levels.iter().enumerate().rev() {
        let items: Vec<String> = level
            .iter()
            .map(|it| match it {
                Item::Vertex(id) => id.clone(),
                Item::Edge(a, b) => format!("({a}-{b})"),
            })
            .collect();
        println!("level {}: {}", i + 1, items.join("  "));
    }
    Ok(())
}
