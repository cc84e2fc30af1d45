//! Solves a small ordered instance and writes the drawing as SVG.

use levelplan::generators::planar_ordered_instance;
use levelplan::olp::{solve_and_draw, OlpOptions};
use levelplan::render_svg;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "drawing.svg".to_string());
    let g = planar_ordered_instance(4, 5, 11)?;
    let emb = solve_and_draw(&g, &OlpOptions::default())?;
    std::fs::write(&path, render_svg(&g.graph, &emb))?;
    println!(
        "wrote {path}: {} vertices, {} edges",
        g.graph.len(),
        g.graph.edges().len()
    );
    Ok(())
}
