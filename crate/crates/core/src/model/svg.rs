use std::fmt::Write;

use super::{LevelEmbedding, LevelGraph};

const STEP_X: f64 = 60.0;
const STEP_Y: f64 = 80.0;
const MARGIN: f64 = 40.0;

/// Renders an embedding as SVG: one horizontal line per level, vertices as
/// labeled disks and edges as y-monotone polylines through their markers.
/// Level 1 is drawn at the bottom.
pub fn render_svg(graph: &LevelGraph, emb: &LevelEmbedding) -> String {
    let emb = match &emb.coordinates {
        Some(_) => emb.clone(),
        None => emb.clone().with_coordinates(graph),
    };
    let coords = emb.coordinates.as_ref().expect("attached");
    let height = emb.height().max(1);
    let max_x = coords
        .vertices
        .values()
        .chain(coords.edges.iter().flat_map(|e| e.points.iter()))
        .map(|p| p.0)
        .fold(0.0, f64::max);
    let width = max_x * STEP_X + 2.0 * MARGIN;
    let total_y = (height - 1) as f64 * STEP_Y + 2.0 * MARGIN;
    let px = |x: f64| MARGIN + x * STEP_X;
    let py = |y: f64| MARGIN + (height as f64 - y) * STEP_Y;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{total_y}" viewBox="0 0 {width} {total_y}">"#
    )
    .unwrap();
    for level in 1..=emb.height() {
        let y = py(level as f64);
        writeln!(
            out,
            r##"<line x1="0" y1="{y}" x2="{width}" y2="{y}" stroke="#ccc" stroke-dasharray="4 4"/>"##
        )
        .unwrap();
    }
    for edge in &coords.edges {
        let pts: Vec<String> = edge
            .points
            .iter()
            .map(|&(x, y)| format!("{},{}", px(x), py(y)))
            .collect();
        writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="#333" stroke-width="1.5"/>"##,
            pts.join(" ")
        )
        .unwrap();
    }
    for (id, &(x, y)) in &coords.vertices {
        let (cx, cy) = (px(x), py(y));
        writeln!(
            out,
            r##"<circle cx="{cx}" cy="{cy}" r="9" fill="#fff" stroke="#1f5fa8" stroke-width="2"/>"##
        )
        .unwrap();
        writeln!(
            out,
            r#"<text x="{cx}" y="{}" font-size="10" text-anchor="middle" font-family="monospace">{}</text>"#,
            cy - 13.0,
            escape(id)
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
