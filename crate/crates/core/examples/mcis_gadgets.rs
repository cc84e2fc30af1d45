//! Plug and socket gadgets, and the ordered instance built from a colored
//! graph: every independent selection yields a verified drawing.

use levelplan::generators::{
    color_classes, fits, gen_mcis, mcis_layout, realize_mcis_witness, McisInstance, PlugSpec,
    SocketSpec,
};
use levelplan::oracle::verify_drawing;
use levelplan::{Error, Instance};

fn main() -> Result<(), Error> {
    let socket = SocketSpec::new([5, 9, 9, 13])?;
    for levels in [[1, 6, 12, 17], [2, 8, 10, 16], [4, 4, 14, 14]] {
        let plug = PlugSpec::new(levels)?;
        println!(
            "plug {levels:?} in socket {:?}: {}",
            socket.levels,
            fits(&plug, &socket, (1, 17))
        );
    }

    let inst: McisInstance = serde_json::from_str(
        r#"{"edges": [["a1","b1"], ["b2","c1"]],
            "colors": {"a1": 1, "a2": 1, "b1": 2, "b2": 2, "c1": 3, "c2": 3},
            "k": 3}"#,
    )
    .expect("valid JSON");
    let layout = mcis_layout(&inst)?;
    println!(
        "height {}, {} walls, {} edge blocks",
        layout.height, layout.walls, layout.edges
    );
    println!("level types: {}", layout.level_types());
    let g = Instance::Ordered(gen_mcis(&inst)?);
    println!("{} vertices", g.graph().len());

    let classes = color_classes(&inst)?;
    for a in &classes[0] {
        for b in &classes[1] {
            for c in &classes[2] {
                let pick = vec![a.clone(), b.clone(), c.clone()];
                let verdict = match realize_mcis_witness(&inst, &pick) {
                    Ok(emb) => format!("drawn, verifies: {}", verify_drawing(&g, &emb).is_ok()),
                    Err(e) => e.to_string(),
                };
                println!("{pick:?}: {verdict}");
            }
        }
    }
    Ok(())
}
