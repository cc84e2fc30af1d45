//! Four-level instances from 3-Partition: build one, draw the witness of a
//! solution, and show that out-of-range numbers are refused.

use levelplan::generators::{gen_3partition, realize_3partition_witness, ThreePartition};
use levelplan::oracle::verify_drawing;
use levelplan::{Error, Instance};

fn main() -> Result<(), Error> {
    let params = ThreePartition {
        numbers: vec![4, 4, 5, 5, 4, 4],
        m: 2,
        bound: 13,
    };
    let g = gen_3partition(&params)?;
    println!(
        "{} vertices, {} edges, {} constraints on {} levels",
        g.graph.len(),
        g.graph.edges().len(),
        g.constraints().len(),
        g.graph.height()
    );
    let spec = params.chain_spec();
    println!("{} chains of {} mountains", spec.chains, spec.length);
    for (j, clip) in params.clip_specs().iter().enumerate() {
        println!(
            "clip {j}: size {}, {} vertices",
            clip.size,
            clip.vertex_count()
        );
    }

    let emb = realize_3partition_witness(&params, &[[0, 1, 2], [3, 4, 5]])?;
    let inst = Instance::Constrained(g);
    println!("witness verifies: {}", verify_drawing(&inst, &emb).is_ok());

    match realize_3partition_witness(&params, &[[0, 1, 4], [2, 3, 5]]) {
        Err(e) => println!("wrong triples: {e}"),
        Ok(_) => println!("wrong triples accepted"),
    }
    let bad = ThreePartition {
        numbers: vec![2, 3, 4],
        m: 1,
        bound: 9,
    };
    if let Err(e) = gen_3partition(&bad) {
        println!("out of range: {e}");
    }
    Ok(())
}
