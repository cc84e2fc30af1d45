//! Three-level constrained planarity on random instances, with the branch
//! trace of the search and a check that worker threads do not change results.

use levelplan::clp3::{solve_traced, Clp3Options};
use levelplan::generators::{random_instance, RandomParams};
use levelplan::{Error, Instance};

fn main() -> Result<(), Error> {
    let params = RandomParams {
        height: 3,
        vertices: 8,
        max_width: 4,
        edge_prob: 0.4,
        constraint_prob: 0.2,
        ..RandomParams::default()
    };
    for seed in 0..6 {
        let Instance::Constrained(g) = random_instance(&params, seed)? else {
            unreachable!()
        };
        let traced = Clp3Options {
            jobs: 1,
            trace: true,
        };
        let (result, trace) = solve_traced(&g, &traced);
        let parallel = solve_traced(
            &g,
            &Clp3Options {
                jobs: 4,
                trace: false,
            },
        )
        .0;
        assert_eq!(result, parallel);
        let verdict = match &result {
            Ok(emb) => format!("feasible, level 2 = [{}]", emb.vertex_order(2).join(" ")),
            Err(e) => e.to_string(),
        };
        println!("seed {seed}: {verdict}");
        for t in trace.iter().take(4) {
            let outcome = match t.stage {
                None => "accepted".to_string(),
                Some(stage) => format!("rejected at {stage:?}: {}", t.reason),
            };
            println!(
                "  part {} branch {} ({} .. {}, {} hooks): {outcome}",
                t.part, t.branch, t.s, t.t, t.hooks
            );
        }
    }
    Ok(())
}
