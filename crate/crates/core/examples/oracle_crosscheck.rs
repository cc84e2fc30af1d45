//! Cross-checks every exact solver against the brute-force oracle on random
//! instances and verifies all drawings.

use levelplan::generators::{random_instance, RandomParams};
use levelplan::olp::{solve_and_draw, OlpOptions};
use levelplan::oracle::{brute_clp, brute_olp, verify_drawing, Limits};
use levelplan::{clp2, clp3, Instance};

fn main() -> Result<(), levelplan::Error> {
    let mut tally = [[0usize; 2]; 3];
    for seed in 0..300u64 {
        let height = 2 + (seed % 3) as usize;
        let params = RandomParams {
            height,
            vertices: 3 * height - 1,
            max_width: 3,
            edge_prob: if height == 4 { 0.15 } else { 0.35 },
            ordered: height == 4,
            ..RandomParams::default()
        };
        let inst = random_instance(&params, seed)?;
        let (solver, oracle) = match &inst {
            Instance::Ordered(g) => (
                solve_and_draw(g, &OlpOptions::default()),
                brute_olp(g, Limits::default()),
            ),
            Instance::Constrained(g) if height == 2 => {
                (clp2::solve(g), brute_clp(g, Limits::default()))
            }
            Instance::Constrained(g) => (clp3::solve(g), brute_clp(g, Limits::default())),
        };
        assert_eq!(solver.is_ok(), oracle.is_ok(), "seed {seed}");
        for emb in solver.iter().chain(oracle.iter()) {
            assert!(verify_drawing(&inst, emb).is_ok(), "seed {seed}");
        }
        tally[height - 2][solver.is_ok() as usize] += 1;
    }
    for (name, [no, yes]) in ["two levels", "three levels", "ordered, four levels"]
        .iter()
        .zip(tally)
    {
        println!("{name}: {yes} feasible, {no} infeasible, all agree");
    }
    Ok(())
}
