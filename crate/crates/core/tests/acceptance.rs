//! Acceptance suite: one PASS/FAIL line per criterion.

use std::cell::Cell;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use levelplan::clp3::close_constraints;
use levelplan::generators::{
    double_link_admissible, fits, gen_3partition, gen_mcis, link_instance, mcis_layout,
    planar_ordered_instance, random_instance, realize_3partition_witness, realize_mcis_witness,
    McisInstance, PlugSpec, RandomParams, SocketSpec, ThreePartition, COLLISION_BAND, COLOR_BAND,
};
use levelplan::olp::{solve, solve_and_draw, OlpOptions};
use levelplan::oracle::{brute_clp, brute_olp, verify_drawing, Limits};
use levelplan::{
    clp2, clp3, instance_to_json, ConstrainedLevelGraph, Error, Instance, Item, LevelEmbedding,
    LevelGraph, OrderedLevelGraph,
};

thread_local! {
    static VERIFIED: Cell<usize> = const { Cell::new(0) };
}

/// Every emitted drawing goes through here.
fn check_drawing(inst: &Instance, emb: &LevelEmbedding, what: &str) {
    if let Err(v) = verify_drawing(inst, emb) {
        panic!(
            "{what}: drawing has {} violations, first {:?}\n{}",
            v.len(),
            v[0],
            instance_to_json(inst)
        );
    }
    VERIFIED.with(|c| c.set(c.get() + 1));
}

/// Compares a solver verdict with the oracle verdict and checks drawings.
fn agree(
    inst: &Instance,
    solver: levelplan::Result<LevelEmbedding>,
    oracle: levelplan::Result<LevelEmbedding>,
    what: &str,
) -> bool {
    for (name, r) in [("solver", &solver), ("oracle", &oracle)] {
        match r {
            Ok(emb) => check_drawing(inst, emb, &format!("{what} ({name})")),
            Err(Error::Infeasible) => {}
            Err(e) => panic!("{what} ({name}): {e}"),
        }
    }
    assert_eq!(
        solver.is_ok(),
        oracle.is_ok(),
        "{what}: solver and oracle disagree\n{}",
        instance_to_json(inst)
    );
    solver.is_ok()
}

fn within(start: Instant, limit: Duration) -> String {
    let took = start.elapsed();
    assert!(took < limit, "took {took:.1?}, limit {limit:?}");
    format!("{took:.1?}")
}

fn olp_oracle_equivalence() -> String {
    let start = Instant::now();
    let (mut total, mut feasible) = (0, 0);
    for seed in 0..1200u64 {
        let height = 1 + (seed % 4) as usize;
        let params = RandomParams {
            height,
            vertices: 8.min(height + (seed / 4) as usize % (2 * height + 1)),
            max_width: 3,
            edge_prob: 0.1 + (seed % 7) as f64 * 0.1,
            ordered: true,
            ..RandomParams::default()
        };
        let inst = random_instance(&params, seed).unwrap();
        let Instance::Ordered(g) = &inst else {
            unreachable!()
        };
        let solver = solve_and_draw(g, &OlpOptions::default());
        let oracle = brute_olp(g, Limits::default());
        feasible += agree(&inst, solver, oracle, &format!("seed {seed}")) as usize;
        total += 1;
    }
    let took = within(start, Duration::from_secs(300));
    format!("{total} instances, {feasible} feasible, all agree, {took}")
}

fn chord_fixture() -> String {
    let mut g = LevelGraph::new(4);
    let v: Vec<_> = (1..=4)
        .map(|l| g.add_vertex(format!("v{l}"), l).unwrap())
        .collect();
    for (a, b) in [(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)] {
        g.add_edge(v[a], v[b]).unwrap();
    }
    let order = v.iter().map(|&x| vec![x]).collect();
    let g = OrderedLevelGraph::new(g, order).unwrap();
    let emb = solve_and_draw(&g, &OlpOptions::default()).expect("fixture is feasible");
    check_drawing(&Instance::Ordered(g), &emb, "chord fixture");
    let left_of = |level: usize, chord: (&str, &str), path_vertex: &str| {
        let items = &emb.levels[level - 1];
        let pos = |it: &Item| items.iter().position(|x| x == it).unwrap();
        pos(&Item::Edge(chord.0.into(), chord.1.into())) < pos(&Item::Vertex(path_vertex.into()))
    };
    let left = [
        left_of(2, ("v1", "v3"), "v2"),
        left_of(3, ("v2", "v4"), "v3"),
    ];
    assert_eq!(
        left.iter().filter(|&&l| l).count(),
        1,
        "chords left of the path: {left:?}"
    );
    let which = if left[0] { "v1v3" } else { "v2v4" };
    format!("feasible, verified, only {which} lies left of the path")
}

fn clp2_oracle_equivalence() -> String {
    let start = Instant::now();
    let (mut total, mut feasible) = (0, 0);
    for seed in 0..1200u64 {
        let params = RandomParams {
            height: 2,
            vertices: 2 + (seed % 7) as usize,
            max_width: 7,
            edge_prob: 0.15 + (seed / 7 % 6) as f64 * 0.1,
            constraint_prob: (seed % 6) as f64 * 0.1,
            acyclic: seed % 7 != 0,
            ..RandomParams::default()
        };
        let inst = random_instance(&params, seed).unwrap();
        let Instance::Constrained(g) = &inst else {
            unreachable!()
        };
        let solver = clp2::solve(g);
        let oracle = brute_clp(g, Limits::default());
        feasible += agree(&inst, solver, oracle, &format!("seed {seed}")) as usize;
        total += 1;
    }
    let took = within(start, Duration::from_secs(120));
    format!("{total} instances, {feasible} feasible, all agree, {took}")
}

fn clp3_oracle_equivalence() -> String {
    let start = Instant::now();
    let (mut total, mut feasible) = (0, 0);
    for seed in 0..600u64 {
        let params = RandomParams {
            height: 3,
            // Odd seeds are denser and more often infeasible.
            vertices: if seed % 2 == 0 {
                3 + (seed / 2 % 6) as usize
            } else {
                6 + (seed / 2 % 3) as usize
            },
            max_width: 4,
            edge_prob: if seed % 2 == 0 {
                0.25 + (seed / 2 % 4) as f64 * 0.1
            } else {
                0.35 + (seed / 2 % 5) as f64 * 0.1
            },
            constraint_prob: (seed % 5) as f64 * 0.1,
            proper: seed % 3 != 0,
            ..RandomParams::default()
        };
        let inst = random_instance(&params, seed).unwrap();
        let Instance::Constrained(g) = &inst else {
            unreachable!()
        };
        let solver = clp3::solve(g);
        let oracle = brute_clp(g, Limits::default());
        feasible += agree(&inst, solver, oracle, &format!("seed {seed}")) as usize;
        total += 1;
    }
    let took = within(start, Duration::from_secs(600));
    format!("{total} instances, {feasible} feasible, all agree, {took}")
}

fn verifier_soundness() -> String {
    let count = VERIFIED.with(Cell::get);
    assert!(count > 0, "no drawings were checked");
    format!("{count} drawings from solvers, oracles and witness builders, zero violations")
}

fn closure_fixture() -> String {
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
        g.add_vertex(id, l).unwrap();
    }
    for (a, b) in [
        ("b1", "m1"),
        ("b2", "m2"),
        ("m1", "t1"),
        ("m2", "t2"),
        ("m3", "t2"),
    ] {
        g.add_edge(g.vertex(a).unwrap(), g.vertex(b).unwrap())
            .unwrap();
    }
    let mut c = ConstrainedLevelGraph::new(g);
    let (b1, b2) = (c.graph.vertex("b1").unwrap(), c.graph.vertex("b2").unwrap());
    c.add_constraint(b1, b2).unwrap();
    let closed = close_constraints(&c).expect("no cycle");
    let mut got: Vec<(String, String)> = closed
        .pairs()
        .into_iter()
        .map(|(a, b)| (c.graph.id(a).to_string(), c.graph.id(b).to_string()))
        .collect();
    got.sort();
    let want: Vec<(String, String)> = [("b1", "b2"), ("m1", "m2"), ("m1", "m3"), ("t1", "t2")]
        .iter()
        .map(|&(a, b)| (a.to_string(), b.to_string()))
        .collect();
    assert_eq!(got, want);
    "closure is exactly b1<b2, m1<m2, m1<m3, t1<t2".into()
}

fn three_partition_generator() -> String {
    let params = ThreePartition {
        numbers: vec![3; 6],
        m: 2,
        bound: 9,
    };
    let g = gen_3partition(&params).unwrap();
    assert_eq!(g.graph.height(), 4);
    let ids: Vec<&str> = g.graph.vertices().map(|v| g.graph.id(v)).collect();
    let chains: Vec<usize> = (0..params.m)
        .map(|c| {
            let prefix = format!("m{c}.");
            ids.iter()
                .filter(|id| id.starts_with(&prefix) && id.ends_with(".c"))
                .count()
        })
        .collect();
    assert_eq!(chains, vec![9, 9], "mountains per chain");
    assert!(
        !ids.iter()
            .any(|id| id.starts_with(&format!("m{}.", params.m))),
        "extra chain"
    );
    let clips: Vec<usize> = (0..)
        .map(|j| {
            let prefix = format!("k{j}.");
            ids.iter().filter(|id| id.starts_with(&prefix)).count()
        })
        .take_while(|&n| n > 0)
        .collect();
    assert_eq!(clips, vec![15; 6], "clip sizes");
    let inst = Instance::Constrained(g);
    let emb = realize_3partition_witness(&params, &[[0, 1, 2], [3, 4, 5]]).unwrap();
    check_drawing(&inst, &emb, "3-partition witness");
    // Sums are right in every case; one element sits on or beyond a bound.
    for (numbers, m, bound) in [
        (vec![2, 3, 4, 3, 3, 3], 2, 9),
        (vec![2, 3, 3], 1, 8),
        (vec![5, 3, 3, 3, 3, 3], 2, 10),
    ] {
        let bad = ThreePartition { numbers, m, bound };
        assert!(
            matches!(gen_3partition(&bad), Err(Error::ParameterInvalid(_))),
            "accepted {:?} with B = {bound}",
            bad.numbers
        );
    }
    "height 4, 2 chains of 9 mountains, 6 clips of 15 vertices, witness verified, bounds enforced"
        .into()
}

fn mcis_generator() -> String {
    let inst: McisInstance = serde_json::from_str(
        r#"{"edges":[["a1","b1"]],"colors":{"a1":1,"a2":1,"b1":2,"b2":2},"k":2}"#,
    )
    .unwrap();
    let layout = mcis_layout(&inst).unwrap();
    assert_eq!(layout.height, 43);
    assert_eq!(COLOR_BAND, "HCRPRHRCRCRHRPRCH");
    assert_eq!(COLLISION_BAND, "ARABRBARB");
    let types = layout.level_types();
    assert_eq!(
        types, "HCRPRHRCRCRHRPRCHARABRBARBHCRPRHRCRCRHRPRCH",
        "band layout"
    );
    let g = gen_mcis(&inst).unwrap();
    assert_eq!(g.graph.height(), 43);
    let ordered = Instance::Ordered(g);
    let emb = realize_mcis_witness(&inst, &["a2".into(), "b1".into()]).unwrap();
    check_drawing(&ordered, &emb, "independent selection");
    let err = realize_mcis_witness(&inst, &["a1".into(), "b1".into()]).unwrap_err();
    assert!(matches!(err, Error::WitnessInvalid(_)), "{err}");
    "height 43, bands match, independent set verified, adjacent pair rejected".into()
}

fn tuples(height: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 1..=height {
        for b in a..=height {
            for c in b..=height {
                for d in c..=height {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

fn drawable(socket: &SocketSpec, plugs: &[PlugSpec], height: usize) -> bool {
    let g = link_instance(socket, plugs, height).unwrap();
    match brute_olp(&g, Limits::default()) {
        Ok(emb) => {
            check_drawing(&Instance::Ordered(g), &emb, "gadget micro-instance");
            true
        }
        Err(Error::Infeasible) => false,
        Err(e) => panic!("oracle: {e}"),
    }
}

fn gadget_predicates() -> String {
    let (mut one, mut one_low, mut two) = (0, 0, 0);
    for height in 3..=7 {
        let sockets: Vec<SocketSpec> = tuples(height)
            .into_iter()
            .filter_map(|t| SocketSpec::new(t).ok())
            .collect();
        let plugs: Vec<PlugSpec> = tuples(height)
            .into_iter()
            .filter_map(|t| PlugSpec::new(t).ok())
            .collect();
        for s in &sockets {
            for p in plugs
                .iter()
                .filter(|p| disjoint(&s.level_set(), &p.level_set()))
            {
                assert_eq!(
                    drawable(s, &[*p], height),
                    fits(p, s, (1, height)),
                    "socket {:?} plug {:?}",
                    s.levels,
                    p.levels
                );
                one += 1;
                one_low += (height <= 5) as usize;
            }
        }
    }
    // Two plugs and a socket on pairwise disjoint levels need at least nine
    // levels besides the anchors, so they start beyond height five.
    for height in 5..=8 {
        let sockets: Vec<SocketSpec> = tuples(height)
            .into_iter()
            .filter_map(|t| SocketSpec::new(t).ok())
            .collect();
        for s in &sockets {
            let plugs: Vec<PlugSpec> = tuples(height)
                .into_iter()
                .filter(|t| t[0] >= 2 && t[3] < height)
                .filter_map(|t| PlugSpec::new(t).ok())
                .filter(|p| disjoint(&s.level_set(), &p.level_set()))
                .collect();
            for (i, a) in plugs.iter().enumerate() {
                for b in plugs[i + 1..]
                    .iter()
                    .filter(|b| disjoint(&a.level_set(), &b.level_set()))
                {
                    let ext = [(1, height), (1, height)];
                    assert_eq!(
                        drawable(s, &[*a, *b], height),
                        double_link_admissible(a, b, s, ext),
                        "socket {:?} plugs {:?} {:?}",
                        s.levels,
                        a.levels,
                        b.levels
                    );
                    two += 1;
                }
            }
        }
    }
    assert!(one_low > 0 && two > 0);
    format!(
        "{one_low} one-plug cases with h<=5 ({one} up to h=7) and {two} two-plug cases (h 5..8) agree"
    )
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn olp_scaling() -> String {
    const HEIGHT: usize = 3;
    const MEMO: usize = 10_000_000;
    let widths = [2usize, 4, 8, 16];
    let options = OlpOptions {
        memo_limit: Some(MEMO),
    };
    let mut points = Vec::new();
    let mut peak = 0;
    for &w in &widths {
        let mut times = Vec::new();
        for seed in 0..7 {
            let g = planar_ordered_instance(HEIGHT, w, seed).unwrap();
            // Repeat tiny runs so the clock resolution does not dominate.
            let (mut reps, start) = (0u32, Instant::now());
            while reps == 0 || start.elapsed() < Duration::from_millis(20) {
                let (_, stats) = solve(&g, &options).unwrap_or_else(|e| panic!("width {w}: {e}"));
                peak = peak.max(stats.memo_entries);
                reps += 1;
            }
            times.push(start.elapsed().as_secs_f64() / reps as f64);
        }
        points.push(((w as f64).ln(), median(times).ln()));
    }
    let n = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let slope = points
        .iter()
        .map(|&(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / points.iter().map(|&(x, _)| (x - mx).powi(2)).sum::<f64>();
    assert!(
        slope <= (HEIGHT + 1) as f64,
        "log-log slope {slope:.2} exceeds {}",
        HEIGHT + 1
    );

    // The same limit through the command line's environment variable.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("wide.json");
    let g = planar_ordered_instance(HEIGHT, 16, 0).unwrap();
    std::fs::write(&path, instance_to_json(&Instance::Ordered(g))).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = levelplan::cli::run(
        ["levelplan", "solve", "--input", path.to_str().unwrap()],
        Some(&MEMO.to_string()),
        &mut out,
        &mut err,
    );
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    format!(
        "slope {slope:.2} <= {}, peak memo {peak} < {MEMO}",
        HEIGHT + 1
    )
}

type Criterion = (&'static str, fn() -> String);

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("OLP agrees with the oracle", olp_oracle_equivalence),
        ("chord fixture", chord_fixture),
        (
            "two-level CLP agrees with the oracle",
            clp2_oracle_equivalence,
        ),
        (
            "three-level CLP agrees with the oracle",
            clp3_oracle_equivalence,
        ),
        ("verifier soundness", verifier_soundness),
        ("closure fixture", closure_fixture),
        ("3-Partition generator", three_partition_generator),
        ("MCIS generator", mcis_generator),
        ("gadget predicates agree with the oracle", gadget_predicates),
        ("OLP scaling", olp_scaling),
    ];
    // Soundness summarizes the others, so it runs last.
    let order = [0, 1, 2, 3, 5, 6, 7, 8, 9, 4];
    let mut lines = vec![String::new(); criteria.len()];
    let mut failed = 0;
    let hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(|_| {}));
    for &i in &order {
        let (name, check) = criteria[i];
        let line = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(detail) => format!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(payload) => {
                failed += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                let first = msg.lines().next().unwrap_or("").to_string();
                format!("criterion {:>2} FAIL  {name}: {first}", i + 1)
            }
        };
        lines[i] = line;
    }
    std::panic::set_hook(hook);
    for line in &lines {
        println!("{line}");
    }
    assert_eq!(failed, 0, "{failed} criteria failed");
}
