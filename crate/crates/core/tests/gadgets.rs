use levelplan::generators::{double_link_admissible, fits, link_instance, PlugSpec, SocketSpec};
use levelplan::oracle::{brute_olp, verify_drawing, Limits};
use levelplan::Instance;

fn tuples(height: usize) -> impl Iterator<Item = [usize; 4]> {
    (1..=height).flat_map(move |a| {
        (a..=height).flat_map(move |b| {
            (b..=height).flat_map(move |c| (c..=height).map(move |d| [a, b, c, d]))
        })
    })
}

fn sockets(height: usize) -> Vec<SocketSpec> {
    tuples(height)
        .filter_map(|t| SocketSpec::new(t).ok())
        .collect()
}

fn plugs(height: usize, lo: usize, hi: usize) -> Vec<PlugSpec> {
    tuples(height)
        .filter(|t| t[0] >= lo && t[3] <= hi)
        .filter_map(|t| PlugSpec::new(t).ok())
        .collect()
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| !b.contains(x))
}

/// Oracle verdict for the anchored micro-instance; every feasible answer is
/// also checked by the verifier.
fn drawable(socket: &SocketSpec, plugs: &[PlugSpec], height: usize) -> bool {
    let inst = link_instance(socket, plugs, height).unwrap();
    match brute_olp(&inst, Limits::default()) {
        Ok(emb) => {
            verify_drawing(&Instance::Ordered(inst), &emb).unwrap();
            true
        }
        Err(levelplan::Error::Infeasible) => false,
        Err(e) => panic!("oracle failed: {e}"),
    }
}

#[test]
fn fits_matches_oracle_for_one_plug() {
    let mut checked = 0;
    let mut fitting = 0;
    for height in 3..=7 {
        for s in sockets(height) {
            for p in plugs(height, 1, height) {
                if !disjoint(&s.level_set(), &p.level_set()) {
                    continue;
                }
                let expected = fits(&p, &s, (1, height));
                assert_eq!(
                    drawable(&s, &[p], height),
                    expected,
                    "socket {:?} plug {:?}",
                    s.levels,
                    p.levels
                );
                checked += 1;
                fitting += expected as usize;
            }
        }
    }
    println!("one plug: {checked} cases, {fitting} fitting");
    assert!(
        checked > 0 && fitting > 0,
        "{checked} cases, {fitting} fitting"
    );
}

#[test]
fn double_link_matches_oracle_for_two_plugs() {
    let mut checked = 0;
    let mut admissible = 0;
    for height in 5..=8 {
        for s in sockets(height) {
            let candidates: Vec<PlugSpec> = plugs(height, 2, height - 1)
                .into_iter()
                .filter(|p| disjoint(&s.level_set(), &p.level_set()))
                .collect();
            for (i, a) in candidates.iter().enumerate() {
                for b in &candidates[i + 1..] {
                    if !disjoint(&a.level_set(), &b.level_set()) {
                        continue;
                    }
                    let ext = [(1, height), (1, height)];
                    let expected = double_link_admissible(a, b, &s, ext);
                    assert_eq!(
                        drawable(&s, &[*a, *b], height),
                        expected,
                        "socket {:?} plugs {:?} {:?}",
                        s.levels,
                        a.levels,
                        b.levels
                    );
                    checked += 1;
                    admissible += expected as usize;
                }
            }
        }
    }
    println!("two plugs: {checked} cases, {admissible} admissible");
    assert!(
        checked > 0 && admissible > 0 && admissible < checked,
        "{checked} cases, {admissible} admissible"
    );
}
