#![allow(dead_code)]

use lrcmat::construct::{graph_set_system, SetSystem, WeightedGraph};
use lrcmat::fixtures;
use lrcmat::GroundSubset;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn set(n: usize, v: &[usize]) -> GroundSubset {
    GroundSubset::from_elements(n, v.iter().copied()).unwrap()
}

/// `(size, rank)` blocks laid out left to right.
pub fn blocks(k: usize, spec: &[(usize, usize)]) -> SetSystem {
    let n: usize = spec.iter().map(|b| b.0).sum();
    let mut next = 0;
    let mut flats = Vec::new();
    for &(size, rank) in spec {
        flats.push((GroundSubset::from_elements(n, next..next + size).unwrap(), rank));
        next += size;
    }
    SetSystem::new(n, k, flats).unwrap()
}

pub struct Named {
    pub name: String,
    pub system: SetSystem,
    /// `(r, delta)` the system was designed for
    pub locality: (usize, usize),
}

/// Deterministic suite of valid set systems with `n <= 12`.
pub fn set_system_suite() -> Vec<Named> {
    let mut out = vec![
        Named { name: "overlapping triple".into(), system: fixtures::overlapping_triple_system(), locality: (3, 3) },
        Named { name: "disjoint blocks".into(), system: fixtures::disjoint_blocks_system(), locality: (3, 2) },
    ];
    let block_specs: &[(usize, &[(usize, usize)], (usize, usize))] = &[
        (3, &[(3, 2), (3, 2), (3, 2)], (2, 2)),
        (4, &[(3, 2), (3, 2), (3, 2)], (2, 2)),
        (2, &[(4, 2), (4, 2)], (2, 3)),
        (3, &[(4, 2), (4, 2)], (2, 3)),
        (5, &[(4, 3), (4, 3), (3, 2)], (3, 2)),
        (4, &[(5, 3), (5, 3)], (3, 3)),
        (5, &[(5, 3), (5, 3)], (3, 3)),
        (6, &[(4, 3), (4, 3), (4, 3)], (3, 2)),
        (3, &[(2, 1), (2, 1), (2, 1), (2, 1), (2, 1)], (1, 2)),
        (4, &[(6, 4), (6, 4)], (4, 3)),
        (7, &[(3, 2), (3, 2), (3, 2), (3, 2)], (2, 2)),
        (2, &[(6, 2), (5, 1)], (2, 5)),
    ];
    for (k, spec, loc) in block_specs {
        out.push(Named { name: format!("blocks {spec:?} k={k}"), system: blocks(*k, spec), locality: *loc });
    }
    let graphs: &[(usize, &[(usize, usize, usize)], usize, usize, usize)] = &[
        (3, &[(0, 1, 1)], 4, 3, 2),
        (3, &[(0, 1, 1), (1, 2, 1)], 5, 3, 2),
        (3, &[(0, 1, 1), (1, 2, 1)], 6, 3, 2),
        (2, &[(0, 1, 2)], 4, 3, 3),
        (2, &[(0, 1, 1)], 4, 3, 3),
        (4, &[(0, 1, 1), (2, 3, 1)], 5, 2, 2),
        (3, &[(0, 1, 2), (1, 2, 1)], 5, 4, 2),
        (3, &[(0, 1, 1), (1, 2, 1)], 4, 3, 2),
        (2, &[(0, 1, 3)], 5, 4, 3),
    ];
    for (m, edges, k, r, delta) in graphs {
        let g = WeightedGraph::new(*m, edges.to_vec()).unwrap();
        let system = graph_set_system(&g, *k, *r, *delta).unwrap();
        assert!(system.n() <= 12, "suite graph too large: n = {}", system.n());
        out.push(Named { name: format!("graph m={m} {edges:?} k={k}"), system, locality: (*r, *delta) });
    }
    out
}

/// Random set system satisfying the construction's conditions, or `None`
/// after a few tries.
pub fn random_set_system<R: Rng>(rng: &mut R, n: usize) -> Option<SetSystem> {
    for _ in 0..64 {
        let m = rng.gen_range(1..=4.min(n / 2).max(1));
        let mut elems: Vec<usize> = (0..n).collect();
        elems.shuffle(rng);
        // private parts partition the ground set, then sprinkle overlaps
        let mut cuts: Vec<usize> = (1..n).collect();
        cuts.shuffle(rng);
        let mut cuts: Vec<usize> = cuts.into_iter().take(m - 1).collect();
        cuts.sort_unstable();
        let mut parts = Vec::new();
        let mut prev = 0;
        for c in cuts.into_iter().chain(std::iter::once(n)) {
            parts.push(elems[prev..c].to_vec());
            prev = c;
        }
        let mut sets: Vec<Vec<usize>> = parts.clone();
        for (i, s) in sets.iter_mut().enumerate() {
            for (j, p) in parts.iter().enumerate() {
                if i != j && rng.gen_bool(0.2) {
                    if let Some(&e) = p.choose(rng) {
                        if !s.contains(&e) {
                            s.push(e);
                        }
                    }
                }
            }
        }
        let flats: Vec<(GroundSubset, usize)> = sets
            .iter()
            .map(|s| {
                let len = s.len();
                let rank = if len >= 2 { rng.gen_range(1..len) } else { 1 };
                (GroundSubset::from_elements(n, s.iter().copied()).unwrap(), rank)
            })
            .collect();
        let slack: i64 = flats.iter().map(|(s, r)| *r as i64 - s.len() as i64).sum();
        let kmax = n as i64 + slack;
        if kmax < 1 {
            continue;
        }
        let k = rng.gen_range(1..=kmax as usize);
        let sys = SetSystem::new(n, k, flats).unwrap();
        if sys.check_conditions().is_ok() {
            return Some(sys);
        }
    }
    None
}
