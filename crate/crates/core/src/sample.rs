//! Seeded instance generators for verification suites and experiments.
//! Everything here is a pure function of its seed.

use crate::bitset::Bitset;
use crate::combinat::binom_u64;
use crate::kneser::InducedGraph;
use crate::rng::{hash3, to_unit, SplitMix64};
use crate::setfam::{unrank, Family};

/// Erdos-Renyi G(nv, p) as adjacency rows. Each potential edge gets its own
/// counter-derived coin, so the graph depends only on (nv, p, seed).
pub fn gnp_adjacency(nv: usize, p: f64, seed: u64) -> Vec<Bitset> {
    let mut adj = vec![Bitset::new(nv); nv];
    for u in 0..nv {
        for v in (u + 1)..nv {
            if to_unit(hash3(seed, u as u64, v as u64)) < p {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    adj
}

/// A uniformly random size-`size` subfamily of [n]^(r).
pub fn random_family(n: u32, r: u32, size: u64, seed: u64) -> Family {
    let total = binom_u64(n, r);
    assert!(size <= total);
    let mut rng = SplitMix64::new(seed);
    let ranks = rng.sample_distinct(total, size);
    let sets = ranks.iter().map(|&i| unrank(i, n, r).unwrap()).collect();
    Family::from_sets(n, r, sets).expect("unranked sets are valid")
}

/// Family of the given size built to carry few disjoint pairs: start from
/// the star at 1 and repeatedly add the set creating the fewest new pairs,
/// breaking ties towards smaller colex rank. Deterministic adversary for
/// supersaturation checks.
pub fn greedy_min_edge_family(n: u32, r: u32, size: u64) -> Family {
    let full = Family::full(n, r).unwrap();
    let total = full.len();
    assert!(size as usize <= total);
    let members = full.members();
    let mut chosen = vec![false; total];
    let mut count = 0u64;

    // star members first (they induce no pairs at all)
    for (i, s) in members.iter().enumerate() {
        if count == size {
            break;
        }
        if s.contains(1) {
            chosen[i] = true;
            count += 1;
        }
    }
    while count < size {
        let mut best_idx = usize::MAX;
        let mut best_new = u64::MAX;
        for (i, s) in members.iter().enumerate() {
            if chosen[i] {
                continue;
            }
            let new_edges = members
                .iter()
                .enumerate()
                .filter(|(j, t)| chosen[*j] && s.is_disjoint(t))
                .count() as u64;
            if new_edges < best_new {
                best_new = new_edges;
                best_idx = i;
            }
        }
        chosen[best_idx] = true;
        count += 1;
    }
    let sets = members
        .iter()
        .enumerate()
        .filter(|(i, _)| chosen[*i])
        .map(|(_, s)| *s)
        .collect();
    Family::from_sets(n, r, sets).unwrap()
}

/// Greedy independent set of a graph in ascending vertex order.
pub fn greedy_independent_set(adj: &[Bitset]) -> Bitset {
    let nv = adj.len();
    let mut picked = Bitset::new(nv);
    let mut blocked = Bitset::new(nv);
    for (v, row) in adj.iter().enumerate() {
        if !blocked.contains(v) {
            picked.insert(v);
            blocked.insert(v);
            blocked.union_with(row);
        }
    }
    picked
}

/// Number of edges induced by a vertex subset.
pub fn induced_edges(adj: &[Bitset], u: &Bitset) -> u64 {
    let mut count = 0u64;
    for v in u.iter() {
        count += adj[v].intersection_count(u) as u64;
    }
    count / 2
}

/// A random vertex subset of the given size.
pub fn random_vertex_subset(nv: usize, size: usize, seed: u64) -> Bitset {
    let mut rng = SplitMix64::new(seed);
    let picks = rng.sample_distinct(nv as u64, size as u64);
    let mut s = Bitset::new(nv);
    for p in picks {
        s.insert(p as usize);
    }
    s
}

/// Induced Kneser subgraph on a random subfamily.
pub fn random_induced_graph(n: u32, r: u32, size: u64, seed: u64) -> InducedGraph {
    InducedGraph::from_family(random_family(n, r, size, seed))
}
