//! Exact maximum-independent-set search.
//!
//! Branch and bound on the complement-clique formulation: an independent set
//! in G is a clique in the complement H. The upper bound at each node is a
//! greedy colouring of the candidate set in H. Branching always takes the
//! lowest-index candidate and tries inclusion first, so complete solutions
//! are visited in lexicographic order of their vertex sets; the first
//! maximum found is therefore the lexicographically least maximizer, and the
//! search is fully deterministic.

use crate::bitset::Bitset;

fn complement(adj: &[Bitset]) -> Vec<Bitset> {
    let nv = adj.len();
    let full = Bitset::full(nv);
    adj.iter()
        .enumerate()
        .map(|(v, row)| {
            let mut c = full.clone();
            c.subtract(row);
            c.remove(v);
            c
        })
        .collect()
}

/// Number of colours a greedy pass needs for H[cand]; an upper bound on the
/// largest clique inside cand.
fn color_bound(comp: &[Bitset], cand: &Bitset) -> usize {
    let mut uncolored = cand.clone();
    let mut colors = 0;
    while let Some(first) = uncolored.first() {
        colors += 1;
        let mut class = uncolored.clone();
        let mut v = first;
        loop {
            uncolored.remove(v);
            class.remove(v);
            class.subtract(&comp[v]);
            match class.first() {
                Some(w) => v = w,
                None => break,
            }
        }
    }
    colors
}

struct BestSearch<'a> {
    comp: &'a [Bitset],
    best: Option<(usize, Vec<usize>)>,
}

impl BestSearch<'_> {
    fn expand(&mut self, cur: &mut Vec<usize>, cand: &Bitset) {
        if let Some((best_size, _)) = &self.best {
            if cur.len() + color_bound(self.comp, cand) <= *best_size {
                return;
            }
        }
        let v = match cand.first() {
            Some(v) => v,
            None => {
                let better = match &self.best {
                    Some((s, _)) => cur.len() > *s,
                    None => true,
                };
                if better {
                    self.best = Some((cur.len(), cur.clone()));
                }
                return;
            }
        };
        // include v
        let mut with_v = cand.clone();
        with_v.remove(v);
        with_v.intersect_with(&self.comp[v]);
        cur.push(v);
        self.expand(cur, &with_v);
        cur.pop();
        // exclude v
        let mut without_v = cand.clone();
        without_v.remove(v);
        self.expand(cur, &without_v);
    }
}

/// Exact maximum independent set; witness is the lexicographically least
/// maximizer as a sorted vertex list.
pub fn max_independent_set(adj: &[Bitset]) -> (usize, Vec<usize>) {
    let comp = complement(adj);
    let mut search = BestSearch {
        comp: &comp,
        best: None,
    };
    let mut cur = Vec::new();
    search.expand(&mut cur, &Bitset::full(adj.len()));
    search.best.expect("root always yields a leaf")
}

struct AllSearch<'a> {
    comp: &'a [Bitset],
    best_size: usize,
    solutions: Vec<Vec<usize>>,
}

impl AllSearch<'_> {
    fn expand(&mut self, cur: &mut Vec<usize>, cand: &Bitset) {
        // keep subtrees that can still tie
        if cur.len() + color_bound(self.comp, cand) < self.best_size {
            return;
        }
        let v = match cand.first() {
            Some(v) => v,
            None => {
                match cur.len().cmp(&self.best_size) {
                    std::cmp::Ordering::Greater => {
                        self.best_size = cur.len();
                        self.solutions.clear();
                        self.solutions.push(cur.clone());
                    }
                    std::cmp::Ordering::Equal => self.solutions.push(cur.clone()),
                    std::cmp::Ordering::Less => {}
                }
                return;
            }
        };
        let mut with_v = cand.clone();
        with_v.remove(v);
        with_v.intersect_with(&self.comp[v]);
        cur.push(v);
        self.expand(cur, &with_v);
        cur.pop();
        let mut without_v = cand.clone();
        without_v.remove(v);
        self.expand(cur, &without_v);
    }
}

/// All maximum independent sets, in lexicographic order of vertex sets.
pub fn maximum_independent_sets(adj: &[Bitset]) -> (usize, Vec<Vec<usize>>) {
    let comp = complement(adj);
    let mut search = AllSearch {
        comp: &comp,
        best_size: 0,
        solutions: Vec::new(),
    };
    let mut cur = Vec::new();
    search.expand(&mut cur, &Bitset::full(adj.len()));
    // best_size 0 on a nonempty graph still collects the empty set once
    if search.solutions.is_empty() {
        search.solutions.push(Vec::new());
    }
    (search.best_size, search.solutions)
}

/// Visit every independent set of size >= t exactly once.
pub fn for_each_independent_set_of_size_at_least<F: FnMut(&[usize])>(
    adj: &[Bitset],
    t: usize,
    cb: &mut F,
) {
    fn rec<F: FnMut(&[usize])>(
        adj: &[Bitset],
        cur: &mut Vec<usize>,
        cand: &Bitset,
        t: usize,
        cb: &mut F,
    ) {
        if cur.len() >= t {
            cb(cur);
        }
        let members = cand.to_vec();
        let mut rest = cand.clone();
        for v in members {
            rest.remove(v);
            let mut next = rest.clone();
            next.subtract(&adj[v]);
            if cur.len() + 1 + next.count() >= t {
                cur.push(v);
                rec(adj, cur, &next, t, cb);
                cur.pop();
            }
        }
    }
    let mut cur = Vec::new();
    rec(adj, &mut cur, &Bitset::full(adj.len()), t, cb);
}

#[cfg(test)]
pub(crate) mod reference {
    use crate::bitset::Bitset;

    /// Exhaustive 2^n oracle; returns size and lexicographically least
    /// maximum witness. Only for graphs with at most ~22 vertices.
    pub fn naive_max_independent_set(adj: &[Bitset]) -> (usize, Vec<usize>) {
        let nv = adj.len();
        assert!(nv <= 22);
        let rows: Vec<u64> = adj
            .iter()
            .map(|row| row.iter().fold(0u64, |m, v| m | 1 << v))
            .collect();
        let mut best_size = 0usize;
        let mut best_mask = 0u64;
        let mut found = false;
        for mask in 0u64..(1 << nv) {
            let mut ok = true;
            let mut m = mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if rows[v] & mask != 0 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let size = mask.count_ones() as usize;
            // among equal sizes, the set owning the lowest differing bit is
            // lexicographically smaller
            let better = if !found || size > best_size {
                true
            } else if size == best_size && mask != best_mask {
                let diff = mask ^ best_mask;
                mask & (diff & diff.wrapping_neg()) != 0
            } else {
                false
            };
            if better {
                best_size = size;
                best_mask = mask;
                found = true;
            }
        }
        let mut witness = Vec::new();
        let mut m = best_mask;
        while m != 0 {
            witness.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        (best_size, witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn graph_from_edges(nv: usize, edges: &[(usize, usize)]) -> Vec<Bitset> {
        let mut adj = vec![Bitset::new(nv); nv];
        for &(u, v) in edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }

    #[test]
    fn tiny_graphs() {
        // path on 4 vertices: alpha = 2, lex-least witness {0, 2}
        let adj = graph_from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(max_independent_set(&adj), (2, vec![0, 2]));
        // triangle: alpha = 1, witness {0}
        let adj = graph_from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(max_independent_set(&adj), (1, vec![0]));
        // edgeless
        let adj = graph_from_edges(3, &[]);
        assert_eq!(max_independent_set(&adj), (3, vec![0, 1, 2]));
    }

    #[test]
    fn all_maximum_on_even_cycle() {
        // C4: two maximum independent sets {0,2}, {1,3}
        let adj = graph_from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let (size, sols) = maximum_independent_sets(&adj);
        assert_eq!(size, 2);
        assert_eq!(sols, vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn matches_naive_oracle_on_random_graphs() {
        let mut rng = SplitMix64::new(0x5eed);
        for trial in 0..300 {
            let nv = 4 + (trial % 15) as usize;
            let density = 0.1 + 0.8 * rng.next_unit();
            let mut edges = Vec::new();
            for u in 0..nv {
                for v in (u + 1)..nv {
                    if rng.next_unit() < density {
                        edges.push((u, v));
                    }
                }
            }
            let adj = graph_from_edges(nv, &edges);
            let fast = max_independent_set(&adj);
            let slow = reference::naive_max_independent_set(&adj);
            assert_eq!(fast, slow, "mismatch on trial {trial}, nv={nv}");
        }
    }

    #[test]
    fn size_at_least_enumerator_counts() {
        // C5: independent sets: 1 empty, 5 singletons, 5 pairs
        let adj = graph_from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let counts: Vec<usize> = (0..=2)
            .map(|t| {
                let mut c = 0;
                for_each_independent_set_of_size_at_least(&adj, t, &mut |_| c += 1);
                c
            })
            .collect();
        assert_eq!(counts, [11, 10, 5]);
    }
}
