//! Deterministic bounds on disjoint-pair counts: the nontriviality threshold,
//! star proximity, induced matchings, and the two edge lower bounds.

use serde::Serialize;

use crate::bitset::Bitset;
use crate::combinat::BigCount;
use crate::error::{Error, Result};
use crate::kneser::{max_intersecting, InducedGraph, KneserParams};
use crate::setfam::Family;

/// Distance from intersecting: |f| minus the largest intersecting subfamily.
pub fn ell(f: &Family, cap: usize) -> Result<usize> {
    let (best, _) = max_intersecting(f, cap)?;
    Ok(f.len() - best)
}

/// The size threshold above which every intersecting family is a star:
/// any intersecting family with at least this many members is trivial.
pub fn hm_threshold(p: &KneserParams) -> Result<BigCount> {
    if p.n() <= 2 * p.r() {
        return Err(Error::domain(format!(
            "nontriviality threshold needs n > 2r, got ({},{})",
            p.n(),
            p.r()
        )));
    }
    Ok(p.star_size() - p.star_codegree() + 2u32)
}

/// How close a family sits to its best star.
#[derive(Clone, Debug, Serialize)]
pub struct StarProximity {
    /// Centre x maximizing |f_x|; smallest such x on ties.
    pub center: u32,
    /// |f_x| for that centre.
    pub star_size: u64,
    /// Star capacity left unused: C(n-1, r-1) - |f_x|.
    pub deficiency: u64,
    /// Distance from intersecting, when the solver was run.
    pub ell: Option<u64>,
}

/// Scan all n centres for the largest contained piece of a star.
pub fn best_star_center(f: &Family) -> StarProximity {
    let mut center = 1;
    let mut best = 0u64;
    for x in 1..=f.n() {
        let count = f.members().iter().filter(|s| s.contains(x)).count() as u64;
        if count > best {
            best = count;
            center = x;
        }
    }
    let params = KneserParams::of(f);
    let n_cap = params
        .star_size_u64()
        .expect("materialized family implies word-sized star");
    StarProximity {
        center,
        star_size: best,
        deficiency: n_cap - best,
        ell: None,
    }
}

/// [`best_star_center`] with the distance-from-intersecting field filled in.
/// The ratio deficiency / ell is the empirical stand-in for the stability
/// constant, which is only known to exist.
pub fn best_star_center_with_ell(f: &Family, cap: usize) -> Result<StarProximity> {
    let mut prox = best_star_center(f);
    prox.ell = Some(ell(f, cap)? as u64);
    Ok(prox)
}

/// Empirical stand-in for the stability constant, which the theory only
/// proves to exist: the largest deficiency / ell ratio seen over seeded
/// random families with ell >= 1.
pub fn friedgut_ratio_empirical(n: u32, r: u32, trials: u64, seed: u64, cap: usize) -> Result<f64> {
    let total = crate::combinat::binom_u64(n, r);
    let mut best = 0.0f64;
    let mut measured = 0u64;
    for t in 0..trials {
        let mut rng = crate::rng::SplitMix64::new(crate::rng::hash2(seed, t));
        let size = 1 + rng.next_below(total);
        let f = crate::sample::random_family(n, r, size, crate::rng::hash2(seed, t) ^ 7);
        let prox = best_star_center_with_ell(&f, cap)?;
        let l = prox.ell.expect("filled by construction");
        if l == 0 {
            continue;
        }
        measured += 1;
        best = best.max(prox.deficiency as f64 / l as f64);
    }
    if measured == 0 {
        return Err(Error::domain(
            "no sampled family had ell >= 1; increase trials".to_string(),
        ));
    }
    Ok(best)
}

/// Exact induced-matching number by branch and bound over edge sets.
/// Exponential; callers gate the instance size.
pub fn induced_matching_number_of(adj: &[Bitset]) -> usize {
    let nv = adj.len();
    let mut edges = Vec::new();
    for (u, row) in adj.iter().enumerate() {
        for v in row.iter() {
            if v > u {
                edges.push((u, v));
            }
        }
    }

    struct Search<'a> {
        adj: &'a [Bitset],
        edges: &'a [(usize, usize)],
        best: usize,
    }

    impl Search<'_> {
        fn rec(&mut self, blocked: &Bitset, start: usize, count: usize) {
            if count > self.best {
                self.best = count;
            }
            // edges still addable: both endpoints untouched by the matching
            // or its neighbourhood
            let avail: Vec<usize> = (start..self.edges.len())
                .filter(|&ei| {
                    let (u, v) = self.edges[ei];
                    !blocked.contains(u) && !blocked.contains(v)
                })
                .collect();
            let nv = self.adj.len();
            let free_vertices = nv - blocked.count();
            for (pos, &ei) in avail.iter().enumerate() {
                let remaining = (avail.len() - pos).min(free_vertices / 2);
                if count + remaining <= self.best {
                    return;
                }
                let (u, v) = self.edges[ei];
                if blocked.contains(u) || blocked.contains(v) {
                    continue;
                }
                let mut next = blocked.clone();
                next.insert(u);
                next.insert(v);
                next.union_with(&self.adj[u]);
                next.union_with(&self.adj[v]);
                self.rec(&next, ei + 1, count + 1);
            }
        }
    }

    let mut search = Search {
        adj,
        edges: &edges,
        best: 0,
    };
    search.rec(&Bitset::new(nv), 0, 0);
    search.best
}

/// Induced-matching number of an induced Kneser subgraph, capped.
pub fn induced_matching_number(g: &InducedGraph, cap: usize) -> Result<usize> {
    if g.num_vertices() > cap {
        return Err(Error::resource(format!(
            "induced matching search on {} vertices exceeds cap {cap}",
            g.num_vertices()
        )));
    }
    Ok(induced_matching_number_of(g.adjacency()))
}

/// |E| >= (|V| - alpha)^2 / 4m for a graph with induced-matching number m.
pub fn edge_lb_induced_matching(num_vertices: u64, alpha: u64, m: u64) -> Result<f64> {
    if alpha > num_vertices {
        return Err(Error::domain(format!(
            "alpha {alpha} exceeds vertex count {num_vertices}"
        )));
    }
    let k = num_vertices - alpha;
    if m == 0 {
        if k == 0 {
            return Ok(0.0);
        }
        return Err(Error::domain(
            "m = 0 forces an edgeless graph, so alpha must equal |V|".to_string(),
        ));
    }
    Ok((k * k) as f64 / (4 * m) as f64)
}

/// e(f) >= ell(f)^2 / 2R, the set-pairs lower bound.
pub fn edge_lb_setpairs(f: &Family, cap: usize) -> Result<f64> {
    let l = ell(f, cap)? as f64;
    let r_bound = KneserParams::of(f).set_pairs_bound_f64();
    Ok(l * l / (2.0 * r_bound))
}

/// The small-ell edge bound e(f) >= ell(M - ell), valid once the largest
/// intersecting subfamily is verified to sit inside a star. Returns None
/// when the hypotheses don't hold for this instance.
pub fn case1_edge_lb(f: &Family, cap: usize) -> Result<Option<u64>> {
    let params = KneserParams::of(f);
    let n_count = params
        .star_size_u64()
        .ok_or_else(|| Error::domain("star size out of word range".to_string()))?;
    if f.len() as u64 != n_count {
        return Err(Error::domain(format!(
            "family size {} must equal the extremal size {n_count}",
            f.len()
        )));
    }
    let m_count = params
        .star_codegree_u64()
        .expect("codegree below star size");
    let (best, witness) = max_intersecting(f, cap)?;
    let l = (f.len() - best) as u64;
    if (l as i64) > m_count as i64 - 2 {
        return Ok(None);
    }
    // the Hilton-Milner regime promises triviality; verify instead of assume
    if witness.common_element().is_none() {
        return Ok(None);
    }
    Ok(Some(l * (m_count - l)))
}
