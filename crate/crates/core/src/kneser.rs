//! Kneser graph semantics on families: adjacency, edge counting, and exact
//! independence numbers with deterministic witnesses.

use num_traits::ToPrimitive;

use crate::bitset::Bitset;
use crate::combinat::{binom_exact, count_to_f64, BigCount};
use crate::error::{Error, Result};
use crate::mis;
use crate::setfam::{Family, RSet};

/// Default vertex cap for the exact solver. A config value, not a hard
/// constant; acceptance suites pick their own scale.
pub const DEFAULT_SOLVER_CAP: usize = 600;

/// (n, r) together with the four exact counts every bound is written in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KneserParams {
    n: u32,
    r: u32,
    num_vertices: BigCount,
    star_size: BigCount,
    star_codegree: BigCount,
    set_pairs_bound: BigCount,
}

impl KneserParams {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        if r < 1 || r > n {
            return Err(Error::domain(format!("need 1 <= r <= n, got ({n},{r})")));
        }
        let num_vertices = binom_exact(n as u64, r as i64)?;
        let star_size = binom_exact(n as u64 - 1, r as i64 - 1)?;
        let star_codegree = if n > r {
            binom_exact((n - r - 1) as u64, r as i64 - 1)?
        } else {
            BigCount::from(0u32)
        };
        let set_pairs_bound = binom_exact(2 * r as u64, r as i64)?;
        Ok(KneserParams {
            n,
            r,
            num_vertices,
            star_size,
            star_codegree,
            set_pairs_bound,
        })
    }

    pub fn of(f: &Family) -> Self {
        KneserParams::new(f.n(), f.r()).expect("family params already validated")
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// C(n, r): vertices of K(n, r).
    pub fn num_vertices(&self) -> &BigCount {
        &self.num_vertices
    }

    /// C(n-1, r-1): size of a star, the extremal intersecting family.
    pub fn star_size(&self) -> &BigCount {
        &self.star_size
    }

    /// C(n-r-1, r-1): members of a star disjoint from a fixed r-set that
    /// avoids the centre.
    pub fn star_codegree(&self) -> &BigCount {
        &self.star_codegree
    }

    /// C(2r, r): the cross-intersecting set-pair bound; twice the induced
    /// matching number of K(n, r).
    pub fn set_pairs_bound(&self) -> &BigCount {
        &self.set_pairs_bound
    }

    pub fn num_vertices_u64(&self) -> Option<u64> {
        self.num_vertices.to_u64()
    }

    pub fn star_size_u64(&self) -> Option<u64> {
        self.star_size.to_u64()
    }

    pub fn star_codegree_u64(&self) -> Option<u64> {
        self.star_codegree.to_u64()
    }

    pub fn num_vertices_f64(&self) -> f64 {
        count_to_f64(&self.num_vertices)
    }

    pub fn star_size_f64(&self) -> f64 {
        count_to_f64(&self.star_size)
    }

    pub fn star_codegree_f64(&self) -> f64 {
        count_to_f64(&self.star_codegree)
    }

    pub fn set_pairs_bound_f64(&self) -> f64 {
        count_to_f64(&self.set_pairs_bound)
    }
}

/// Kneser adjacency: two r-sets are adjacent iff they are disjoint.
#[inline]
pub fn adjacent(a: &RSet, b: &RSet) -> bool {
    a.is_disjoint(b)
}

/// Number of unordered disjoint pairs in the family.
pub fn disjoint_pairs(f: &Family) -> u64 {
    let members = f.members();
    let mut count = 0u64;
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if a.is_disjoint(b) {
                count += 1;
            }
        }
    }
    count
}

/// The subgraph of K(n, r) induced by a family; vertex i is the i-th member
/// in colex order.
#[derive(Clone, Debug)]
pub struct InducedGraph {
    family: Family,
    adj: Vec<Bitset>,
}

impl InducedGraph {
    pub fn from_family(family: Family) -> Self {
        let members = family.members();
        let nv = members.len();
        let mut adj = vec![Bitset::new(nv); nv];
        for i in 0..nv {
            for j in (i + 1)..nv {
                if members[i].is_disjoint(&members[j]) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        InducedGraph { family, adj }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> &[Bitset] {
        &self.adj
    }

    pub fn edge_count(&self) -> u64 {
        let total: usize = self.adj.iter().map(|row| row.count()).sum();
        (total / 2) as u64
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.num_vertices() > cap {
            return Err(Error::resource(format!(
                "{} vertices exceeds solver cap {cap}; use the certified bounds instead",
                self.num_vertices()
            )));
        }
        Ok(())
    }

    fn vertices_to_family(&self, vertices: &[usize]) -> Family {
        let sets: Vec<RSet> = vertices.iter().map(|&v| self.family.members()[v]).collect();
        Family::from_sets(self.family.n(), self.family.r(), sets)
            .expect("witness members come from a valid family")
    }
}

/// The full Kneser graph K(n, r).
pub fn kneser_graph(n: u32, r: u32) -> Result<InducedGraph> {
    Ok(InducedGraph::from_family(Family::full(n, r)?))
}

/// Exact independence number with the lexicographically least maximum
/// witness (by member rank).
pub fn alpha_exact(g: &InducedGraph, cap: usize) -> Result<(usize, Family)> {
    g.check_cap(cap)?;
    let (size, witness) = mis::max_independent_set(&g.adj);
    Ok((size, g.vertices_to_family(&witness)))
}

/// Every maximum independent set, as families, in lexicographic order.
pub fn maximum_independent_sets(g: &InducedGraph, cap: usize) -> Result<(usize, Vec<Family>)> {
    g.check_cap(cap)?;
    let (size, sols) = mis::maximum_independent_sets(&g.adj);
    Ok((size, sols.iter().map(|s| g.vertices_to_family(s)).collect()))
}

/// Largest intersecting subfamily, with a deterministic witness.
pub fn max_intersecting(f: &Family, cap: usize) -> Result<(usize, Family)> {
    let g = InducedGraph::from_family(f.clone());
    alpha_exact(&g, cap)
}

/// Visit every intersecting subfamily of `f` with at least `t` members.
pub fn for_each_intersecting_subfamily_of_size_at_least<F: FnMut(&[usize])>(
    f: &Family,
    t: usize,
    cb: &mut F,
) {
    let g = InducedGraph::from_family(f.clone());
    mis::for_each_independent_set_of_size_at_least(&g.adj, t, cb);
}
