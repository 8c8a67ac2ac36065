//! The graph-container algorithm and its certified bounds.
//!
//! A single ordered pass over the vertices assigns every sparse set U a small
//! fingerprint T ⊆ U and a container C(T) ⊇ U whose size and edge density
//! are certified. C(T) depends on T alone, so replaying the pass with T as
//! the membership oracle must reproduce C bit-for-bit; `build_container`
//! asserts its own guarantees before returning.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bitset::Bitset;
use crate::combinat::{ln_binom_f64, BigCount};
use crate::error::{Error, Result};
use crate::kneser::KneserParams;
use crate::rng::SplitMix64;
use crate::sample::induced_edges;

/// How the pass orders vertices. Any fixed linear order is valid, but
/// container quality depends on it, so it is explicit and reproducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexOrdering {
    /// Vertex id order (colex rank for Kneser vertex sets).
    Identity,
    /// Seeded uniform shuffle.
    Seeded(u64),
}

/// A graph with a fixed linear ordering, forward-neighbour sets, and exact
/// rational average degree.
#[derive(Clone, Debug)]
pub struct OrderedGraph {
    adj: Vec<Bitset>,
    order: Vec<u32>,
    forward: Vec<Bitset>,
    num_edges: u64,
    max_degree: u64,
}

impl OrderedGraph {
    pub fn new(adj: Vec<Bitset>, ordering: VertexOrdering) -> Self {
        let nv = adj.len();
        let order: Vec<u32> = match ordering {
            VertexOrdering::Identity => (0..nv as u32).collect(),
            VertexOrdering::Seeded(seed) => {
                let mut order: Vec<u32> = (0..nv as u32).collect();
                let mut rng = SplitMix64::new(seed);
                for i in (1..nv).rev() {
                    let j = rng.next_below(i as u64 + 1) as usize;
                    order.swap(i, j);
                }
                order
            }
        };
        let mut pos = vec![0u32; nv];
        for (i, &v) in order.iter().enumerate() {
            pos[v as usize] = i as u32;
        }
        let forward: Vec<Bitset> = (0..nv)
            .map(|v| {
                let mut f = Bitset::new(nv);
                for w in adj[v].iter() {
                    if pos[w] > pos[v] {
                        f.insert(w);
                    }
                }
                f
            })
            .collect();
        let num_edges = adj.iter().map(|r| r.count() as u64).sum::<u64>() / 2;
        let max_degree = adj.iter().map(|r| r.count() as u64).max().unwrap_or(0);
        OrderedGraph {
            adj,
            order,
            forward,
            num_edges,
            max_degree,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> u64 {
        self.num_edges
    }

    pub fn max_degree(&self) -> u64 {
        self.max_degree
    }

    pub fn adjacency(&self) -> &[Bitset] {
        &self.adj
    }

    pub fn ordering(&self) -> &[u32] {
        &self.order
    }

    /// Average degree 2E / V as an exact rational; 0 for the empty graph.
    pub fn average_degree(&self) -> BigRational {
        if self.adj.is_empty() {
            return BigRational::zero();
        }
        BigRational::new(
            BigInt::from(2 * self.num_edges),
            BigInt::from(self.num_vertices() as u64),
        )
    }

    /// Edge density mu(U) = e(G[U]) / |V|; 0 for the empty graph.
    pub fn mu(&self, u: &Bitset) -> BigRational {
        if self.adj.is_empty() {
            return BigRational::zero();
        }
        BigRational::new(
            BigInt::from(induced_edges(&self.adj, u)),
            BigInt::from(self.num_vertices() as u64),
        )
    }
}

/// Which pass rule admitted a vertex into the fingerprint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FingerprintRule {
    /// Vertex had >= k backward neighbours already in T.
    BackDegree,
    /// Vertex had >= bd forward neighbours outside Gamma(T).
    ForwardSurplus,
}

/// One fingerprint insertion, with the backward-in-T count at that moment.
#[derive(Clone, Debug, Serialize)]
pub struct FingerprintEvent {
    pub vertex: usize,
    pub rule: FingerprintRule,
    pub back_in_t: u64,
}

/// Result of one container construction.
#[derive(Clone, Debug)]
pub struct ContainerRun {
    pub fingerprint: Bitset,
    pub container: Bitset,
    /// Backward-neighbour threshold: least integer strictly above sqrt(abd).
    pub k: u64,
    pub a: BigRational,
    pub b: BigRational,
    pub t1_size: usize,
    pub t2_size: usize,
    /// Insertion log; enough to re-verify the backward-degree accounting.
    pub events: Vec<FingerprintEvent>,
    /// Edges inside the container.
    pub container_edges: u64,
    /// Certified bound on |T| (real-valued form).
    pub fingerprint_size_bound: f64,
    /// Certified bound on mu(C) (real-valued form).
    pub mu_bound: f64,
}

impl ContainerRun {
    pub fn mu_container(&self, g: &OrderedGraph) -> f64 {
        self.container_edges as f64 / g.num_vertices() as f64
    }

    /// JSON view: fingerprint and container as sorted vertex lists, exact
    /// parameters as num/den strings, and the certified bounds.
    pub fn to_json(&self, g: &OrderedGraph) -> serde_json::Value {
        serde_json::json!({
            "fingerprint": self.fingerprint.to_vec(),
            "container": self.container.to_vec(),
            "k": self.k,
            "a": self.a.to_string(),
            "b": self.b.to_string(),
            "t1_size": self.t1_size,
            "t2_size": self.t2_size,
            "container_edges": self.container_edges,
            "mu_container": self.mu_container(g),
            "bounds": {
                "fingerprint_size": self.fingerprint_size_bound,
                "mu_container": self.mu_bound,
            },
        })
    }
}

/// Least integer strictly greater than sqrt(a*b*d), decided by exact
/// rational comparison so integer sqrt boundaries come out right.
fn backward_threshold(abd: &BigRational) -> Result<u64> {
    if abd.is_negative() {
        return Err(Error::domain("a*b*d must be non-negative".to_string()));
    }
    let floor = (abd.numer() / abd.denom()).max(BigInt::zero());
    let mut k = floor.sqrt();
    // want the least k with k^2 > abd
    while BigRational::from_integer(k.clone() * k.clone()) <= *abd {
        k += 1;
    }
    k.to_u64()
        .ok_or_else(|| Error::resource("backward threshold beyond u64".to_string()))
}

struct PassOutput {
    fingerprint: Bitset,
    kept: Bitset,
    t1_size: usize,
    t2_size: usize,
    events: Vec<FingerprintEvent>,
}

/// The ordered pass. `in_u` is the membership oracle: the true sparse set
/// when building, the fingerprint itself when replaying.
fn ordered_pass<F: Fn(usize) -> bool>(
    g: &OrderedGraph,
    in_u: F,
    k: u64,
    bd: &BigRational,
) -> PassOutput {
    let nv = g.num_vertices();
    let mut fingerprint = Bitset::new(nv);
    let mut kept = Bitset::full(nv);
    let mut back_in_t = vec![0u64; nv];
    let mut t1_size = 0;
    let mut t2_size = 0;
    let mut events = Vec::new();

    let bd_num = bd.numer();
    let bd_den = bd.denom();

    for &v_u32 in &g.order {
        let v = v_u32 as usize;
        let rule = if back_in_t[v] >= k {
            Some(FingerprintRule::BackDegree)
        } else {
            // |S| >= bd with S the forward neighbours outside Gamma(T)
            let s_size = g.forward[v].iter().filter(|&w| back_in_t[w] < k).count();
            if BigInt::from(s_size as u64) * bd_den >= *bd_num {
                Some(FingerprintRule::ForwardSurplus)
            } else {
                None
            }
        };
        if let Some(rule) = rule {
            kept.remove(v);
            if in_u(v) {
                events.push(FingerprintEvent {
                    vertex: v,
                    rule,
                    back_in_t: back_in_t[v],
                });
                fingerprint.insert(v);
                match rule {
                    FingerprintRule::BackDegree => t1_size += 1,
                    FingerprintRule::ForwardSurplus => t2_size += 1,
                }
                for w in g.forward[v].iter() {
                    back_in_t[w] += 1;
                }
            }
        }
    }
    PassOutput {
        fingerprint,
        kept,
        t1_size,
        t2_size,
        events,
    }
}

/// Run the container construction for a sparse set `u` with density budget
/// `a` and degree parameter `b > 0`. All three guarantees are asserted
/// before returning; a violation is a bug, not bad input.
pub fn build_container(
    g: &OrderedGraph,
    u: &Bitset,
    a: &BigRational,
    b: &BigRational,
) -> Result<ContainerRun> {
    if !b.is_positive() {
        return Err(Error::domain("b must be positive".to_string()));
    }
    let mu_u = g.mu(u);
    if mu_u > *a {
        return Err(Error::domain(format!(
            "mu(U) = {mu_u} exceeds the density budget a = {a}"
        )));
    }
    let d = g.average_degree();
    let bd = b * &d;
    let abd = a * &bd;
    let k = backward_threshold(&abd)?;

    let pass = ordered_pass(g, |v| u.contains(v), k, &bd);
    let mut container = pass.kept.clone();
    container.union_with(&pass.fingerprint);

    // guarantee (1): T ⊆ U ⊆ C
    if !pass.fingerprint.is_subset_of(u) || !u.is_subset_of(&container) {
        return Err(Error::invariant(
            "containment chain T ⊆ U ⊆ C failed".to_string(),
        ));
    }

    let nv = g.num_vertices() as u64;
    let t_size = pass.fingerprint.count() as u64;
    let container_edges = induced_edges(&g.adj, &container);
    let delta = g.max_degree();

    let (t_bound_f64, mu_bound_f64);
    if bd.is_zero() {
        // edgeless graph: the bounds are vacuous and every edge count is 0
        if container_edges != 0 {
            return Err(Error::invariant("edges in an edgeless graph".to_string()));
        }
        t_bound_f64 = f64::INFINITY;
        mu_bound_f64 = f64::INFINITY;
    } else {
        // exact forms from the accounting argument:
        //   |T| <= a|V|/k + k|V|/bd   and   e(C) <= Δ|T| + bd|V|
        let t_exact = a * BigInt::from(nv) / BigInt::from(k)
            + BigRational::from_integer(BigInt::from(k * nv)) / &bd;
        if BigRational::from_integer(BigInt::from(t_size)) > t_exact {
            return Err(Error::invariant(format!(
                "fingerprint size {t_size} above exact bound {t_exact}"
            )));
        }
        let e_exact =
            BigRational::from_integer(BigInt::from(delta * t_size)) + &bd * BigInt::from(nv);
        if BigRational::from_integer(BigInt::from(container_edges)) > e_exact {
            return Err(Error::invariant(format!(
                "container edges {container_edges} above exact bound {e_exact}"
            )));
        }
        // the stated real-valued bounds
        let a_f = ratio_f64(a);
        let bd_f = ratio_f64(&bd);
        let root = (a_f / bd_f).sqrt();
        t_bound_f64 = 2.0 * nv as f64 * root + nv as f64 / bd_f;
        mu_bound_f64 = 2.0 * delta as f64 * root + delta as f64 / bd_f + bd_f;
        if t_size as f64 > t_bound_f64 * (1.0 + 1e-12) + 1e-9 {
            return Err(Error::invariant(format!(
                "fingerprint size {t_size} above stated bound {t_bound_f64}"
            )));
        }
        let mu_c = container_edges as f64 / nv as f64;
        if mu_c > mu_bound_f64 * (1.0 + 1e-12) + 1e-9 {
            return Err(Error::invariant(format!(
                "container density {mu_c} above stated bound {mu_bound_f64}"
            )));
        }
    }

    Ok(ContainerRun {
        fingerprint: pass.fingerprint,
        container,
        k,
        a: a.clone(),
        b: b.clone(),
        t1_size: pass.t1_size,
        t2_size: pass.t2_size,
        events: pass.events,
        container_edges,
        fingerprint_size_bound: t_bound_f64,
        mu_bound: mu_bound_f64,
    })
}

/// Replay the pass using the fingerprint as the membership oracle. For a
/// fingerprint produced by [`build_container`] under the same (g, a, b),
/// the result equals the original container exactly.
pub fn reconstruct_container(
    g: &OrderedGraph,
    t: &Bitset,
    a: &BigRational,
    b: &BigRational,
) -> Result<Bitset> {
    if !b.is_positive() {
        return Err(Error::domain("b must be positive".to_string()));
    }
    let d = g.average_degree();
    let bd = b * &d;
    let abd = a * &bd;
    let k = backward_threshold(&abd)?;
    let pass = ordered_pass(g, |v| t.contains(v), k, &bd);
    let mut container = pass.kept.clone();
    container.union_with(&pass.fingerprint);
    Ok(container)
}

fn ratio_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::INFINITY)
}

/// Parameters of the Kneser container theorem for one (n, r, eps, beta, m).
#[derive(Clone, Debug, Serialize)]
pub struct BabycontParams {
    pub epsilon: f64,
    pub beta: f64,
    pub m: u64,
    /// 20 / eps^2.
    pub c_hat: f64,
    /// Fingerprint budget.
    pub k1: f64,
    /// Container size excess: families have size at most N + k2.
    pub k2: f64,
    /// ln of the number of containers, sum_{j <= k1} C(V, j).
    pub log_container_count: f64,
    /// True when k1 >= V/3, where the count bound stops being usable.
    pub vacuous: bool,
}

fn check_strip(p: &KneserParams, epsilon: f64) -> Result<()> {
    if epsilon <= 0.0 {
        return Err(Error::domain("epsilon must be positive".to_string()));
    }
    let n = p.n() as f64;
    let r = p.r() as f64;
    if r < epsilon * n || r > (0.5 - epsilon) * n {
        return Err(Error::domain(format!(
            "(n, r) = ({}, {}) outside the strip eps*n <= r <= (1/2 - eps)*n for eps = {epsilon}",
            p.n(),
            p.r()
        )));
    }
    Ok(())
}

/// Evaluate the container-theorem parameters; flags vacuity instead of
/// erroring since desk-scale instances are usually vacuous.
pub fn babycont_params(
    p: &KneserParams,
    epsilon: f64,
    beta: f64,
    m: u64,
) -> Result<BabycontParams> {
    check_strip(p, epsilon)?;
    if beta <= 0.0 {
        return Err(Error::domain("beta must be positive".to_string()));
    }
    let c_hat = 20.0 / (epsilon * epsilon);
    let n_f = p.star_size_f64();
    let m_big_f = p.star_codegree_f64();
    let v_f = p.num_vertices_f64();
    let k1 = c_hat * (n_f / (beta * m_big_f) + (m as f64 * n_f / (beta * m_big_f)).sqrt());
    let k2 = k1 + c_hat * beta * n_f;
    let vacuous = k1 >= v_f / 3.0 || k1.is_nan();
    let log_container_count = log_binomial_sum(p.num_vertices(), k1);
    Ok(BabycontParams {
        epsilon,
        beta,
        m,
        c_hat,
        k1,
        k2,
        log_container_count,
        vacuous,
    })
}

/// ln of sum_{j=0}^{floor(k1)} C(v, j).
fn log_binomial_sum(v: &BigCount, k1: f64) -> f64 {
    let v_f = crate::combinat::count_to_f64(v);
    if k1 < 0.0 {
        return f64::NEG_INFINITY;
    }
    let j_max = k1.floor();
    if j_max >= v_f {
        return v_f * std::f64::consts::LN_2;
    }
    if j_max <= 100_000.0 {
        // exact log-space accumulation
        let mut ln_term = 0.0; // ln C(v, 0)
        let mut ln_sum = 0.0;
        let mut j = 0.0;
        while j < j_max {
            ln_term += ((v_f - j) / (j + 1.0)).ln();
            j += 1.0;
            ln_sum = log_add_exp(ln_sum, ln_term);
        }
        ln_sum
    } else if j_max < v_f / 3.0 {
        // geometric domination: sum <= 2 C(v, j_max)
        std::f64::consts::LN_2 + ln_binom_f64(v_f, j_max)
    } else {
        v_f * std::f64::consts::LN_2
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// ln of the counting bound for families of extremal size with exactly m
/// disjoint pairs. With the specialized beta = (m / NM)^(1/3), valid when
/// m >= N / sqrt(M):  10 * c_hat * n * (m N^2 / M)^(1/3).
/// Below that range a caller-supplied beta selects the general form.
pub fn ym_log_bound(p: &KneserParams, epsilon: f64, m: u64, beta: Option<f64>) -> Result<f64> {
    check_strip(p, epsilon)?;
    let n_f = p.star_size_f64();
    let m_big_f = p.star_codegree_f64();
    let c_hat = 20.0 / (epsilon * epsilon);
    if m as f64 >= n_f / m_big_f.sqrt() {
        Ok(10.0 * c_hat * p.n() as f64 * (m as f64 * n_f * n_f / m_big_f).powf(1.0 / 3.0))
    } else if let Some(beta) = beta {
        ym_log_bound_general(p, epsilon, m, beta)
    } else {
        Err(Error::domain(format!(
            "m = {m} below N/sqrt(M); supply beta for the general form"
        )))
    }
}

/// The general form: ln(2 exp(c_hat n (beta N + 2N/(beta M) + sqrt(4 m N / (beta M))))).
pub fn ym_log_bound_general(p: &KneserParams, epsilon: f64, m: u64, beta: f64) -> Result<f64> {
    check_strip(p, epsilon)?;
    if beta <= 0.0 {
        return Err(Error::domain("beta must be positive".to_string()));
    }
    let n_f = p.star_size_f64();
    let m_big_f = p.star_codegree_f64();
    let c_hat = 20.0 / (epsilon * epsilon);
    let inner = beta * n_f
        + 2.0 * n_f / (beta * m_big_f)
        + (4.0 * m as f64 * n_f / (beta * m_big_f)).sqrt();
    Ok(std::f64::consts::LN_2 + c_hat * p.n() as f64 * inner)
}

/// Supersaturation: a family of size N + k spans at least k M / 2 disjoint
/// pairs. Returns that lower bound.
pub fn supersat_lb(p: &KneserParams, k: u64) -> Result<f64> {
    if p.n() <= 2 * p.r() {
        return Err(Error::domain(format!(
            "supersaturation needs n > 2r, got ({},{})",
            p.n(),
            p.r()
        )));
    }
    let slack = p.num_vertices() - p.star_size();
    if BigCount::from(k) > slack {
        return Err(Error::domain(format!("k = {k} exceeds V - N = {slack}")));
    }
    Ok(k as f64 * p.star_codegree_f64() / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::kneser_graph;
    use crate::mis;
    use crate::sample::{gnp_adjacency, greedy_independent_set, random_vertex_subset};

    fn ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn petersen() -> OrderedGraph {
        let g = kneser_graph(5, 2).unwrap();
        OrderedGraph::new(g.adjacency().to_vec(), VertexOrdering::Identity)
    }

    #[test]
    fn threshold_is_strictly_greater() {
        // abd = 0 -> k = 1; abd = 4 -> k = 3 (needs strict); abd = 3.9 -> k = 2
        assert_eq!(backward_threshold(&ratio(0, 1)).unwrap(), 1);
        assert_eq!(backward_threshold(&ratio(4, 1)).unwrap(), 3);
        assert_eq!(backward_threshold(&ratio(39, 10)).unwrap(), 2);
        assert_eq!(backward_threshold(&ratio(1, 2)).unwrap(), 1);
    }

    #[test]
    fn every_maximum_independent_set_of_petersen_runs_clean() {
        let g = petersen();
        let (size, stars) = mis::maximum_independent_sets(g.adjacency());
        assert_eq!(size, 4);
        assert_eq!(stars.len(), 5);
        let a = ratio(0, 1);
        let b = ratio(1, 1);
        for star in stars {
            let u: Bitset = {
                let mut s = Bitset::new(10);
                for v in star {
                    s.insert(v);
                }
                s
            };
            let run = build_container(&g, &u, &a, &b).unwrap();
            let replay = reconstruct_container(&g, &run.fingerprint, &a, &b).unwrap();
            assert_eq!(replay, run.container);
        }
    }

    #[test]
    fn petersen_star_run() {
        let g = petersen();
        // the star at 1 corresponds to the first 4 colex vertices? use greedy
        let u = greedy_independent_set(g.adjacency());
        let a = ratio(0, 1);
        let b = ratio(1, 1);
        let run = build_container(&g, &u, &a, &b).unwrap();
        assert_eq!(run.k, 1);
        // a = 0 collapses the sqrt terms: |T| <= V/bd = 10/3, mu <= 3/3 + 3 = 4
        assert!((run.fingerprint_size_bound - 10.0 / 3.0).abs() < 1e-12);
        assert!((run.mu_bound - 4.0).abs() < 1e-12);
        assert!(run.fingerprint.is_subset_of(&u));
        assert!(u.is_subset_of(&run.container));

        let replay = reconstruct_container(&g, &run.fingerprint, &a, &b).unwrap();
        assert_eq!(replay, run.container);
    }

    #[test]
    fn empty_fingerprint_replay_is_deterministic() {
        let g = petersen();
        let t = Bitset::new(10);
        let a = ratio(1, 10);
        let b = ratio(1, 1);
        let c1 = reconstruct_container(&g, &t, &a, &b).unwrap();
        let c2 = reconstruct_container(&g, &t, &a, &b).unwrap();
        assert_eq!(c1, c2);
    }

    #[test]
    fn all_sparse_subsets_of_petersen() {
        let g = petersen();
        let nv = 10;
        for mask in 0u32..(1 << nv) {
            let mut u = Bitset::new(nv);
            for v in 0..nv {
                if mask >> v & 1 == 1 {
                    u.insert(v);
                }
            }
            let e_u = induced_edges(g.adjacency(), &u);
            if e_u > 5 {
                continue;
            }
            let a = ratio(e_u as i64, 10);
            for (bn, bd_) in [(1i64, 3i64), (1, 1), (3, 1)] {
                let b = ratio(bn, bd_);
                let run = build_container(&g, &u, &a, &b).unwrap();
                assert!(run.fingerprint.is_subset_of(&u));
                assert!(u.is_subset_of(&run.container));
                let replay = reconstruct_container(&g, &run.fingerprint, &a, &b).unwrap();
                assert_eq!(
                    replay, run.container,
                    "replay mismatch mask={mask} b={bn}/{bd_}"
                );
            }
        }
    }

    #[test]
    fn random_graph_runs_respect_guarantees() {
        for seed in 0..20u64 {
            let adj = gnp_adjacency(40, 0.2, seed);
            let g = OrderedGraph::new(adj, VertexOrdering::Identity);
            let u = greedy_independent_set(g.adjacency());
            let a = g.mu(&u); // 0 for an independent set
            for (bn, bd_) in [(1i64, 3i64), (1, 1), (3, 1)] {
                let b = ratio(bn, bd_);
                let run = build_container(&g, &u, &a, &b).unwrap();
                let replay = reconstruct_container(&g, &run.fingerprint, &a, &b).unwrap();
                assert_eq!(replay, run.container);
            }
            // a denser random subset with its own measured density
            let u = random_vertex_subset(40, 15, seed ^ 0xbeef);
            let a = g.mu(&u);
            let b = ratio(1, 1);
            let run = build_container(&g, &u, &a, &b).unwrap();
            let replay = reconstruct_container(&g, &run.fingerprint, &a, &b).unwrap();
            assert_eq!(replay, run.container);
        }
    }

    #[test]
    fn mu_precondition_is_enforced() {
        let g = petersen();
        let u = Bitset::full(10); // full Petersen: e = 15, mu = 3/2
        let a = ratio(1, 10);
        let b = ratio(1, 1);
        match build_container(&g, &u, &a, &b) {
            Err(Error::Domain(msg)) => assert!(msg.contains("exceeds")),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn backward_degree_events_check_out() {
        for seed in 0..10u64 {
            let adj = gnp_adjacency(30, 0.4, seed);
            let g = OrderedGraph::new(adj, VertexOrdering::Seeded(seed));
            let u = random_vertex_subset(30, 12, seed);
            let a = g.mu(&u);
            let b = ratio(1, 2);
            let run = build_container(&g, &u, &a, &b).unwrap();
            assert_eq!(run.t1_size + run.t2_size, run.fingerprint.count());
            for ev in &run.events {
                match ev.rule {
                    FingerprintRule::BackDegree => assert!(ev.back_in_t >= run.k),
                    FingerprintRule::ForwardSurplus => assert!(ev.back_in_t < run.k),
                }
            }
        }
    }

    #[test]
    fn container_size_obeys_supersaturation_inversion() {
        // any family with e <= mu(C)V pairs has size <= N + 2 e / M, so the
        // container of a sparse family in [7]^(3) satisfies
        // |C| <= N + 2 mu(C) V / M
        let g = kneser_fixture_7_3();
        let (v, n_count, m_count) = (35.0f64, 15.0f64, 3.0f64);
        let mut rng = SplitMix64::new(0x1c0);
        for trial in 0..50u64 {
            let size = 1 + rng.next_below(20);
            let u = crate::sample::random_vertex_subset(35, size as usize, trial);
            let a = g.mu(&u);
            let b = ratio(1, 2);
            let run = build_container(&g, &u, &a, &b).unwrap();
            let mu_c = run.mu_container(&g);
            let cap = n_count + 2.0 * mu_c * v / m_count;
            assert!(
                run.container.count() as f64 <= cap + 1e-9,
                "trial {trial}: |C| = {} above {cap}",
                run.container.count()
            );
        }
    }

    fn kneser_fixture_7_3() -> OrderedGraph {
        let g = kneser_graph(7, 3).unwrap();
        OrderedGraph::new(g.adjacency().to_vec(), VertexOrdering::Identity)
    }

    #[test]
    fn babycont_example_values() {
        let p = KneserParams::new(20, 8).unwrap();
        let bp = babycont_params(&p, 0.1, 0.01, 1000).unwrap();
        assert!((bp.c_hat - 2000.0).abs() < 1e-9);
        // k1 = 2000 (50388/3.3 + sqrt(1000*50388/3.3)) ~ 3.835e7 >> V
        assert!((bp.k1 - 3.835e7).abs() / 3.835e7 < 1e-3);
        assert!(bp.vacuous);

        // m = 0 removes the sqrt term
        let bp0 = babycont_params(&p, 0.1, 0.01, 0).unwrap();
        let expected = 2000.0 * (50388.0 / 3.3);
        assert!((bp0.k1 - expected).abs() / expected < 1e-12);

        // k2 - k1 = c_hat * beta * N always
        for m in [0u64, 17, 1000] {
            let bp = babycont_params(&p, 0.1, 0.01, m).unwrap();
            assert!((bp.k2 - bp.k1 - 2000.0 * 0.01 * 50388.0).abs() < 1e-6);
        }

        // outside the strip
        assert!(babycont_params(&KneserParams::new(20, 9).unwrap(), 0.1, 0.01, 5).is_err());
    }

    #[test]
    fn log_binomial_sum_small_cases() {
        // sum_{j<=2} C(10, j) = 1 + 10 + 45 = 56
        let v = BigCount::from(10u32);
        let got = log_binomial_sum(&v, 2.0);
        assert!((got - 56f64.ln()).abs() < 1e-10);
        // k1 >= V: the whole power set
        let got = log_binomial_sum(&v, 11.0);
        assert!((got - 10.0 * std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn ym_bound_behaviour() {
        let p = KneserParams::new(20, 8).unwrap();
        // monotone in m on a grid (N/sqrt(M) ~ 2774 here)
        let mut prev = f64::NEG_INFINITY;
        for m in [3_000u64, 10_000, 100_000, 1_000_000] {
            let v = ym_log_bound(&p, 0.1, m, None).unwrap();
            assert!(v >= prev);
            assert!(v.is_finite() && v > 0.0);
            prev = v;
        }
        // specialized form dominates the general form at the same beta
        let n_f = p.star_size_f64();
        let m_big = p.star_codegree_f64();
        for m in [3_000u64, 30_000, 300_000] {
            assert!(m as f64 >= n_f / m_big.sqrt());
            let beta = (m as f64 / (n_f * m_big)).powf(1.0 / 3.0);
            let spec = ym_log_bound(&p, 0.1, m, None).unwrap();
            let gen = ym_log_bound_general(&p, 0.1, m, beta).unwrap();
            assert!(
                spec >= gen - std::f64::consts::LN_2 - 1e-9,
                "m={m}: spec {spec} vs gen {gen}"
            );
        }
        // below the threshold the caller must supply beta
        assert!(ym_log_bound(&p, 0.1, 0, None).is_err());
        assert!(ym_log_bound(&p, 0.1, 0, Some(0.05)).unwrap().is_finite());
    }

    #[test]
    fn supersat_values() {
        let p = KneserParams::new(5, 2).unwrap();
        assert_eq!(supersat_lb(&p, 6).unwrap(), 6.0);
        assert_eq!(supersat_lb(&p, 0).unwrap(), 0.0);
        assert!(supersat_lb(&p, 7).is_err());
        assert!(supersat_lb(&KneserParams::new(4, 2).unwrap(), 1).is_err());
    }
}
