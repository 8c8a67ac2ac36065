//! Checkable verification suites over the theorem inequalities.
//!
//! Each suite runs a batch of instances and reports every violation as a
//! serialized counterexample. The CLI `verify` subcommand and the acceptance
//! tests both run these, so a red suite always points at a concrete family.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::combinat::binom_u64;
use crate::container::{build_container, reconstruct_container, OrderedGraph, VertexOrdering};
use crate::error::{Error, Result};
use crate::extremal::{edge_lb_induced_matching, hm_threshold, induced_matching_number_of};
use crate::kneser::{
    alpha_exact, disjoint_pairs, kneser_graph, max_intersecting, maximum_independent_sets,
    InducedGraph, KneserParams,
};
use crate::mis;
use crate::rng::{hash2, SplitMix64};
use crate::sample::{
    gnp_adjacency, greedy_independent_set, greedy_min_edge_family, induced_edges, random_family,
    random_vertex_subset,
};
use crate::setfam::{serialize_family, Family, RSet};
use crate::shadow::{kk_edge_lower_bound, lovasz_shadow_bound, shadow_exact};

/// Outcome of one suite run.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: u64,
    pub failures: Vec<String>,
    pub summary: String,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn subfamily(full: &Family, mask: u64) -> Family {
    let sets: Vec<RSet> = full
        .members()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, s)| *s)
        .collect();
    Family::from_sets(full.n(), full.r(), sets).expect("subfamily of a valid family")
}

/// Exact independence number equals the star size, and (when asked) every
/// maximum witness is a star.
pub fn ekr_suite(
    instances: &[(u32, u32)],
    witness_instances: &[(u32, u32)],
    cap: usize,
) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for &(n, r) in instances {
        let params = KneserParams::new(n, r)?;
        let expected = params
            .star_size_u64()
            .ok_or_else(|| Error::domain("instance too large"))?;
        let g = kneser_graph(n, r)?;
        let (alpha, witness) = alpha_exact(&g, cap)?;
        if alpha as u64 != expected {
            failures.push(format!(
                "K({n},{r}): alpha = {alpha}, expected {expected}; witness:\n{}",
                serialize_family(&witness)
            ));
        } else {
            notes.push(format!("K({n},{r}): alpha={alpha}={expected}"));
        }
    }
    for &(n, r) in witness_instances {
        if n <= 2 * r {
            return Err(Error::domain(format!(
                "witness uniqueness needs n > 2r, got ({n},{r})"
            )));
        }
        let g = kneser_graph(n, r)?;
        let (_, witnesses) = maximum_independent_sets(&g, cap)?;
        let all_stars = witnesses.iter().all(|w| w.common_element().is_some());
        if !all_stars {
            for w in witnesses.iter().filter(|w| w.common_element().is_none()) {
                failures.push(format!(
                    "K({n},{r}): non-star maximum independent set:\n{}",
                    serialize_family(w)
                ));
            }
        } else {
            notes.push(format!(
                "K({n},{r}): {} maximum witnesses, all stars",
                witnesses.len()
            ));
        }
    }
    Ok(SuiteReport {
        suite: "ekr".into(),
        instances: (instances.len() + witness_instances.len()) as u64,
        failures,
        summary: notes.join("; "),
    })
}

/// Induced matching number of the full Kneser graph equals C(2r-1, r-1).
pub fn matching_suite(instances: &[(u32, u32)], cap: usize) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for &(n, r) in instances {
        let g = kneser_graph(n, r)?;
        let m = crate::extremal::induced_matching_number(&g, cap)?;
        let expected = binom_u64(2 * r - 1, r - 1);
        if m as u64 != expected {
            failures.push(format!("K({n},{r}): m = {m}, expected {expected}"));
        } else {
            notes.push(format!("K({n},{r}): m={m}=C({},{})", 2 * r - 1, r - 1));
        }
    }
    Ok(SuiteReport {
        suite: "matching".into(),
        instances: instances.len() as u64,
        failures,
        summary: notes.join("; "),
    })
}

fn check_setpairs(f: &Family, cap: usize, failures: &mut Vec<String>) -> Result<()> {
    let e = disjoint_pairs(f);
    let (best, _) = max_intersecting(f, cap)?;
    let l = (f.len() - best) as f64;
    let r_bound = KneserParams::of(f).set_pairs_bound_f64();
    let lb = l * l / (2.0 * r_bound);
    if (e as f64) < lb - 1e-9 {
        failures.push(format!(
            "e = {e} below ell^2/2R = {lb}:\n{}",
            serialize_family(f)
        ));
    }
    Ok(())
}

/// e(f) >= ell(f)^2 / 2R over every subfamily of [n]^(r). Exhaustive;
/// requires V <= 20.
pub fn setpairs_exhaustive(n: u32, r: u32, cap: usize) -> Result<SuiteReport> {
    let full = Family::full(n, r)?;
    let v = full.len();
    if v > 20 {
        return Err(Error::resource(format!(
            "exhaustive subfamily scan over V = {v} is infeasible"
        )));
    }
    let mut failures = Vec::new();
    let total = 1u64 << v;
    for mask in 0..total {
        let f = subfamily(&full, mask);
        check_setpairs(&f, cap, &mut failures)?;
    }
    Ok(SuiteReport {
        suite: "setpairs".into(),
        instances: total,
        failures,
        summary: format!("exhaustive over {total} subfamilies of [{n}]^({r})"),
    })
}

/// The same bound on seeded random subfamilies of [n]^(r).
pub fn setpairs_random(n: u32, r: u32, trials: u64, seed: u64, cap: usize) -> Result<SuiteReport> {
    let total = binom_u64(n, r);
    let mut failures = Vec::new();
    for t in 0..trials {
        let mut rng = SplitMix64::new(hash2(seed, t));
        let size = rng.next_below(total + 1);
        let f = random_family(n, r, size, hash2(seed, t) ^ 1);
        check_setpairs(&f, cap, &mut failures)?;
    }
    Ok(SuiteReport {
        suite: "setpairs".into(),
        instances: trials,
        failures,
        summary: format!("{trials} random subfamilies of [{n}]^({r})"),
    })
}

/// |E| >= (|V| - alpha)^2 / 4m with exact alpha and m, on seeded random
/// graphs and on the listed Kneser instances.
pub fn matching_bound_suite(
    graph_count: u64,
    max_vertices: usize,
    seed: u64,
    kneser_instances: &[(u32, u32)],
) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let check = |adj: &[Bitset], label: &str, failures: &mut Vec<String>| {
        let nv = adj.len() as u64;
        let edges: u64 = adj.iter().map(|r| r.count() as u64).sum::<u64>() / 2;
        let (alpha, _) = mis::max_independent_set(adj);
        let m = induced_matching_number_of(adj) as u64;
        if m == 0 {
            if edges != 0 {
                failures.push(format!("{label}: m = 0 with {edges} edges"));
            }
            return;
        }
        let lb = edge_lb_induced_matching(nv, alpha as u64, m).expect("valid inputs");
        if (edges as f64) < lb - 1e-9 {
            failures.push(format!(
                "{label}: |E| = {edges} below (|V|-alpha)^2/4m = {lb}"
            ));
        }
    };
    for t in 0..graph_count {
        let mut rng = SplitMix64::new(hash2(seed, t));
        let nv = 8 + rng.next_below((max_vertices - 7) as u64) as usize;
        let p = 0.15 + 0.45 * rng.next_unit();
        let adj = gnp_adjacency(nv, p, hash2(seed, t) ^ 0x9e37);
        check(&adj, &format!("G({nv},{p:.2}) seed {t}"), &mut failures);
    }
    for &(n, r) in kneser_instances {
        let g = kneser_graph(n, r)?;
        check(g.adjacency(), &format!("K({n},{r})"), &mut failures);
    }
    Ok(SuiteReport {
        suite: "matching-bound".into(),
        instances: graph_count + kneser_instances.len() as u64,
        failures,
        summary: format!(
            "{graph_count} random graphs (<= {max_vertices} vertices) plus {} Kneser instances",
            kneser_instances.len()
        ),
    })
}

/// Every intersecting family at or above the nontriviality threshold is a
/// star. Exhaustive enumeration of intersecting families of that size.
pub fn hilton_milner_suite(n: u32, r: u32) -> Result<SuiteReport> {
    let params = KneserParams::new(n, r)?;
    let threshold = hm_threshold(&params)?;
    let threshold: u64 = threshold
        .try_into()
        .map_err(|_| Error::resource("threshold out of word range"))?;
    let full = Family::full(n, r)?;
    let g = InducedGraph::from_family(full.clone());
    let mut checked = 0u64;
    let mut failures = Vec::new();
    mis::for_each_independent_set_of_size_at_least(g.adjacency(), threshold as usize, &mut |vs| {
        checked += 1;
        let sets: Vec<RSet> = vs.iter().map(|&v| full.members()[v]).collect();
        let fam = Family::from_sets(n, r, sets).expect("members of full family");
        if fam.common_element().is_none() {
            failures.push(format!(
                "non-trivial intersecting family of size {} >= {threshold}:\n{}",
                fam.len(),
                serialize_family(&fam)
            ));
        }
    });
    Ok(SuiteReport {
        suite: "hilton-milner".into(),
        instances: checked,
        failures,
        summary: format!(
            "all {checked} intersecting families of size >= {threshold} in [{n}]^({r}) are stars"
        ),
    })
}

/// Exact shadows dominate the real-parameter bound, with equality on the
/// initial segments [x]^(r).
pub fn shadow_suite(
    n: u32,
    r: u32,
    exhaustive_max_size: usize,
    trials: u64,
    seed: u64,
) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let mut checked = 0u64;
    let check = |f: &Family, k: u32, failures: &mut Vec<String>| -> Result<()> {
        let sh = shadow_exact(f, k)?;
        let b = lovasz_shadow_bound(f.len() as u64, f.r(), k)?;
        if (sh.len() as f64) < b.lovasz_bound - 1e-6 {
            failures.push(format!(
                "shadow size {} below bound {}:\n{}",
                sh.len(),
                b.lovasz_bound,
                serialize_family(f)
            ));
        }
        Ok(())
    };

    // exhaustive small families
    let full = Family::full(n, r)?;
    let members = full.members();
    let mut stack: Vec<usize> = Vec::new();
    exhaustive_subsets(members.len(), exhaustive_max_size, &mut stack, &mut |idx| {
        if idx.is_empty() {
            return Ok(());
        }
        let sets: Vec<RSet> = idx.iter().map(|&i| members[i]).collect();
        let f = Family::from_sets(n, r, sets)?;
        checked += 1;
        for k in 1..r {
            check(&f, k, &mut failures)?;
        }
        Ok(())
    })?;

    // random larger families across a few shapes
    let shapes = [(7u32, 3u32), (8, 4), (9, 3), (10, 4)];
    for t in 0..trials {
        let (fn_, fr) = shapes[(t % shapes.len() as u64) as usize];
        let total = binom_u64(fn_, fr);
        let mut rng = SplitMix64::new(hash2(seed, t));
        let size = 1 + rng.next_below(total.min(40));
        let f = random_family(fn_, fr, size, hash2(seed, t) ^ 2);
        checked += 1;
        check(&f, fr - 1, &mut failures)?;
    }

    // equality at initial segments
    for x in r..=n {
        let seg_sets: Vec<RSet> = Family::full(x, r)?.members().to_vec();
        let seg = Family::from_sets(n, r, seg_sets)?;
        for k in 1..=r {
            let sh = shadow_exact(&seg, k)?;
            let b = lovasz_shadow_bound(seg.len() as u64, r, k)?;
            checked += 1;
            if (sh.len() as f64 - b.lovasz_bound).abs() > 1e-6 {
                failures.push(format!(
                    "initial segment [{x}]^({r}): shadow {} != bound {}",
                    sh.len(),
                    b.lovasz_bound
                ));
            }
        }
    }

    Ok(SuiteReport {
        suite: "shadow".into(),
        instances: checked,
        failures,
        summary: format!(
            "exhaustive [{n}]^({r}) families up to size {exhaustive_max_size}, {trials} random, initial segments"
        ),
    })
}

fn exhaustive_subsets(
    n: usize,
    max_size: usize,
    stack: &mut Vec<usize>,
    cb: &mut impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    fn rec(
        n: usize,
        max_size: usize,
        start: usize,
        stack: &mut Vec<usize>,
        cb: &mut impl FnMut(&[usize]) -> Result<()>,
    ) -> Result<()> {
        cb(stack)?;
        if stack.len() == max_size {
            return Ok(());
        }
        for i in start..n {
            stack.push(i);
            rec(n, max_size, i + 1, stack, cb)?;
            stack.pop();
        }
        Ok(())
    }
    rec(n, max_size, 0, stack, cb)
}

/// The edge-count pipeline stays below the exact disjoint-pair count on
/// random extremal-size families.
pub fn kk_pipeline_suite(
    n: u32,
    r: u32,
    trials: u64,
    seed: u64,
    cap: usize,
) -> Result<SuiteReport> {
    let params = KneserParams::new(n, r)?;
    let n_count = params
        .star_size_u64()
        .ok_or_else(|| Error::resource("instance too large"))?;
    let total = binom_u64(n, r);
    let mut failures = Vec::new();
    for t in 0..trials {
        let f = random_family(n, r, n_count, hash2(seed, t));
        let (bound, trace) = kk_edge_lower_bound(&f, cap)?;
        let e = disjoint_pairs(&f);
        if bound > e {
            failures.push(format!(
                "pipeline bound {bound} above exact e = {e} (trace {trace:?}):\n{}",
                serialize_family(&f)
            ));
        }
    }
    let _ = total;
    Ok(SuiteReport {
        suite: "shadow-pipeline".into(),
        instances: trials,
        failures,
        summary: format!("{trials} random size-{n_count} families in [{n}]^({r})"),
    })
}

/// Container guarantees and replay identity on every sparse subset of
/// K(n, r) (e(U) <= max_edges) under each supplied b.
pub fn container_kneser_suite(
    n: u32,
    r: u32,
    max_edges: u64,
    b_values: &[(i64, i64)],
) -> Result<SuiteReport> {
    let g = kneser_graph(n, r)?;
    let nv = g.num_vertices();
    if nv > 20 {
        return Err(Error::resource(format!(
            "exhaustive subset scan over V = {nv} is infeasible"
        )));
    }
    let og = OrderedGraph::new(g.adjacency().to_vec(), VertexOrdering::Identity);
    let mut failures = Vec::new();
    let mut runs = 0u64;
    for mask in 0u64..(1 << nv) {
        let mut u = Bitset::new(nv);
        for v in 0..nv {
            if mask >> v & 1 == 1 {
                u.insert(v);
            }
        }
        let e_u = induced_edges(og.adjacency(), &u);
        if e_u > max_edges {
            continue;
        }
        let a = BigRational::new(BigInt::from(e_u), BigInt::from(nv as u64));
        for &(bn, bd) in b_values {
            let b = BigRational::new(BigInt::from(bn), BigInt::from(bd));
            runs += 1;
            match build_container(&og, &u, &a, &b) {
                Ok(run) => {
                    let replay = reconstruct_container(&og, &run.fingerprint, &a, &b)?;
                    if replay != run.container {
                        failures.push(format!(
                            "replay mismatch for U = {:?}, b = {bn}/{bd}",
                            u.to_vec()
                        ));
                    }
                }
                Err(err) => failures.push(format!("U = {:?}, b = {bn}/{bd}: {err}", u.to_vec())),
            }
        }
    }
    Ok(SuiteReport {
        suite: "container".into(),
        instances: runs,
        failures,
        summary: format!(
            "K({n},{r}): all subsets with e(U) <= {max_edges}, {} b values",
            b_values.len()
        ),
    })
}

/// Container guarantees and replay identity on seeded G(nv, p) graphs.
pub fn container_gnp_suite(
    count: u64,
    nv: usize,
    p: f64,
    b_values: &[(i64, i64)],
    seed: u64,
) -> Result<SuiteReport> {
    let mut failures = Vec::new();
    let mut runs = 0u64;
    for t in 0..count {
        let adj = gnp_adjacency(nv, p, hash2(seed, t));
        let og = OrderedGraph::new(adj, VertexOrdering::Identity);
        // one independent set and two random subsets with measured density
        let mut subsets = vec![greedy_independent_set(og.adjacency())];
        subsets.push(random_vertex_subset(nv, nv / 3, hash2(seed, t) ^ 5));
        subsets.push(random_vertex_subset(nv, nv / 2, hash2(seed, t) ^ 6));
        for u in subsets {
            let a = og.mu(&u);
            for &(bn, bd) in b_values {
                let b = BigRational::new(BigInt::from(bn), BigInt::from(bd));
                runs += 1;
                match build_container(&og, &u, &a, &b) {
                    Ok(run) => {
                        let replay = reconstruct_container(&og, &run.fingerprint, &a, &b)?;
                        if replay != run.container {
                            failures.push(format!("replay mismatch, graph seed {t}"));
                        }
                    }
                    Err(err) => failures.push(format!("graph seed {t}: {err}")),
                }
            }
        }
    }
    Ok(SuiteReport {
        suite: "container".into(),
        instances: runs,
        failures,
        summary: format!("{count} seeded G({nv},{p}) graphs, greedy + random subsets"),
    })
}

/// Supersaturation: families of size N + k span at least kM/2 disjoint
/// pairs; random and greedy-adversarial instances.
pub fn supersat_suite(n: u32, r: u32, trials: u64, seed: u64) -> Result<SuiteReport> {
    let params = KneserParams::new(n, r)?;
    if n <= 2 * r {
        return Err(Error::domain("supersaturation needs n > 2r"));
    }
    let v = params.num_vertices_u64().expect("desk scale");
    let n_count = params.star_size_u64().expect("desk scale");
    let m_f = params.star_codegree_f64();
    let slack = v - n_count;
    let mut failures = Vec::new();
    let check = |f: &Family, k: u64, label: &str, failures: &mut Vec<String>| {
        let e = disjoint_pairs(f);
        let lb = k as f64 * m_f / 2.0;
        if (e as f64) < lb - 1e-9 {
            failures.push(format!(
                "{label}: e = {e} below kM/2 = {lb} (k = {k}):\n{}",
                serialize_family(f)
            ));
        }
    };
    for t in 0..trials {
        let mut rng = SplitMix64::new(hash2(seed, t));
        let k = 1 + rng.next_below(slack);
        let f = random_family(n, r, n_count + k, hash2(seed, t) ^ 3);
        check(&f, k, "random", &mut failures);
    }
    for k in 1..=slack {
        let f = greedy_min_edge_family(n, r, n_count + k);
        check(&f, k, "greedy adversary", &mut failures);
    }
    Ok(SuiteReport {
        suite: "supersat".into(),
        instances: trials + slack,
        failures,
        summary: format!("{trials} random + {slack} greedy families of size N+k in [{n}]^({r})"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kneser::DEFAULT_SOLVER_CAP;

    #[test]
    fn ekr_small() {
        let rep = ekr_suite(&[(5, 2), (6, 2)], &[(5, 2)], DEFAULT_SOLVER_CAP).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(rep.summary.contains("5 maximum witnesses, all stars"));
    }

    #[test]
    fn matching_small() {
        let rep = matching_suite(&[(4, 2), (5, 2)], 40).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn setpairs_exhaustive_petersen() {
        let rep = setpairs_exhaustive(5, 2, DEFAULT_SOLVER_CAP).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.instances, 1024);
    }

    #[test]
    fn setpairs_random_quick() {
        let rep = setpairs_random(7, 3, 100, 1, DEFAULT_SOLVER_CAP).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn hilton_milner_petersen() {
        let rep = hilton_milner_suite(5, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        // exactly the 5 stars reach the threshold at (5,2)
        assert_eq!(rep.instances, 5);
    }

    #[test]
    fn matching_bound_quick() {
        let rep = matching_bound_suite(25, 16, 3, &[(4, 2), (5, 2)]).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn shadow_quick() {
        let rep = shadow_suite(6, 3, 3, 50, 2).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn kk_pipeline_quick() {
        let rep = kk_pipeline_suite(7, 3, 50, 4, DEFAULT_SOLVER_CAP).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn container_kneser_quick() {
        let rep = container_kneser_suite(5, 2, 2, &[(1, 1)]).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn container_gnp_quick() {
        let rep = container_gnp_suite(5, 25, 0.2, &[(1, 1), (1, 3)], 7).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }

    #[test]
    fn supersat_quick() {
        let rep = supersat_suite(7, 3, 100, 5).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}
