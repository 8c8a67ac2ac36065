//! Random sparse Kneser graphs and the threshold experiments on them.
//!
//! Randomness is counter-based throughout: each edge coin is a pure function
//! of (seed, canonical edge index) and each trial derives its own seed from
//! (master seed, trial index), so results never depend on thread scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::Bitset;
use crate::combinat::{count_to_f64, LogReal};
use crate::error::{Error, Result};
use crate::kneser::KneserParams;
use crate::mis;
use crate::rng::{hash2, to_unit};
use crate::setfam::{all_rsets, RSet};

/// Default cap on materialized vertex sets.
pub const DEFAULT_VERTEX_CAP: usize = 2000;

/// The deterministic part of K(n, r) shared by every trial: vertex list,
/// canonical edge list, and per-centre star bitmaps.
#[derive(Clone, Debug)]
pub struct KneserSkeleton {
    params: KneserParams,
    vertices: Vec<RSet>,
    edges: Vec<(u32, u32)>,
    star_masks: Vec<Bitset>,
}

impl KneserSkeleton {
    pub fn new(params: KneserParams, vertex_cap: usize) -> Result<Self> {
        let v = params
            .num_vertices_u64()
            .filter(|&v| v as usize <= vertex_cap)
            .ok_or_else(|| {
                Error::resource(format!(
                    "V = {} exceeds the vertex cap {vertex_cap}",
                    params.num_vertices()
                ))
            })?;
        let vertices: Vec<RSet> = all_rsets(params.n(), params.r()).collect();
        debug_assert_eq!(vertices.len() as u64, v);
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in (i + 1)..vertices.len() {
                if vertices[i].is_disjoint(&vertices[j]) {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        let star_masks = (1..=params.n())
            .map(|x| {
                let mut m = Bitset::new(vertices.len());
                for (i, s) in vertices.iter().enumerate() {
                    if s.contains(x) {
                        m.insert(i);
                    }
                }
                m
            })
            .collect();
        Ok(KneserSkeleton {
            params,
            vertices,
            edges,
            star_masks,
        })
    }

    pub fn params(&self) -> &KneserParams {
        &self.params
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[RSet] {
        &self.vertices
    }
}

/// One sampled subgraph of K(n, r): every edge kept independently with
/// probability p, reproducible from (seed, p) alone.
#[derive(Clone, Debug)]
pub struct SparseKneser<'a> {
    skeleton: &'a KneserSkeleton,
    retained: Vec<bool>,
    adj: Vec<Bitset>,
    pub seed: u64,
    pub p: f64,
}

/// Draw K_p(n, r). Edge e is kept iff the unit hash of (seed, e) is < p,
/// so p = 0 keeps nothing and p = 1 keeps everything.
pub fn sample_kp<'a>(skeleton: &'a KneserSkeleton, p: f64, seed: u64) -> Result<SparseKneser<'a>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("p = {p} outside [0,1]")));
    }
    let nv = skeleton.num_vertices();
    let mut retained = vec![false; skeleton.edges.len()];
    let mut adj = vec![Bitset::new(nv); nv];
    for (e, &(i, j)) in skeleton.edges.iter().enumerate() {
        if to_unit(hash2(seed, e as u64)) < p {
            retained[e] = true;
            adj[i as usize].insert(j as usize);
            adj[j as usize].insert(i as usize);
        }
    }
    Ok(SparseKneser {
        skeleton,
        retained,
        adj,
        seed,
        p,
    })
}

impl SparseKneser<'_> {
    pub fn skeleton(&self) -> &KneserSkeleton {
        self.skeleton
    }

    pub fn retained_edges(&self) -> usize {
        self.retained.iter().filter(|&&b| b).count()
    }

    pub fn adjacency(&self) -> &[Bitset] {
        &self.adj
    }
}

/// Exact independence number of the sampled graph.
pub fn alpha_kp(g: &SparseKneser<'_>, cap: usize) -> Result<usize> {
    if g.adj.len() > cap {
        return Err(Error::resource(format!(
            "{} vertices exceeds solver cap {cap}",
            g.adj.len()
        )));
    }
    Ok(mis::max_independent_set(&g.adj).0)
}

/// E[Y] = n (V - N) (1 - p)^M in log space; Y counts (star, outside set)
/// configurations with every connecting edge absent.
pub fn expected_y(params: &KneserParams, p: f64) -> Result<LogReal> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("p = {p} outside [0,1]")));
    }
    if p == 1.0 {
        return Ok(LogReal::zero());
    }
    let slack = params.num_vertices() - params.star_size();
    let ln = (params.n() as f64).ln()
        + count_to_f64(&slack).ln()
        + count_to_f64(params.star_codegree()) * (1.0 - p).ln();
    Ok(LogReal::from_ln(ln))
}

/// Exact Y on a sampled graph: the number of pairs (centre x, r-set A not
/// containing x) with no retained edge between A and the star at x.
pub fn y_count(g: &SparseKneser<'_>) -> u64 {
    let mut count = 0u64;
    for star in &g.skeleton.star_masks {
        for (i, row) in g.adj.iter().enumerate() {
            if star.contains(i) {
                continue;
            }
            if row.is_disjoint_from(star) {
                count += 1;
            }
        }
    }
    count
}

/// Monte Carlo estimate of E[Y] with its standard error.
#[derive(Clone, Debug, Serialize)]
pub struct YStat {
    pub expected: LogReal,
    pub observed_mean: f64,
    pub trials: u64,
    pub stderr: f64,
}

/// Average y_count over seeded trials and compare with the formula.
pub fn y_stat(skeleton: &KneserSkeleton, p: f64, trials: u64, seed: u64) -> Result<YStat> {
    if trials < 1 {
        return Err(Error::domain("need at least one trial".to_string()));
    }
    let (sum, sum_sq) = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = sample_kp(skeleton, p, hash2(seed, t)).expect("p validated");
            let y = y_count(&g);
            (y as u128, (y as u128) * (y as u128))
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let mean = sum as f64 / trials as f64;
    let var = (sum_sq as f64 / trials as f64 - mean * mean).max(0.0);
    let stderr = (var / trials as f64).sqrt();
    Ok(YStat {
        expected: expected_y(skeleton.params(), p)?,
        observed_mean: mean,
        trials,
        stderr,
    })
}

/// One Monte Carlo point of the threshold curve.
#[derive(Clone, Debug, Serialize)]
pub struct ScanPoint {
    pub p: f64,
    pub trials: u64,
    /// Trials where alpha equalled the star size exactly.
    pub successes: u64,
    pub phat: f64,
    pub wilson_lo: f64,
    pub wilson_hi: f64,
    /// ln E[Y] at this p, for overlay.
    pub expected_y_log: f64,
    /// Mean seconds per trial; informational only, never serialized, so
    /// output files stay byte-identical across runs.
    #[serde(skip)]
    pub mean_runtime_secs: f64,
}

/// 95% Wilson interval for s successes in t trials.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    let z = 1.96f64;
    let t = trials as f64;
    let phat = successes as f64 / t;
    let z2 = z * z;
    let denom = 1.0 + z2 / t;
    let center = (phat + z2 / (2.0 * t)) / denom;
    let half = z * (phat * (1.0 - phat) / t + z2 / (4.0 * t * t)).sqrt() / denom;
    // the bounds are exactly 0 and 1 at the degenerate counts; keep them so
    let lo = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

/// Estimate P(alpha(K_p) = N) from independent trials.
pub fn prob_alpha_equals_n(
    skeleton: &KneserSkeleton,
    p: f64,
    trials: u64,
    seed: u64,
    cap: usize,
) -> Result<ScanPoint> {
    if trials < 1 {
        return Err(Error::domain("need at least one trial".to_string()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("p = {p} outside [0,1]")));
    }
    if skeleton.num_vertices() > cap {
        return Err(Error::resource(format!(
            "V = {} exceeds solver cap {cap}",
            skeleton.num_vertices()
        )));
    }
    let target = skeleton
        .params()
        .star_size_u64()
        .expect("materialized skeleton") as usize;
    let start = std::time::Instant::now();
    let successes: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = sample_kp(skeleton, p, hash2(seed, t)).expect("p validated");
            let alpha = mis::max_independent_set(&g.adj).0;
            debug_assert!(alpha >= target, "a star is always independent");
            u64::from(alpha == target)
        })
        .sum();
    let elapsed = start.elapsed().as_secs_f64();
    let (lo, hi) = wilson_interval(successes, trials);
    Ok(ScanPoint {
        p,
        trials,
        successes,
        phat: successes as f64 / trials as f64,
        wilson_lo: lo,
        wilson_hi: hi,
        expected_y_log: expected_y(skeleton.params(), p)?.ln(),
        mean_runtime_secs: elapsed / trials as f64,
    })
}

/// A full threshold scan over a probability grid.
#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub n: u32,
    pub r: u32,
    pub seed: u64,
    pub trials_per_point: u64,
    pub points: Vec<ScanPoint>,
    /// Indices i where point i+1 sits significantly below point i
    /// (disjoint Wilson intervals in the decreasing direction).
    pub inversions: Vec<usize>,
}

/// Run the scan; per-point seeds derive from (seed, point index).
pub fn threshold_scan(
    skeleton: &KneserSkeleton,
    p_grid: &[f64],
    trials: u64,
    seed: u64,
    cap: usize,
) -> Result<ScanResult> {
    if p_grid.is_empty() {
        return Err(Error::domain("empty probability grid".to_string()));
    }
    let mut points = Vec::with_capacity(p_grid.len());
    for (i, &p) in p_grid.iter().enumerate() {
        points.push(prob_alpha_equals_n(
            skeleton,
            p,
            trials,
            hash2(seed, i as u64),
            cap,
        )?);
    }
    let inversions = points
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1].wilson_hi < w[0].wilson_lo)
        .map(|(i, _)| i)
        .collect();
    Ok(ScanResult {
        n: skeleton.params().n(),
        r: skeleton.params().r(),
        seed,
        trials_per_point: trials,
        points,
        inversions,
    })
}

impl ScanResult {
    /// CSV with the stable column contract.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,trials,successes,phat,wilson_lo,wilson_hi,expected_y_log\n");
        for pt in &self.points {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                pt.p,
                pt.trials,
                pt.successes,
                pt.phat,
                pt.wilson_lo,
                pt.wilson_hi,
                pt.expected_y_log
            ));
        }
        out
    }

    /// JSON mirror with run metadata.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "version": env!("CARGO_PKG_VERSION"),
            "n": self.n,
            "r": self.r,
            "seed": self.seed,
            "trials_per_point": self.trials_per_point,
            "points": self.points,
            "inversions": self.inversions,
        })
    }
}
