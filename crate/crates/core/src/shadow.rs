//! Exact shadows, the real-parameter shadow lower bound, and the edge-count
//! pipeline that combines them.

use serde::Serialize;

use crate::combinat::{gen_binom, solve_binom_x};
use crate::error::{Error, Result};
use crate::extremal::best_star_center;
use crate::kneser::{max_intersecting, KneserParams};
use crate::setfam::{Family, RSet};

/// A shadow size estimate: the real parameter x with C(x, r) = |f|, the
/// implied bound C(x, k), and the exact size when it was computed.
#[derive(Clone, Debug, Serialize)]
pub struct ShadowBound {
    pub exact_size: Option<u64>,
    pub lovasz_x: f64,
    pub lovasz_bound: f64,
}

/// All k-sets contained in some member of `f`.
pub fn shadow_exact(f: &Family, k: u32) -> Result<Family> {
    if k < 1 || k > f.r() {
        return Err(Error::domain(format!(
            "shadow level {k} outside [1, {}]",
            f.r()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    let mut subset_buf = Vec::new();
    for s in f.members() {
        let elems = s.elements();
        subset_buf.clear();
        k_subsets(&elems, k as usize, &mut subset_buf);
        for mask in &subset_buf {
            seen.insert(*mask);
        }
    }
    let sets: Vec<RSet> = seen.into_iter().map(RSet::from_mask).collect();
    Family::from_sets(f.n(), k, sets)
}

/// Masks of all k-subsets of the given (1-based) elements.
fn k_subsets(elems: &[u32], k: usize, out: &mut Vec<u64>) {
    fn rec(elems: &[u32], k: usize, start: usize, mask: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for i in start..=elems.len() - k {
            rec(elems, k - 1, i + 1, mask | 1 << (elems[i] - 1), out);
        }
    }
    rec(elems, k, 0, 0, out);
}

/// The shadow lower bound for an r-uniform family of the given size:
/// solve C(x, r) = size, then the k-shadow has at least C(x, k) members.
pub fn lovasz_shadow_bound(size: u64, r: u32, k: u32) -> Result<ShadowBound> {
    if size < 1 {
        return Err(Error::domain("family size must be at least 1".to_string()));
    }
    if k > r {
        return Err(Error::domain(format!(
            "shadow level {k} above uniformity {r}"
        )));
    }
    let x = solve_binom_x(size as f64, r)?;
    Ok(ShadowBound {
        exact_size: None,
        lovasz_x: x,
        lovasz_bound: gen_binom(x, k),
    })
}

/// Intermediate sizes of the edge-count pipeline, JSON-serializable.
#[derive(Clone, Debug, Default, Serialize)]
pub struct KkTrace {
    /// Distance from intersecting.
    pub ell: u64,
    /// Centre whose star absorbs most of the family; plays the role of the
    /// distinguished ground element, so the complement step relabels the
    /// ground set [n] minus this centre down to [n-1].
    pub center: u32,
    /// |f_center|.
    pub star_size: u64,
    /// N - |f_center|: members the star is missing.
    pub deficiency: u64,
    /// Size of the complement family (always ell) and its uniformity n-r-1.
    pub complement_size: u64,
    pub complement_uniformity: u32,
    /// Size of its (r-1)-shadow, exact or the rounded-up real bound.
    pub shadow_size: u64,
    pub used_lovasz_fallback: bool,
    pub bound: u64,
}

/// Memory budget for exact shadow enumeration inside the pipeline.
const SHADOW_BUDGET: u128 = 10_000_000;

/// Lower-bounds e(f) for a family of extremal size N by counting edges
/// between the star remainder and the rest:
/// take the ell colex-first members outside the best star, complement them
/// within the remaining ground set, and bound how many (r-1)-sets beneath
/// them must meet the star's trace.
pub fn kk_edge_lower_bound(f: &Family, cap: usize) -> Result<(u64, KkTrace)> {
    let params = KneserParams::of(f);
    if params.n() < 2 * params.r() {
        return Err(Error::domain(format!(
            "pipeline needs n >= 2r, got ({},{})",
            params.n(),
            params.r()
        )));
    }
    let n_count = params
        .star_size_u64()
        .ok_or_else(|| Error::domain("star size out of word range".to_string()))?;
    if f.len() as u64 != n_count {
        return Err(Error::domain(format!(
            "family size {} must equal the extremal size {n_count}",
            f.len()
        )));
    }
    let (best, _) = max_intersecting(f, cap)?;
    let l = (f.len() - best) as u64;
    if l == 0 {
        return Ok((0, KkTrace::default()));
    }

    let prox = best_star_center(f);
    let center = prox.center;
    let deficiency = prox.deficiency;

    // colex-first ell members outside the star, complemented within the
    // punctured ground set and relabelled to [n-1]
    let n = f.n();
    let r = f.r();
    let outside = f.members_avoiding(center);
    debug_assert!(outside.len() as u64 >= l);
    let complements: Vec<RSet> = outside
        .iter()
        .take(l as usize)
        .map(|b| {
            let rel = b.drop_ground_element(center);
            rel.complement(n - 1)
        })
        .collect();
    let comp_fam = Family::from_sets(n - 1, n - r - 1, complements)?;

    let shadow_level = r - 1;
    let per_member = crate::combinat::binom_u64(n - r - 1, shadow_level);
    let (shadow_size, used_fallback) =
        if (comp_fam.len() as u128) * (per_member as u128) <= SHADOW_BUDGET {
            let sh = shadow_exact(&comp_fam, shadow_level)?;
            (sh.len() as u64, false)
        } else {
            let sb = lovasz_shadow_bound(comp_fam.len() as u64, n - r - 1, shadow_level)?;
            ((sb.lovasz_bound - 1e-9).ceil().max(0.0) as u64, true)
        };

    let bound = shadow_size.saturating_sub(deficiency);
    let trace = KkTrace {
        ell: l,
        center,
        star_size: prox.star_size,
        deficiency,
        complement_size: comp_fam.len() as u64,
        complement_uniformity: n - r - 1,
        shadow_size,
        used_lovasz_fallback: used_fallback,
        bound,
    };
    Ok((bound, trace))
}
