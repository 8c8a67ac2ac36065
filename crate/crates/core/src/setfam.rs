//! r-element subsets of [n] as machine-word bitmasks, and families thereof.
//!
//! Sets are ordered by colex rank, which for same-cardinality bitmasks is
//! plain numeric order on the mask. Ranks follow the combinatorial number
//! system, so rank/unrank are mutually inverse bijections with [0, C(n,r)).

use crate::bitset::Bitset;
use crate::combinat::binom_u64;
use crate::error::{Error, Result};

/// Ground-set elements are 1-based, stored in bits 0..n.
pub const MAX_GROUND: u32 = 62;

/// An r-element subset of [n]; bit i-1 set means element i is present.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RSet(u64);

impl RSet {
    pub fn from_mask(mask: u64) -> Self {
        RSet(mask)
    }

    /// Build from 1-based elements, validating range and distinctness.
    pub fn from_elements(elems: &[u32], n: u32) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elems {
            if e < 1 || e > n {
                return Err(Error::domain(format!("element {e} outside [1,{n}]")));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return Err(Error::domain(format!("duplicate element {e}")));
            }
            mask |= bit;
        }
        Ok(RSet(mask))
    }

    #[inline]
    pub fn mask(&self) -> u64 {
        self.0
    }

    #[inline]
    pub fn cardinality(&self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn contains(&self, element: u32) -> bool {
        debug_assert!(element >= 1);
        self.0 >> (element - 1) & 1 == 1
    }

    #[inline]
    pub fn is_disjoint(&self, other: &RSet) -> bool {
        self.0 & other.0 == 0
    }

    /// 1-based elements in ascending order.
    pub fn elements(&self) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.cardinality() as usize);
        let mut m = self.0;
        while m != 0 {
            v.push(m.trailing_zeros() + 1);
            m &= m - 1;
        }
        v
    }

    /// Complement within the ground set [n].
    pub fn complement(&self, n: u32) -> RSet {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        RSet(full & !self.0)
    }

    /// Remove ground element `x` (which must not be a member) and relabel the
    /// remaining ground set to [n-1] by shifting elements above `x` down.
    pub fn drop_ground_element(&self, x: u32) -> RSet {
        debug_assert!(!self.contains(x));
        let low = self.0 & ((1u64 << (x - 1)) - 1);
        let high = self.0 >> x << (x - 1);
        RSet(low | high)
    }

    /// Colex rank within [n]^(r) via the combinatorial number system.
    pub fn rank(&self) -> u64 {
        let mut rank = 0u64;
        let mut m = self.0;
        let mut pos = 1u32;
        while m != 0 {
            let e = m.trailing_zeros(); // 0-based element
            rank += binom_u64(e, pos);
            m &= m - 1;
            pos += 1;
        }
        rank
    }
}

impl std::fmt::Debug for RSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Inverse of [`RSet::rank`]: the i-th r-subset of [n] in colex order.
pub fn unrank(i: u64, n: u32, r: u32) -> Result<RSet> {
    check_params(n, r)?;
    let total = binom_u64(n, r);
    if i >= total {
        return Err(Error::domain(format!(
            "rank {i} out of range [0,{total}) for ({n},{r})"
        )));
    }
    let mut remaining = i;
    let mut mask = 0u64;
    let mut c = n; // candidates are 0-based elements < c
    for pos in (1..=r).rev() {
        // largest 0-based element e < c with C(e, pos) <= remaining
        let mut e = c - 1;
        while binom_u64(e, pos) > remaining {
            e -= 1;
        }
        remaining -= binom_u64(e, pos);
        mask |= 1u64 << e;
        c = e;
    }
    Ok(RSet(mask))
}

fn check_params(n: u32, r: u32) -> Result<()> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::domain(format!(
            "ground set size {n} outside [1,{MAX_GROUND}]"
        )));
    }
    if r < 1 || r > n {
        return Err(Error::domain(format!("uniformity {r} outside [1,{n}]")));
    }
    Ok(())
}

/// Iterate all r-subsets of [n] in colex (ascending mask) order.
pub fn all_rsets(n: u32, r: u32) -> impl Iterator<Item = RSet> {
    let limit = 1u64 << n;
    let mut mask = (1u64 << r) - 1;
    let mut done = false;
    std::iter::from_fn(move || {
        if done || mask >= limit {
            return None;
        }
        let out = RSet(mask);
        // Gosper's hack: next same-popcount mask.
        let c = mask & mask.wrapping_neg();
        let rr = mask + c;
        if c == 0 || rr == 0 {
            done = true;
        } else {
            mask = (((rr ^ mask) >> 2) / c) | rr;
        }
        Some(out)
    })
}

// Rank-space membership bitmaps are only worth materializing while the rank
// space fits comfortably in memory; beyond that, binary search on the sorted
// member list answers the same query.
const INDEX_BITMAP_CAP: u64 = 1 << 27;

#[derive(Clone, Debug)]
enum FamilyIndex {
    Bitmap(Bitset),
    SortedOnly,
}

/// An ordered collection of distinct r-sets with fast membership.
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct Family {
    n: u32,
    r: u32,
    members: Vec<RSet>,
    index: FamilyIndex,
}

impl Family {
    /// Build from arbitrary sets; sorts into colex order and drops duplicates.
    pub fn from_sets(n: u32, r: u32, mut sets: Vec<RSet>) -> Result<Self> {
        check_params(n, r)?;
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for s in &sets {
            if s.cardinality() != r {
                return Err(Error::domain(format!(
                    "set {s:?} has cardinality {} in a {r}-uniform family",
                    s.cardinality()
                )));
            }
            if s.mask() & !full != 0 {
                return Err(Error::domain(format!("set {s:?} has elements beyond {n}")));
            }
        }
        sets.sort_unstable();
        sets.dedup();
        let index = Family::build_index(n, r, &sets);
        Ok(Family {
            n,
            r,
            members: sets,
            index,
        })
    }

    pub fn empty(n: u32, r: u32) -> Result<Self> {
        Family::from_sets(n, r, Vec::new())
    }

    /// The complete family [n]^(r).
    pub fn full(n: u32, r: u32) -> Result<Self> {
        check_params(n, r)?;
        let members: Vec<RSet> = all_rsets(n, r).collect();
        let index = Family::build_index(n, r, &members);
        Ok(Family {
            n,
            r,
            members,
            index,
        })
    }

    /// The star centred at `x`: all r-subsets of [n] containing `x`.
    pub fn star(n: u32, r: u32, x: u32) -> Result<Self> {
        check_params(n, r)?;
        if x < 1 || x > n {
            return Err(Error::domain(format!("star centre {x} outside [1,{n}]")));
        }
        let sets: Vec<RSet> = all_rsets(n, r).filter(|s| s.contains(x)).collect();
        Family::from_sets(n, r, sets)
    }

    fn build_index(n: u32, r: u32, members: &[RSet]) -> FamilyIndex {
        let total = binom_u64(n, r);
        if total <= INDEX_BITMAP_CAP {
            let mut bm = Bitset::new(total as usize);
            for s in members {
                bm.insert(s.rank() as usize);
            }
            FamilyIndex::Bitmap(bm)
        } else {
            FamilyIndex::SortedOnly
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in ascending colex order.
    pub fn members(&self) -> &[RSet] {
        &self.members
    }

    pub fn contains(&self, s: &RSet) -> bool {
        match &self.index {
            FamilyIndex::Bitmap(bm) => {
                let rank = s.rank();
                (rank as usize) < bm.capacity() && bm.contains(rank as usize)
            }
            FamilyIndex::SortedOnly => self.members.binary_search(s).is_ok(),
        }
    }

    /// The subfamily of members containing `x`.
    pub fn subfamily_containing(&self, x: u32) -> Result<Family> {
        if x < 1 || x > self.n {
            return Err(Error::domain(format!("element {x} outside [1,{}]", self.n)));
        }
        let sets: Vec<RSet> = self
            .members
            .iter()
            .filter(|s| s.contains(x))
            .copied()
            .collect();
        Family::from_sets(self.n, self.r, sets)
    }

    /// Members NOT containing `x`, in colex order.
    pub fn members_avoiding(&self, x: u32) -> Vec<RSet> {
        self.members
            .iter()
            .filter(|s| !s.contains(x))
            .copied()
            .collect()
    }

    /// True if every pair of members intersects.
    pub fn is_intersecting(&self) -> bool {
        for (i, a) in self.members.iter().enumerate() {
            for b in &self.members[i + 1..] {
                if a.is_disjoint(b) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest x such that every member contains x, if one exists.
    pub fn common_element(&self) -> Option<u32> {
        if self.members.is_empty() {
            return None;
        }
        let mut common = self.members[0].mask();
        for s in &self.members[1..] {
            common &= s.mask();
        }
        if common == 0 {
            None
        } else {
            Some(common.trailing_zeros() + 1)
        }
    }
}

/// Parse the family text format: a header line `n r`, then one line of r
/// whitespace-separated elements per set. `#` starts a comment.
pub fn parse_family(text: &str) -> Result<Family> {
    let mut header: Option<(u32, u32)> = None;
    let mut sets: Vec<RSet> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let nums: Vec<u32> = tokens
            .iter()
            .map(|t| {
                t.parse::<u32>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("invalid integer {t:?}"),
                })
            })
            .collect::<Result<_>>()?;
        match header {
            None => {
                if nums.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "header must be exactly `n r`".to_string(),
                    });
                }
                let (n, r) = (nums[0], nums[1]);
                check_params(n, r).map_err(|e| Error::Parse {
                    line: line_no,
                    message: e.to_string(),
                })?;
                header = Some((n, r));
            }
            Some((n, r)) => {
                if nums.len() != r as usize {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected {r} elements, found {}", nums.len()),
                    });
                }
                let mut mask = 0u64;
                for &e in &nums {
                    if e < 1 || e > n {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("element {e} outside [1,{n}]"),
                        });
                    }
                    let bit = 1u64 << (e - 1);
                    if mask & bit != 0 {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("duplicate element {e}"),
                        });
                    }
                    mask |= bit;
                }
                if !seen.insert(mask) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "duplicate set".to_string(),
                    });
                }
                sets.push(RSet::from_mask(mask));
            }
        }
    }
    let (n, r) = header.ok_or(Error::Parse {
        line: 1,
        message: "missing `n r` header".to_string(),
    })?;
    Family::from_sets(n, r, sets)
}

/// Serialize in colex order with LF endings; inverse of [`parse_family`].
pub fn serialize_family(f: &Family) -> String {
    let mut out = format!("{} {}\n", f.n(), f.r());
    for s in f.members() {
        let elems: Vec<String> = s.elements().iter().map(|e| e.to_string()).collect();
        out.push_str(&elems.join(" "));
        out.push('\n');
    }
    out
}
