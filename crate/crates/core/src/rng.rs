//! Counter-based randomness.
//!
//! Every random decision in the library is a pure function of a seed and an
//! index (trial number, edge number, draw number). This makes Monte Carlo
//! runs reproducible bit-for-bit regardless of how trials are scheduled
//! across threads.

/// SplitMix64 finalizer. Full-period bijection on u64 with good avalanche.
#[inline]
pub fn mix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}

/// Hash a (seed, index) pair into a fresh 64-bit value.
#[inline]
pub fn hash2(seed: u64, index: u64) -> u64 {
    mix64(seed ^ mix64(index))
}

/// Hash a (seed, index, subindex) triple.
#[inline]
pub fn hash3(seed: u64, index: u64, sub: u64) -> u64 {
    mix64(hash2(seed, index) ^ mix64(sub.wrapping_add(0x6a09e667f3bcc909)))
}

/// Map a 64-bit value to a uniform f64 in [0, 1).
#[inline]
pub fn to_unit(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Small sequential generator for shuffles and sampling inside one work unit.
/// Seed it from `hash2`/`hash3` so distinct work units get distinct streams.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut x = self.state;
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
        x ^ (x >> 31)
    }

    /// Uniform f64 in [0, 1).
    #[inline]
    pub fn next_unit(&mut self) -> f64 {
        to_unit(self.next_u64())
    }

    /// Uniform integer in [0, bound). Rejection-free modulo is fine here;
    /// bounds are tiny compared to 2^64 so the bias is negligible for
    /// simulation purposes, but we reject anyway to keep draws exact.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound + 1) % bound;
        loop {
            let x = self.next_u64();
            if x <= zone {
                return x % bound;
            }
        }
    }

    /// Sample `k` distinct values from [0, n) in sorted order (Floyd's method,
    /// then sort). Deterministic for a given generator state.
    pub fn sample_distinct(&mut self, n: u64, k: u64) -> Vec<u64> {
        assert!(k <= n);
        let mut chosen = std::collections::HashSet::with_capacity(k as usize);
        let mut picks = Vec::with_capacity(k as usize);
        for j in (n - k)..n {
            let t = self.next_below(j + 1);
            if chosen.insert(t) {
                picks.push(t);
            } else {
                chosen.insert(j);
                picks.push(j);
            }
        }
        picks.sort_unstable();
        picks
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mix64_is_stable() {
        // Frozen outputs; any change here silently breaks every seeded run.
        assert_eq!(mix64(0), 0xe220a8397b1dcdaf);
        assert_eq!(mix64(1), 0x910a2dec89025cc1);
        assert_eq!(mix64(0xdeadbeef), 0x4adfb90f68c9eb9b);
    }

    #[test]
    fn unit_in_range() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..10_000 {
            let u = rng.next_unit();
            assert!((0.0..1.0).contains(&u));
        }
    }

    #[test]
    fn sample_distinct_is_distinct_and_sorted() {
        let mut rng = SplitMix64::new(42);
        for _ in 0..200 {
            let v = rng.sample_distinct(35, 15);
            assert_eq!(v.len(), 15);
            assert!(v.windows(2).all(|w| w[0] < w[1]));
            assert!(v.iter().all(|&x| x < 35));
        }
    }

    #[test]
    fn next_below_covers_range() {
        let mut rng = SplitMix64::new(3);
        let mut seen = [false; 7];
        for _ in 0..1000 {
            seen[rng.next_below(7) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
