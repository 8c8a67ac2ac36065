//! Exact and real-valued binomial arithmetic, entropy, and the monotone root
//! solvers everything else leans on.
//!
//! Counting quantities are arbitrary-precision: the four graph parameters
//! grow superpolynomially and must never round. Probabilities that underflow
//! f64 (like (1-p)^M) live in [`LogReal`].

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact non-negative count. Alias so signatures say what they mean.
pub type BigCount = BigUint;

/// Largest `n` accepted by [`binom_exact`]. Far beyond any feasible
/// experiment; keeps the bitmask set representation consistent.
pub const MAX_BINOM_N: u64 = 256;

/// C(n, k) exactly. Returns 0 when `k < 0` or `k > n`.
pub fn binom_exact(n: u64, k: i64) -> Result<BigCount> {
    if n > MAX_BINOM_N {
        return Err(Error::domain(format!(
            "binom_exact supports n <= {MAX_BINOM_N}, got {n}"
        )));
    }
    if k < 0 || k as u64 > n {
        return Ok(BigUint::zero());
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    Ok(acc)
}

// Pascal triangle for word-sized binomials. C(64, 32) still fits in u64.
const PASCAL_MAX: usize = 64;
static PASCAL: [[u64; PASCAL_MAX + 1]; PASCAL_MAX + 1] = {
    let mut t = [[0u64; PASCAL_MAX + 1]; PASCAL_MAX + 1];
    let mut n = 0;
    while n <= PASCAL_MAX {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
};

/// C(n, k) in a machine word; `n <= 64` only. The rank/unrank hot path.
#[inline]
pub fn binom_u64(n: u32, k: u32) -> u64 {
    debug_assert!(n as usize <= PASCAL_MAX);
    if k > n {
        return 0;
    }
    PASCAL[n as usize][k as usize]
}

/// Generalised binomial coefficient C(x, r) = x(x-1)...(x-r+1) / r!
/// for real x. Agrees with the exact value at integer x >= r.
pub fn gen_binom(x: f64, r: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..r {
        acc *= (x - i as f64) / (i as f64 + 1.0);
    }
    acc
}

/// Inverse of [`gen_binom`] in its strictly increasing branch: the unique
/// x >= r-1 with C(x, r) = m, found by bisection to 1e-9.
pub fn solve_binom_x(m: f64, r: u32) -> Result<f64> {
    if m < 1.0 || m.is_nan() {
        return Err(Error::domain(format!(
            "solve_binom_x needs m >= 1, got {m}"
        )));
    }
    if r < 1 {
        return Err(Error::domain("solve_binom_x needs r >= 1".to_string()));
    }
    let mut lo = r as f64 - 1.0;
    let mut hi = r as f64;
    let mut grow = 1.0;
    while gen_binom(hi, r) < m {
        grow *= 2.0;
        hi = r as f64 - 1.0 + grow;
        if !hi.is_finite() {
            return Err(Error::numeric("solve_binom_x bracket overflow".to_string()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if gen_binom(mid, r) < m {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            return Ok(0.5 * (lo + hi));
        }
    }
    if hi - lo < 1e-9 {
        Ok(0.5 * (lo + hi))
    } else {
        Err(Error::numeric(format!(
            "solve_binom_x failed to converge for m={m}, r={r}"
        )))
    }
}

/// Natural-log entropy H(x) = -x ln x - (1-x) ln(1-x), with H(0) = H(1) = 0.
pub fn entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("entropy domain is [0,1], got {x}")));
    }
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    Ok(-x * x.ln() - (1.0 - x) * (1.0 - x).ln())
}

/// Residual of the threshold equation 3(1-t)H(t/(1-t)) - 2H(t).
pub fn theta_residual(t: f64) -> f64 {
    let h_inner = entropy(t / (1.0 - t)).expect("t/(1-t) in [0,1] for t in (0,1/2]");
    3.0 * (1.0 - t) * h_inner - 2.0 * entropy(t).expect("t in [0,1]")
}

/// The unique root of 3(1-t)H(t/(1-t)) = 2H(t) in (0, 1/2), by bisection.
pub fn solve_theta() -> f64 {
    // Residual is positive near 0 and negative at 1/2.
    let mut lo = 1e-9;
    let mut hi = 0.5;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if theta_residual(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-13 {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// A non-negative real stored as its natural log; log = -inf encodes zero.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct LogReal {
    ln: f64,
}

impl LogReal {
    pub fn zero() -> Self {
        LogReal {
            ln: f64::NEG_INFINITY,
        }
    }

    pub fn from_ln(ln: f64) -> Self {
        LogReal { ln }
    }

    pub fn from_value(v: f64) -> Self {
        assert!(v >= 0.0, "LogReal holds non-negative reals");
        LogReal { ln: v.ln() }
    }

    pub fn from_count(c: &BigCount) -> Self {
        if c.is_zero() {
            return LogReal::zero();
        }
        // Exact for counts representable in f64; for larger counts, split off
        // the high bits so the conversion stays in range.
        match c.to_f64() {
            Some(v) if v.is_finite() => LogReal { ln: v.ln() },
            _ => {
                let bits = c.bits();
                let shift = bits.saturating_sub(64);
                let top = (c >> shift).to_f64().expect("<= 64 bits");
                LogReal {
                    ln: top.ln() + shift as f64 * std::f64::consts::LN_2,
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ln == f64::NEG_INFINITY
    }

    pub fn ln(&self) -> f64 {
        self.ln
    }

    /// The plain value; underflows to 0 or overflows to inf outside f64 range.
    pub fn value(&self) -> f64 {
        self.ln.exp()
    }

    pub fn mul(&self, other: LogReal) -> LogReal {
        if self.is_zero() || other.is_zero() {
            return LogReal::zero();
        }
        LogReal {
            ln: self.ln + other.ln,
        }
    }

    pub fn powi(&self, e: u64) -> LogReal {
        if self.is_zero() && e > 0 {
            return LogReal::zero();
        }
        LogReal {
            ln: self.ln * e as f64,
        }
    }
}

/// Lossy conversion of an exact count for use in real-valued formulas.
pub fn count_to_f64(c: &BigCount) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}

/// ln C(n, k) for real-scale n via the log-gamma route (Stirling series).
/// Used where n is astronomically large and only the log matters.
pub fn ln_binom_f64(n: f64, k: f64) -> f64 {
    if k < 0.0 || k > n {
        return f64::NEG_INFINITY;
    }
    ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0)
}

/// Stirling-series log-gamma, shifted into the asymptotic regime.
/// Relative error < 1e-12 for x >= 1; plenty for log-space bounds.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma domain is x > 0");
    let mut shift = 0.0;
    let mut x = x;
    while x < 12.0 {
        shift -= x.ln();
        x += 1.0;
    }
    const C: [f64; 6] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360_360.0,
    ];
    let half_ln_2pi = 0.918_938_533_204_672_7;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv;
    for c in C {
        series += c * p;
        p *= inv2;
    }
    shift + (x - 0.5) * x.ln() - x + half_ln_2pi + series
}
