//! Summation helpers.
//!
//! [`LogAccumulator`] sums `f64` logarithms exactly: every `f64` value of
//! `ln p` with `p >= 2` is an integer multiple of `2^-53`, so scaling by
//! `2^53` turns it into an integer and the sum can be kept in an `i128`.
//! The total is therefore independent of summation order, which is what makes
//! segmented/parallel sieving and the decomposition oracle agree bit for bit.
//!
//! [`KahanSum`] is plain compensated summation, used for the prime sums of
//! the analytic side where exactness is not needed.

use std::iter::Sum;
use std::ops::{Add, AddAssign};

const LOG_SCALE: f64 = 9_007_199_254_740_992.0; // 2^53

/// Fixed-point image of `ln p` (scaled by `2^53`).
#[inline]
pub fn log_fixed(p: u64) -> i128 {
    let l = (p as f64).ln();
    debug_assert!(l >= std::f64::consts::LN_2 * 0.999);
    let scaled = l * LOG_SCALE;
    debug_assert_eq!(scaled.fract(), 0.0);
    scaled as i128
}

/// Exact accumulator for sums of `ln p`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct LogAccumulator {
    fixed: i128,
}

impl LogAccumulator {
    pub const fn new() -> Self {
        Self { fixed: 0 }
    }

    #[inline]
    pub fn add_log_of(&mut self, p: u64) {
        self.fixed += log_fixed(p);
    }

    /// Adds `count * ln p`.
    #[inline]
    pub fn add_log_times(&mut self, p: u64, count: u64) {
        self.fixed += log_fixed(p) * count as i128;
    }

    #[inline]
    pub fn add_fixed(&mut self, fixed: i128) {
        self.fixed += fixed;
    }

    pub fn fixed(&self) -> i128 {
        self.fixed
    }

    /// Correctly rounded value of the exact sum.
    pub fn value(&self) -> f64 {
        self.fixed as f64 / LOG_SCALE
    }
}

impl Add for LogAccumulator {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            fixed: self.fixed + rhs.fixed,
        }
    }
}

impl AddAssign for LogAccumulator {
    fn add_assign(&mut self, rhs: Self) {
        self.fixed += rhs.fixed;
    }
}

impl Sum for LogAccumulator {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::new(), Add::add)
    }
}

/// Kahan–Babuška (Neumaier) compensated sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub const fn new() -> Self {
        Self { sum: 0.0, comp: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Extend<f64> for KahanSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut k = KahanSum::new();
        k.extend(iter);
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_fixed_is_exact_image() {
        for p in [2u64, 3, 97, 65_537, 999_999_937, 9_999_999_967] {
            let back = log_fixed(p) as f64 / LOG_SCALE;
            assert_eq!(back, (p as f64).ln());
        }
    }

    #[test]
    fn accumulator_is_order_independent() {
        let ps: Vec<u64> = (2..5000).collect();
        let mut fwd = LogAccumulator::new();
        ps.iter().for_each(|&p| fwd.add_log_of(p));
        let mut rev = LogAccumulator::new();
        ps.iter().rev().for_each(|&p| rev.add_log_of(p));
        assert_eq!(fwd, rev);
        let naive: f64 = ps.iter().map(|&p| (p as f64).ln()).sum();
        assert!((fwd.value() - naive).abs() < 1e-9);
    }

    #[test]
    fn kahan_recovers_small_terms() {
        let mut k = KahanSum::new();
        k.add(1.0);
        for _ in 0..1_000_000 {
            k.add(1e-16);
        }
        assert!((k.value() - (1.0 + 1e-10)).abs() < 1e-15);
    }
}
