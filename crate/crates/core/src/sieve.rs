//! Segmented factorization sieve and the middle prime factor.
//!
//! Each [`SieveSegment`] holds the complete factorization of every integer in
//! a half-open range `[lo, hi)`: the prime factors below the base-prime bound
//! (with exponents) in increasing order, plus at most one leftover prime
//! cofactor above the bound.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes;
use crate::sum::LogAccumulator;

/// Largest `x` accepted by the sieve drivers.
pub const MAX_SIEVE_LIMIT: u64 = 10_000_000_000;

/// Default number of integers per segment.
pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 20;

/// Counting function `nu`: distinct prime factors (`omega`) or prime factors
/// with multiplicity (`Omega`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub enum NuMode {
    #[serde(rename = "omega")]
    Distinct,
    #[serde(rename = "Omega")]
    Multiplicity,
}

impl NuMode {
    pub const BOTH: [NuMode; 2] = [NuMode::Distinct, NuMode::Multiplicity];

    /// Radius of convergence of the local Euler factors in `z`:
    /// infinite for `omega`, 2 for `Omega`.
    pub fn radius(self) -> f64 {
        match self {
            NuMode::Distinct => f64::INFINITY,
            NuMode::Multiplicity => 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NuMode::Distinct => "omega",
            NuMode::Multiplicity => "Omega",
        }
    }
}

impl fmt::Display for NuMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NuMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "omega" | "w" | "distinct" => Ok(NuMode::Distinct),
            "Omega" | "W" | "multiplicity" => Ok(NuMode::Multiplicity),
            other => Err(Error::Domain(format!("unknown nu mode {other:?}"))),
        }
    }
}

/// Prime factorization of one integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization, checking the invariants.
    pub fn new(n: u64, factors: Vec<(u64, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("factorization of 0".into()));
        }
        let mut prod: u64 = 1;
        for (i, &(p, e)) in factors.iter().enumerate() {
            if e == 0 || p < 2 || (i > 0 && factors[i - 1].0 >= p) {
                return Err(Error::Domain(format!("malformed factor list for {n}")));
            }
            for _ in 0..e {
                prod = prod
                    .checked_mul(p)
                    .ok_or_else(|| Error::Domain(format!("factor product overflows for {n}")))?;
            }
        }
        if prod != n {
            return Err(Error::Domain(format!("factors multiply to {prod}, not {n}")));
        }
        Ok(Self { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn nu(&self, mode: NuMode) -> u32 {
        match mode {
            NuMode::Distinct => self.omega(),
            NuMode::Multiplicity => self.big_omega(),
        }
    }

    /// Smallest prime factor `P^-(n)`.
    pub fn smallest(&self) -> Option<u64> {
        self.factors.first().map(|f| f.0)
    }

    /// Largest prime factor `P^+(n)`.
    pub fn largest(&self) -> Option<u64> {
        self.factors.last().map(|f| f.0)
    }

    /// The `ceil(nu(n)/2)`-th prime factor in increasing order, counted
    /// without (`omega`) or with (`Omega`) multiplicity.
    pub fn middle_prime(&self, mode: NuMode) -> Result<u64> {
        middle_of(self.factors.iter().copied(), self.nu(mode), mode)
            .ok_or_else(|| Error::Undefined(format!("no middle prime factor for n = {}", self.n)))
    }
}

/// Free-function form of [`Factorization::middle_prime`].
pub fn middle_prime(f: &Factorization, mode: NuMode) -> Result<u64> {
    f.middle_prime(mode)
}

#[inline]
fn middle_of(factors: impl Iterator<Item = (u64, u32)>, nu: u32, mode: NuMode) -> Option<u64> {
    if nu == 0 {
        return None;
    }
    let target = nu.div_ceil(2);
    let mut seen = 0;
    for (p, e) in factors {
        seen += match mode {
            NuMode::Distinct => 1,
            NuMode::Multiplicity => e,
        };
        if seen >= target {
            return Some(p);
        }
    }
    None
}

/// Factorizations of all integers in `[lo, hi)`.
#[derive(Debug, Clone)]
pub struct SieveSegment {
    lo: u64,
    hi: u64,
    offsets: Vec<u32>,
    primes: Vec<u32>,
    exps: Vec<u8>,
    large: Vec<u64>,
}

impl SieveSegment {
    /// Sieves `[lo, hi)` with `base_primes`, which must contain every prime
    /// `<= sqrt(hi - 1)` in increasing order (extra primes are ignored).
    pub fn build(lo: u64, hi: u64, base_primes: &[u32]) -> Result<Self> {
        if lo == 0 || hi <= lo {
            return Err(Error::Range(format!("bad segment [{lo}, {hi})")));
        }
        let len = (hi - lo) as usize;
        let bound = isqrt(hi - 1);
        let base_len = base_primes.partition_point(|&p| (p as u64) <= bound);
        let base = &base_primes[..base_len];
        // a prime above the bound in the table proves coverage
        if base_len == base_primes.len() && !covers(base, bound) {
            return Err(Error::Range(format!(
                "base primes do not reach sqrt({}) = {bound}",
                hi - 1
            )));
        }

        let mut counts = vec![0u32; len + 1];
        for &p in base {
            let p = p as u64;
            let mut m = first_multiple(lo, p);
            while m < hi {
                counts[(m - lo) as usize] += 1;
                m += p;
            }
        }
        let mut offsets = counts;
        let mut acc = 0u32;
        for c in offsets.iter_mut() {
            let here = *c;
            *c = acc;
            acc += here;
        }
        let total = acc as usize;
        let mut primes_out = vec![0u32; total];
        let mut exps = vec![0u8; total];
        let mut fill = vec![0u32; len];
        let mut prod = vec![1u64; len];
        for &p32 in base {
            let p = p32 as u64;
            let mut m = first_multiple(lo, p);
            while m < hi {
                let i = (m - lo) as usize;
                let slot = (offsets[i] + fill[i]) as usize;
                primes_out[slot] = p32;
                exps[slot] = 1;
                fill[i] += 1;
                prod[i] *= p;
                m += p;
            }
            let mut pk = p * p;
            while pk < hi {
                let mut m = first_multiple(lo, pk);
                while m < hi {
                    let i = (m - lo) as usize;
                    let slot = (offsets[i] + fill[i] - 1) as usize;
                    exps[slot] += 1;
                    prod[i] *= p;
                    m += pk;
                }
                match pk.checked_mul(p) {
                    Some(next) => pk = next,
                    None => break,
                }
            }
        }
        let large = prod
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let rest = (lo + i as u64) / d;
                if rest > 1 {
                    rest
                } else {
                    0
                }
            })
            .collect();
        Ok(Self {
            lo,
            hi,
            offsets,
            primes: primes_out,
            exps,
            large,
        })
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    fn index(&self, n: u64) -> Result<usize> {
        if n < self.lo || n >= self.hi {
            return Err(Error::Range(format!(
                "{n} outside segment [{}, {})",
                self.lo, self.hi
            )));
        }
        Ok((n - self.lo) as usize)
    }

    /// Iterates the `(prime, exponent)` pairs of `lo + i` in increasing order.
    #[inline]
    pub fn factors_at(&self, i: usize) -> impl Iterator<Item = (u64, u32)> + '_ {
        let (a, b) = (self.offsets[i] as usize, self.offsets[i + 1] as usize);
        let large = self.large[i];
        self.primes[a..b]
            .iter()
            .zip(&self.exps[a..b])
            .map(|(&p, &e)| (p as u64, e as u32))
            .chain((large > 0).then_some((large, 1)))
    }

    /// `(omega, Omega)` of `lo + i`.
    #[inline]
    pub fn counts_at(&self, i: usize) -> (u32, u32) {
        let (a, b) = (self.offsets[i] as usize, self.offsets[i + 1] as usize);
        let extra = (self.large[i] > 0) as u32;
        let big: u32 = self.exps[a..b].iter().map(|&e| e as u32).sum();
        ((b - a) as u32 + extra, big + extra)
    }

    /// Smallest prime factor of `n` (`None` for `n = 1`).
    pub fn spf(&self, n: u64) -> Result<Option<u64>> {
        let i = self.index(n)?;
        Ok(self.factors_at(i).next().map(|f| f.0))
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    /// Middle prime of `lo + i`, if `lo + i >= 2`.
    #[inline]
    pub fn middle_at(&self, i: usize, mode: NuMode) -> Option<(u64, u32)> {
        let (w, big) = self.counts_at(i);
        let nu = match mode {
            NuMode::Distinct => w,
            NuMode::Multiplicity => big,
        };
        middle_of(self.factors_at(i), nu, mode).map(|p| (p, nu))
    }
}

fn covers(base: &[u32], bound: u64) -> bool {
    // base ends below bound: fine only if no prime lies in (last, bound]
    let last = base.last().map_or(1, |&p| p as u64);
    (last + 1..=bound).all(|k| (2..).take_while(|d| d * d <= k).any(|d| k % d == 0))
}

#[inline]
fn first_multiple(lo: u64, p: u64) -> u64 {
    lo.div_ceil(p) * p
}

/// Integer square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

/// Factorizes `n` using a segment that contains it.
pub fn factorize(n: u64, table: &SieveSegment) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::Domain(format!("factorize requires n >= 2, got {n}")));
    }
    let i = table.index(n)?;
    Factorization::new(n, table.factors_at(i).collect())
}

/// Segmented sieve over `[1, limit]`.
#[derive(Debug, Clone)]
pub struct SegmentedSieve {
    limit: u64,
    segment_size: usize,
    base: std::sync::Arc<Vec<u32>>,
}

impl SegmentedSieve {
    pub fn new(limit: u64, segment_size: usize) -> Result<Self> {
        if limit == 0 || limit > MAX_SIEVE_LIMIT {
            return Err(Error::Range(format!(
                "sieve limit {limit} outside [1, {MAX_SIEVE_LIMIT}]"
            )));
        }
        if segment_size < 16 {
            return Err(Error::Range(format!("segment size {segment_size} too small")));
        }
        Ok(Self {
            limit,
            segment_size,
            base: primes::primes_up_to(isqrt(limit).max(2)),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Segment bounds covering `[1, limit]`.
    pub fn ranges(&self) -> Vec<(u64, u64)> {
        let end = self.limit + 1;
        let step = self.segment_size as u64;
        (0..)
            .map(|j| 1 + j * step)
            .take_while(|&lo| lo < end)
            .map(|lo| (lo, (lo + step).min(end)))
            .collect()
    }

    pub fn segment(&self, lo: u64, hi: u64) -> Result<SieveSegment> {
        SieveSegment::build(lo, hi, &self.base)
    }

    /// Folds every segment into an accumulator, combining per-segment results
    /// with `merge`. Runs segments in parallel when the `parallel` feature is
    /// enabled; `merge` must be associative and commutative for the result to
    /// be deterministic.
    pub fn fold<A, F, M>(&self, init: impl Fn() -> A + Sync, visit: F, merge: M) -> Result<A>
    where
        A: Send,
        F: Fn(&mut A, &SieveSegment) + Sync,
        M: Fn(A, A) -> A + Sync,
    {
        let ranges = self.ranges();
        let run = |&(lo, hi): &(u64, u64)| -> Result<A> {
            let seg = self.segment(lo, hi)?;
            let mut acc = init();
            visit(&mut acc, &seg);
            Ok(acc)
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            ranges
                .par_iter()
                .map(run)
                .try_reduce(&init, |a, b| Ok(merge(a, b)))
        }
        #[cfg(not(feature = "parallel"))]
        {
            let mut acc = init();
            for r in &ranges {
                acc = merge(acc, run(r)?);
            }
            Ok(acc)
        }
    }
}

/// `S(x)` split by the parity of `nu(n)`, kept as exact fixed-point sums.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MiddleLogSums {
    pub odd: LogAccumulator,
    pub even: LogAccumulator,
}

impl MiddleLogSums {
    #[inline]
    pub fn add(&mut self, p: u64, nu: u32) {
        if nu % 2 == 1 {
            self.odd.add_log_of(p);
        } else {
            self.even.add_log_of(p);
        }
    }

    pub fn total_fixed(&self) -> LogAccumulator {
        self.odd + self.even
    }

    /// `sum_{2 <= n <= x} log p_m(n)`.
    pub fn total(&self) -> f64 {
        self.total_fixed().value()
    }

    /// Sum over `n` with `nu(n)` odd.
    pub fn odd(&self) -> f64 {
        self.odd.value()
    }

    /// Sum over `n` with `nu(n)` even.
    pub fn even(&self) -> f64 {
        self.even.value()
    }

    fn merge(self, other: Self) -> Self {
        Self {
            odd: self.odd + other.odd,
            even: self.even + other.even,
        }
    }
}

/// Direct evaluation of `S(x) = sum_{n <= x} log p_m(n)` with the default
/// segment size.
pub fn sum_log_middle(x: u64, mode: NuMode) -> Result<MiddleLogSums> {
    sum_log_middle_with(x, mode, DEFAULT_SEGMENT_SIZE)
}

pub fn sum_log_middle_with(x: u64, mode: NuMode, segment_size: usize) -> Result<MiddleLogSums> {
    let [w, big] = sum_log_middle_both(x, segment_size)?;
    Ok(match mode {
        NuMode::Distinct => w,
        NuMode::Multiplicity => big,
    })
}

/// Both modes from a single sieve pass, `[omega, Omega]`.
pub fn sum_log_middle_both(x: u64, segment_size: usize) -> Result<[MiddleLogSums; 2]> {
    if x < 2 {
        return Err(Error::Domain(format!("S(x) requires x >= 2, got {x}")));
    }
    let sieve = SegmentedSieve::new(x, segment_size)?;
    sieve.fold(
        || [MiddleLogSums::default(); 2],
        |acc, seg| {
            for i in 0..seg.len() {
                for (slot, mode) in NuMode::BOTH.into_iter().enumerate() {
                    if let Some((p, nu)) = seg.middle_at(i, mode) {
                        acc[slot].add(p, nu);
                    }
                }
            }
        },
        |a, b| [a[0].merge(b[0]), a[1].merge(b[1])],
    )
}

/// Middle prime of every `n <= x` (index `n`; entries 0 and 1 are 0).
pub fn middle_primes(x: u64, mode: NuMode) -> Result<Vec<u64>> {
    let sieve = SegmentedSieve::new(x.max(2), DEFAULT_SEGMENT_SIZE)?;
    let mut out = vec![0u64; x as usize + 1];
    for (lo, hi) in sieve.ranges() {
        let seg = sieve.segment(lo, hi)?;
        for i in 0..seg.len() {
            if let Some((p, _)) = seg.middle_at(i, mode) {
                out[(lo + i as u64) as usize] = p;
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Decomposition oracle
// ---------------------------------------------------------------------------

/// Visits every factorization `n = a * p^e * b <= x` in which `p` is the
/// middle prime of `n`: `a` is `p`-friable (`P^+(a) < p`), `b` is `p`-rough
/// (`P^-(b) > p`) and the counts satisfy the middle-index condition.  With
/// `e = 1` this is `nu(b) - nu(a) in {0, 1}`.  Primes `p > sqrt x` only occur
/// as `n = p` and are visited directly.
///
/// `visit(n, p, nu(n))` is called exactly once per `2 <= n <= x`.
pub fn visit_decompositions(x: u64, mode: NuMode, mut visit: impl FnMut(u64, u64, u32)) {
    if x < 2 {
        return;
    }
    let primes = primes::primes_le(x);
    let root = isqrt(x);
    let split = primes.partition_point(|&p| (p as u64) <= root);

    for (pi, &p32) in primes[..split].iter().enumerate() {
        let p = p32 as u64;
        let friable = &primes[..pi];
        let rough = &primes[pi + 1..];
        let mut on_a = |a: u64, a_w: u32, a_big: u32| {
            let mut pe = p;
            let mut e = 1u32;
            while a.saturating_mul(pe) <= x {
                let base = a * pe;
                let (a_nu, p_nu) = match mode {
                    NuMode::Distinct => (a_w, 1),
                    NuMode::Multiplicity => (a_big, e),
                };
                // b may carry at most this many counts
                let b_cap = match mode {
                    NuMode::Distinct => a_nu + 1,
                    NuMode::Multiplicity => a_nu + p_nu,
                };
                let mut on_b = |b: u64, b_w: u32, b_big: u32| {
                    let b_nu = match mode {
                        NuMode::Distinct => b_w,
                        NuMode::Multiplicity => b_big,
                    };
                    let nu = a_nu + p_nu + b_nu;
                    let target = nu.div_ceil(2);
                    if a_nu < target && target <= a_nu + p_nu {
                        visit(base * b, p, nu);
                    }
                };
                on_b(1, 0, 0);
                dfs_products(rough, 0, 1, 0, 0, x / base, mode, b_cap, &mut on_b);
                match pe.checked_mul(p) {
                    Some(next) => pe = next,
                    None => break,
                }
                e += 1;
            }
        };
        on_a(1, 0, 0);
        dfs_products(friable, 0, 1, 0, 0, x / p, mode, u32::MAX, &mut on_a);
    }
    for &p in &primes[split..] {
        visit(p as u64, p as u64, 1);
    }
}

/// Depth-first enumeration of all products `m > 1` of primes from `primes`
/// (any exponents) with `m <= limit` and `nu(m) <= cap`, reporting
/// `(m, omega(m), Omega(m))`.
#[allow(clippy::too_many_arguments)]
fn dfs_products(
    primes: &[u32],
    start: usize,
    m: u64,
    w: u32,
    big: u32,
    limit: u64,
    mode: NuMode,
    cap: u32,
    f: &mut impl FnMut(u64, u32, u32),
) {
    for i in start..primes.len() {
        let q = primes[i] as u64;
        if m.saturating_mul(q) > limit {
            break;
        }
        let mut mq = m * q;
        let mut j = 1;
        loop {
            let (nw, nbig) = (w + 1, big + j);
            let nu = match mode {
                NuMode::Distinct => nw,
                NuMode::Multiplicity => nbig,
            };
            if nu > cap {
                break;
            }
            f(mq, nw, nbig);
            dfs_products(primes, i + 1, mq, nw, nbig, limit, mode, cap, f);
            if mq > limit / q {
                break;
            }
            mq *= q;
            j += 1;
        }
    }
}

/// `S(x)` through the decomposition `n = a p b` with exact enumeration of
/// the cases `p^2 | n` and `p > sqrt x`.
pub fn sum_log_middle_via_decomposition(x: u64, mode: NuMode) -> Result<MiddleLogSums> {
    if x < 2 {
        return Err(Error::Domain(format!("S(x) requires x >= 2, got {x}")));
    }
    if x > 100_000_000 {
        return Err(Error::Range(format!(
            "decomposition oracle is limited to x <= 1e8, got {x}"
        )));
    }
    // tally per (prime, parity) first, then convert once
    let mut odd: std::collections::BTreeMap<u64, u64> = Default::default();
    let mut even: std::collections::BTreeMap<u64, u64> = Default::default();
    visit_decompositions(x, mode, |_, p, nu| {
        let t = if nu % 2 == 1 { &mut odd } else { &mut even };
        *t.entry(p).or_default() += 1;
    });
    let mut out = MiddleLogSums::default();
    for (p, c) in odd {
        out.odd.add_log_times(p, c);
    }
    for (p, c) in even {
        out.even.add_log_times(p, c);
    }
    Ok(out)
}

/// Middle prime of every `n <= x` from the decomposition enumeration, with a
/// check that no `n` is produced twice.
pub fn middle_primes_via_decomposition(x: u64, mode: NuMode) -> Result<Vec<u64>> {
    let mut out = vec![0u64; x as usize + 1];
    let mut dup = None;
    visit_decompositions(x, mode, |n, p, _| {
        let slot = &mut out[n as usize];
        if *slot != 0 {
            dup.get_or_insert(n);
        }
        *slot = p;
    });
    match dup {
        Some(n) => Err(Error::Consistency {
            quantity: format!("decomposition of {n}"),
            lhs: 1.0,
            rhs: 2.0,
            tolerance: 0.0,
        }),
        None => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            if e > 0 {
                out.push((d, e));
            }
            d += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn seg(lo: u64, hi: u64) -> SieveSegment {
        SieveSegment::build(lo, hi, &primes::primes_up_to(isqrt(hi) + 1)).unwrap()
    }

    #[test]
    fn factorize_examples() {
        let s = seg(1, 200);
        assert_eq!(factorize(12, &s).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97, &s).unwrap().factors(), &[(97, 1)]);
        assert_eq!(factorize(60, &s).unwrap().factors(), &[(2, 2), (3, 1), (5, 1)]);
    }

    #[test]
    fn factorize_out_of_segment() {
        let s = seg(100, 200);
        assert!(matches!(factorize(99, &s), Err(Error::Range(_))));
        assert!(matches!(factorize(200, &s), Err(Error::Range(_))));
        assert!(matches!(factorize(1, &s), Err(Error::Domain(_))));
    }

    #[test]
    fn middle_prime_examples() {
        let s = seg(1, 100);
        let f60 = factorize(60, &s).unwrap();
        assert_eq!(f60.middle_prime(NuMode::Distinct).unwrap(), 3);
        assert_eq!(f60.middle_prime(NuMode::Multiplicity).unwrap(), 2);
        let f12 = factorize(12, &s).unwrap();
        assert_eq!(f12.middle_prime(NuMode::Multiplicity).unwrap(), 2);
        for mode in NuMode::BOTH {
            assert_eq!(factorize(89, &s).unwrap().middle_prime(mode).unwrap(), 89);
        }
        let one = Factorization::new(1, vec![]).unwrap();
        assert!(matches!(one.middle_prime(NuMode::Distinct), Err(Error::Undefined(_))));
    }

    #[test]
    fn segment_matches_trial_division() {
        for (lo, hi) in [(1, 3000), (1_000_000, 1_003_000), (999_999_000, 1_000_000_000)] {
            let s = seg(lo, hi);
            for n in lo.max(2)..hi {
                assert_eq!(factorize(n, &s).unwrap().factors(), trial_factor(n).as_slice(), "n={n}");
            }
        }
    }

    #[test]
    fn sum_at_two() {
        for mode in NuMode::BOTH {
            let s = sum_log_middle(2, mode).unwrap();
            assert_eq!(s.total(), 2f64.ln());
            assert_eq!(s.odd(), 2f64.ln());
            assert_eq!(s.even(), 0.0);
        }
    }

    #[test]
    fn sum_to_ten_by_hand() {
        // Omega-middle primes of 2..=10: 2,3,2,5,2,7,2,3,2
        let mids = [2u64, 3, 2, 5, 2, 7, 2, 3, 2];
        let want: f64 = mids.iter().map(|&p| (p as f64).ln()).sum();
        let got = sum_log_middle(10, NuMode::Multiplicity).unwrap();
        assert!((got.total() - want).abs() < 1e-14);
        // odd Omega: 2,3,5,7,8(=2^3) ; even: 4,6,9,10
        let odd: f64 = [2.0f64, 3.0, 5.0, 7.0, 2.0].iter().map(|p| p.ln()).sum();
        assert!((got.odd() - odd).abs() < 1e-14);
    }

    #[test]
    fn segment_size_is_invisible() {
        for mode in NuMode::BOTH {
            let a = sum_log_middle_with(200_000, mode, 1 << 10).unwrap();
            let b = sum_log_middle_with(200_000, mode, 1 << 17).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn decomposition_matches_direct_small() {
        for mode in NuMode::BOTH {
            let direct = middle_primes(3000, mode).unwrap();
            let decomp = middle_primes_via_decomposition(3000, mode).unwrap();
            assert_eq!(direct, decomp);
            assert_eq!(
                sum_log_middle(100, mode).unwrap(),
                sum_log_middle_via_decomposition(100, mode).unwrap()
            );
        }
        assert_eq!(
            sum_log_middle_via_decomposition(2, NuMode::Distinct).unwrap().total(),
            2f64.ln()
        );
    }

    #[test]
    fn isqrt_edges() {
        for n in [0u64, 1, 2, 3, 4, 15, 16, 17, 99_999_999, 100_000_000, u32::MAX as u64] {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n);
        }
    }
}
