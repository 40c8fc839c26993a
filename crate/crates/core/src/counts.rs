//! Exact rough-number counts `Phi_k(x, y)` and logarithmic means
//! `lambda(p, k)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::primes;
use crate::series::rational_to_f64;
use crate::sieve::{NuMode, SegmentedSieve, DEFAULT_SEGMENT_SIZE};

/// Largest `x` accepted by the exact counters.
pub const MAX_COUNT_LIMIT: u64 = 1_000_000_000;

/// Largest `k` for which `lambda` tables are built.
pub const MAX_LAMBDA_K: usize = 256;

/// Primes up to this bound get exact rational `lambda` tables.
pub const EXACT_LAMBDA_BOUND: u64 = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoughCountRequest {
    pub x: u64,
    pub y: u64,
    pub mode: NuMode,
    pub kmax: usize,
}

impl RoughCountRequest {
    fn validate(&self) -> Result<()> {
        if self.y < 2 || self.y > self.x {
            return domain(format!("rough counts need 2 <= y <= x, got y = {}, x = {}", self.y, self.x));
        }
        if self.x > MAX_COUNT_LIMIT {
            return Err(Error::Range(format!("x = {} above {MAX_COUNT_LIMIT}", self.x)));
        }
        Ok(())
    }
}

/// `counts[k] = #{n <= x : P^-(n) > y, nu(n) = k}` for `k <= kmax`.
/// `n = 1` is counted in `counts[0]`.
pub fn phi_count(req: &RoughCountRequest) -> Result<Vec<u64>> {
    req.validate()?;
    let mut all = phi_count_multi(req.x, &[req.y], req.mode)?.remove(0);
    all.resize(req.kmax + 1, 0);
    Ok(all)
}

/// Counts for several `y` in one sieve pass. Entry `i` is the full count
/// vector (trailing zeros trimmed) for `ys[i]`.
pub fn phi_count_multi(x: u64, ys: &[u64], mode: NuMode) -> Result<Vec<Vec<u64>>> {
    if ys.is_empty() {
        return Ok(Vec::new());
    }
    for &y in ys {
        RoughCountRequest { x, y, mode, kmax: 0 }.validate()?;
    }
    let mut order: Vec<usize> = (0..ys.len()).collect();
    order.sort_by_key(|&i| ys[i]);
    let sorted: Vec<u64> = order.iter().map(|&i| ys[i]).collect();
    let buckets = sorted.len() + 1;
    const KCAP: usize = 64;

    let sieve = SegmentedSieve::new(x, DEFAULT_SEGMENT_SIZE)?;
    // table[b * KCAP + k]: integers whose P^- exceeds exactly the first b of the y's
    let table = sieve.fold(
        || vec![0u64; buckets * KCAP],
        |acc, seg| {
            for i in 0..seg.len() {
                let spf = seg.factors_at(i).next().map_or(u64::MAX, |f| f.0);
                let b = sorted.partition_point(|&y| y < spf);
                if b == 0 {
                    continue;
                }
                let (w, big) = seg.counts_at(i);
                let nu = match mode {
                    NuMode::Distinct => w,
                    NuMode::Multiplicity => big,
                } as usize;
                acc[b * KCAP + nu] += 1;
            }
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(s, t)| *s += t);
            a
        },
    )?;
    let mut per_sorted = vec![vec![0u64; KCAP]; sorted.len()];
    for b in (1..buckets).rev() {
        for j in 0..b {
            for k in 0..KCAP {
                per_sorted[j][k] += table[b * KCAP + k];
            }
        }
    }
    let mut out = vec![Vec::new(); ys.len()];
    for (j, &i) in order.iter().enumerate() {
        let mut v = per_sorted[j].clone();
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        out[i] = v;
    }
    Ok(out)
}

/// `Phi(x, y, z) = sum_{n <= x, P^-(n) > y} z^nu(n)`, summed directly over
/// the sieved integers.
pub fn phi_generating(x: u64, y: u64, z: Complex64, mode: NuMode) -> Result<Complex64> {
    RoughCountRequest { x, y, mode, kmax: 0 }.validate()?;
    let sieve = SegmentedSieve::new(x, DEFAULT_SEGMENT_SIZE)?;
    let mut powers = vec![Complex64::one()];
    for k in 1..64 {
        powers.push(powers[k - 1] * z);
    }
    let per_segment = sieve.fold(
        Vec::new,
        |acc: &mut Vec<(u64, Complex64)>, seg| {
            let mut s = Complex64::zero();
            for i in 0..seg.len() {
                let spf = seg.factors_at(i).next().map_or(u64::MAX, |f| f.0);
                if spf <= y {
                    continue;
                }
                let (w, big) = seg.counts_at(i);
                let nu = match mode {
                    NuMode::Distinct => w,
                    NuMode::Multiplicity => big,
                };
                s += powers[nu as usize];
            }
            acc.push((seg.lo(), s));
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    let mut parts = per_segment;
    parts.sort_by_key(|p| p.0);
    Ok(parts.into_iter().map(|p| p.1).sum())
}

/// `#{n <= x : P^-(n) > y}` by crossing out multiples of primes `<= y`;
/// independent of the factorization sieve.
pub fn rough_count(x: u64, y: u64) -> Result<u64> {
    if x > 200_000_000 {
        return Err(Error::Range(format!("rough_count limited to x <= 2e8, got {x}")));
    }
    let mut alive = vec![true; x as usize + 1];
    alive[0] = false;
    for p in primes::primes_le(y.min(x)) {
        let p = p as usize;
        for m in (p..=x as usize).step_by(p) {
            alive[m] = false;
        }
    }
    Ok(alive.iter().filter(|&&a| a).count() as u64)
}

/// Values of `lambda(p, k)` for `k = 0..=kmax`.
#[derive(Debug, Clone, PartialEq)]
pub enum LambdaValues {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct LambdaTable {
    pub p: u64,
    pub mode: NuMode,
    pub values: LambdaValues,
}

impl LambdaTable {
    pub fn kmax(&self) -> usize {
        match &self.values {
            LambdaValues::Exact(v) => v.len() - 1,
            LambdaValues::Float(v) => v.len() - 1,
        }
    }

    pub fn get(&self, k: usize) -> f64 {
        match &self.values {
            LambdaValues::Exact(v) => v.get(k).map_or(0.0, rational_to_f64),
            LambdaValues::Float(v) => v.get(k).copied().unwrap_or(0.0),
        }
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        match &self.values {
            LambdaValues::Exact(v) => Some(v),
            LambdaValues::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        (0..=self.kmax()).map(|k| self.get(k)).collect()
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `lambda(p, k) = sum_{P^+(a) < p, nu(a) = k} 1/a` as the `z^k` coefficient
/// of `prod_{q < p} (1 + z/(q-1))` (omega) or `prod_{q < p} (1 - z/q)^-1`
/// (Omega). Exact rationals for `p <= 1000`, `f64` above.
pub fn lambda_exact(p: u64, mode: NuMode, kmax: usize) -> Result<LambdaTable> {
    if !is_prime(p) {
        return domain(format!("lambda needs a prime p, got {p}"));
    }
    if kmax > MAX_LAMBDA_K {
        return Err(Error::Range(format!("kmax = {kmax} above series truncation {MAX_LAMBDA_K}")));
    }
    let qs = primes::primes_le(p - 1);
    let values = if p <= EXACT_LAMBDA_BOUND {
        LambdaValues::Exact(lambda_product(&qs, mode, kmax, |n, d| {
            BigRational::new(BigInt::from(n), BigInt::from(d))
        }))
    } else {
        LambdaValues::Float(lambda_product(&qs, mode, kmax, |n, d| n as f64 / d as f64))
    };
    Ok(LambdaTable { p, mode, values })
}

fn lambda_product<T>(qs: &[u32], mode: NuMode, kmax: usize, ratio: impl Fn(u64, u64) -> T) -> Vec<T>
where
    T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Add<Output = T>,
{
    let mut c = vec![T::zero(); kmax + 1];
    c[0] = T::one();
    for &q in qs {
        let q = q as u64;
        match mode {
            NuMode::Distinct => {
                let w = ratio(1, q - 1);
                for k in (1..=kmax).rev() {
                    c[k] = c[k].clone() + c[k - 1].clone() * w.clone();
                }
            }
            NuMode::Multiplicity => {
                let w = ratio(1, q);
                for k in 1..=kmax {
                    c[k] = c[k].clone() + c[k - 1].clone() * w.clone();
                }
            }
        }
    }
    c
}

/// `sum 1/a` over `a <= a_max` with `P^+(a) < p` and `nu(a) = k`; converges
/// to `lambda(p, k)` from below as `a_max` grows.
pub fn lambda_truncated(p: u64, mode: NuMode, k: u32, a_max: u64) -> Result<f64> {
    if !is_prime(p) {
        return domain(format!("lambda needs a prime p, got {p}"));
    }
    let qs = primes::primes_le(p - 1);
    let mut total = 0.0;
    fn walk(qs: &[u32], start: usize, a: u64, nu: u32, mode: NuMode, k: u32, a_max: u64, total: &mut f64) {
        if nu == k {
            *total += 1.0 / a as f64;
        }
        for i in start..qs.len() {
            let q = qs[i] as u64;
            if a.saturating_mul(q) > a_max {
                break;
            }
            let mut aq = a * q;
            let mut j = 1;
            loop {
                let nnu = match mode {
                    NuMode::Distinct => nu + 1,
                    NuMode::Multiplicity => nu + j,
                };
                if nnu > k {
                    break;
                }
                walk(qs, i + 1, aq, nnu, mode, k, a_max, total);
                if aq > a_max / q {
                    break;
                }
                aq *= q;
                j += 1;
            }
        }
    }
    walk(&qs, 0, 1, 0, mode, k, a_max, &mut total);
    Ok(total)
}
