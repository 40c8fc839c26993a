//! Special functions and accelerated prime sums.
//!
//! Real and complex `Gamma`, polygamma, exact Bernoulli numbers, both real
//! branches of Lambert `W`, `zeta` and the prime zeta function on `[2, inf)`,
//! and the Euler products `H_nu`, `F_nu` with their logarithmic derivatives.
//!
//! Prime sums are split at a cutoff `P0`: primes `q <= P0` are summed
//! directly and the remainder is expanded in powers of `1/q`, each power
//! being resummed with the tail of the prime zeta function.

use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::primes;
use crate::series::rational_to_f64;
use crate::sieve::NuMode;
use crate::sum::KahanSum;
use crate::{EULER_GAMMA, GOLDEN};

/// Truncation parameters shared by the analytic side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrecisionBudget {
    /// Primes `q <= prime_cutoff` are summed directly.
    pub prime_cutoff: u64,
    /// Number of `1/q` powers used for the prime tail.
    pub zeta_depth: u32,
    /// Working order of Taylor jets.
    pub series_order: usize,
    /// Requested decimal digits (at most 15 in `f64`).
    pub target_digits: u32,
    /// Initial node count for circle quadrature (doubled until converged).
    pub quad_nodes: usize,
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        Self {
            prime_cutoff: 100_000,
            zeta_depth: 12,
            series_order: 24,
            target_digits: 15,
            quad_nodes: 64,
        }
    }
}

impl PrecisionBudget {
    pub fn validate(&self) -> Result<()> {
        if self.prime_cutoff < 3 {
            return Err(Error::Range(format!("prime_cutoff = {} < 3", self.prime_cutoff)));
        }
        if self.prime_cutoff > 100_000_000 {
            return Err(Error::Range(format!("prime_cutoff = {} > 1e8", self.prime_cutoff)));
        }
        if self.zeta_depth < 1 || self.series_order < 1 || self.target_digits < 1 || self.quad_nodes < 1 {
            return Err(Error::Range("budget depths must be at least 1".into()));
        }
        if self.target_digits > 15 {
            return Err(Error::Range(format!(
                "target_digits = {} exceeds the 15 digits of f64 working precision",
                self.target_digits
            )));
        }
        Ok(())
    }

    /// Tolerance implied by `target_digits`, with three digits of headroom.
    pub fn tolerance(&self) -> f64 {
        10f64.powi(-(self.target_digits as i32 - 3).max(1))
    }
}

// ---------------------------------------------------------------------------
// Bernoulli numbers
// ---------------------------------------------------------------------------

const BERNOULLI_MAX: usize = 80;

fn bernoulli_table() -> &'static (Vec<BigRational>, Vec<f64>) {
    static TABLE: OnceLock<(Vec<BigRational>, Vec<f64>)> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut b: Vec<BigRational> = Vec::with_capacity(BERNOULLI_MAX + 1);
        b.push(BigRational::one());
        for m in 1..=BERNOULLI_MAX {
            // sum_{j <= m} C(m+1, j) B_j = 0
            let mut s = BigRational::zero();
            let mut binom = BigInt::one();
            for (j, bj) in b.iter().enumerate() {
                s += BigRational::from_integer(binom.clone()) * bj;
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
        }
        let f = b.iter().map(rational_to_f64).collect();
        (b, f)
    })
}

/// Exact Bernoulli number `B_n` (with `B_1 = -1/2`), `n <= 80`.
pub fn bernoulli_exact(n: usize) -> Result<BigRational> {
    bernoulli_table()
        .0
        .get(n)
        .cloned()
        .ok_or_else(|| Error::Range(format!("Bernoulli index {n} > {BERNOULLI_MAX}")))
}

/// `B_n` as `f64`.
pub fn bernoulli(n: usize) -> f64 {
    bernoulli_table().1[n]
}

// ---------------------------------------------------------------------------
// Gamma and polygamma
// ---------------------------------------------------------------------------

const STIRLING_SHIFT: f64 = 15.0;

fn ln_gamma_stirling(w: Complex64) -> Complex64 {
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let mut s = (w - 0.5) * w.ln() - w + half_ln_2pi;
    let winv = w.inv();
    let w2 = winv * winv;
    let mut pow = winv;
    for k in 1..=12 {
        let c = bernoulli(2 * k) / ((2 * k) as f64 * (2 * k - 1) as f64);
        s += pow * c;
        pow *= w2;
    }
    s
}

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

/// A logarithm of `Gamma(z)` (principal branch for real `z > 0`).
pub fn gamma_ln(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return domain(format!("Gamma has a pole at {z}"));
    }
    let shift = (STIRLING_SHIFT - z.re).ceil().max(0.0) as usize;
    let mut s = ln_gamma_stirling(z + shift as f64);
    for j in 0..shift {
        s -= (z + j as f64).ln();
    }
    Ok(s)
}

/// `1 / Gamma(z)`, entire.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if is_pole(z) {
        return Complex64::zero();
    }
    let shift = (STIRLING_SHIFT - z.re).ceil().max(0.0) as usize;
    let mut prod = Complex64::one();
    for j in 0..shift {
        prod *= z + j as f64;
    }
    prod * (-ln_gamma_stirling(z + shift as f64)).exp()
}

/// `log Gamma(x)` for real `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return domain(format!("ln_gamma_real needs x > 0, got {x}"));
    }
    Ok(gamma_ln(Complex64::new(x, 0.0))?.re)
}

/// `Gamma(x)` for real `x > 0`.
pub fn gamma(x: f64) -> Result<f64> {
    Ok(ln_gamma_real(x)?.exp())
}

/// Digamma `psi(x)`, `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    polygamma(0, x)
}

/// Trigamma `psi'(x)`, `x > 0`.
pub fn trigamma(x: f64) -> Result<f64> {
    polygamma(1, x)
}

/// Polygamma `psi^(m)(x)` for real `x > 0`.
pub fn polygamma(m: u32, x: f64) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return domain(format!("polygamma needs x > 0, got {x}"));
    }
    if m > 60 {
        return Err(Error::Range(format!("polygamma order {m} > 60")));
    }
    let m_us = m as usize;
    let target = 20.0 + m as f64;
    let shift = (target - x).ceil().max(0.0) as usize;
    let xs = x + shift as f64;

    let mut fact = vec![1.0f64; 2 * m_us + 2 * 40 + 2];
    for i in 1..fact.len() {
        fact[i] = fact[i - 1] * i as f64;
    }
    let value = if m == 0 {
        let mut s = xs.ln() - 0.5 / xs;
        let inv2 = 1.0 / (xs * xs);
        let mut p = inv2;
        for k in 1..=20 {
            let term = bernoulli(2 * k) / (2 * k) as f64 * p;
            s -= term;
            if term.abs() < 1e-18 * s.abs() {
                break;
            }
            p *= inv2;
        }
        let mut shift_sum = KahanSum::new();
        for j in 0..shift {
            shift_sum.add(1.0 / (x + j as f64));
        }
        s - shift_sum.value()
    } else {
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let mut s = fact[m_us - 1] / xs.powi(m as i32) + fact[m_us] / (2.0 * xs.powi(m as i32 + 1));
        for k in 1..=40usize {
            let term = bernoulli(2 * k) * fact[2 * k + m_us - 1] / (fact[2 * k] * xs.powi((2 * k) as i32 + m as i32));
            s += term;
            if term.abs() < 1e-18 * s.abs() {
                break;
            }
        }
        // psi^(m)(x) = psi^(m)(x + N) - (-1)^m m! sum_{j<N} (x+j)^{-m-1}
        let mut shift_sum = KahanSum::new();
        for j in 0..shift {
            shift_sum.add((x + j as f64).powi(-(m as i32) - 1));
        }
        sign * s + sign * fact[m_us] * shift_sum.value()
    };
    Ok(value)
}

/// Error function (real argument).
pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Complementary error function (real argument).
pub fn erfc(x: f64) -> f64 {
    libm::erfc(x)
}

// ---------------------------------------------------------------------------
// Lambert W and the entropy function
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WBranch {
    /// `W_0`, values `>= -1`.
    Principal,
    /// `W_{-1}`, values `<= -1`, defined on `[-1/e, 0)`.
    Lower,
}

/// Real Lambert `W` by Halley iteration.
pub fn lambert_w(branch: WBranch, x: f64) -> Result<f64> {
    let e = std::f64::consts::E;
    let gap = 1.0 + e * x;
    if !x.is_finite() || gap < -1e-15 {
        return domain(format!("Lambert W needs x >= -1/e, got {x}"));
    }
    if branch == WBranch::Lower && x >= 0.0 {
        return domain(format!("W_-1 needs -1/e <= x < 0, got {x}"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if gap <= 1e-16 {
        return Ok(-1.0);
    }
    let p = (2.0 * gap).sqrt();
    let mut w = match branch {
        WBranch::Principal if x < -0.25 => -1.0 + p - p * p / 3.0,
        WBranch::Principal if x < 3.0 => x.ln_1p() * 0.8,
        WBranch::Principal => {
            let l = x.ln();
            l - l.ln()
        }
        WBranch::Lower if x < -0.25 => -1.0 - p - p * p / 3.0,
        WBranch::Lower => {
            let l = (-x).ln();
            l - (-l).ln()
        }
    };
    for _ in 0..100 {
        let ew = w.exp();
        let f = w * ew - x;
        let wp1 = w + 1.0;
        let denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= 1e-15 * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

/// `Q(v) = v log v - v + 1`.
pub fn q_entropy(v: f64) -> Result<f64> {
    if v <= 0.0 {
        return domain(format!("Q(v) needs v > 0, got {v}"));
    }
    Ok(v * v.ln() - v + 1.0)
}

/// The two roots `xi_0 < 1 < xi_1` of `1/phi + Q(xi) - 1 = 0`.
pub fn golden_entropy_roots() -> (f64, f64) {
    let arg = -1.0 / (std::f64::consts::E * GOLDEN);
    let w_lo = lambert_w(WBranch::Lower, arg).expect("argument inside branch domain");
    let w_hi = lambert_w(WBranch::Principal, arg).expect("argument inside branch domain");
    ((1.0 + w_lo).exp(), (1.0 + w_hi).exp())
}

// ---------------------------------------------------------------------------
// zeta and prime zeta
// ---------------------------------------------------------------------------

/// `zeta(s) - 1` for real `s > 1`, without cancellation.
pub fn zeta_minus_one(s: f64) -> Result<f64> {
    if s <= 1.0 || !s.is_finite() {
        return domain(format!("zeta needs s > 1, got {s}"));
    }
    if s >= 30.0 {
        let mut acc = 0.0;
        for n in (2..=40).rev() {
            acc += (n as f64).powf(-s);
        }
        return Ok(acc);
    }
    const N: usize = 20;
    let nf = N as f64;
    let mut head = KahanSum::new();
    for n in (2..N).rev() {
        head.add((n as f64).powf(-s));
    }
    let mut tail = nf.powf(1.0 - s) / (s - 1.0) + 0.5 * nf.powf(-s);
    // Euler-Maclaurin corrections B_2k/(2k)! (s)_(2k-1) N^(-s-2k+1)
    let mut rising = s;
    let mut fact = 2.0;
    for k in 1..=14usize {
        let term = bernoulli(2 * k) / fact * rising * nf.powf(-s - (2 * k) as f64 + 1.0);
        tail += term;
        rising *= (s + (2 * k - 1) as f64) * (s + (2 * k) as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
    }
    Ok(head.value() + tail)
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: f64) -> Result<f64> {
    Ok(1.0 + zeta_minus_one(s)?)
}

fn mobius(n: usize) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Prime zeta `P(s) = sum_p p^-s` for real `s >= 2`, through
/// `P(s) = sum_n mu(n)/n log zeta(ns)`.
pub fn prime_zeta(s: f64) -> Result<f64> {
    if !(s >= 2.0) || !s.is_finite() {
        return domain(format!("prime_zeta is only supported for s >= 2, got {s}"));
    }
    let mut acc = KahanSum::new();
    let mut n = 1usize;
    loop {
        let ns = n as f64 * s;
        if ns * std::f64::consts::LN_2 > 60.0 * std::f64::consts::LN_10 {
            break;
        }
        let mu = mobius(n);
        if mu != 0 {
            acc.add(mu as f64 / n as f64 * zeta_minus_one(ns)?.ln_1p());
        }
        n += 1;
    }
    Ok(acc.value())
}

// ---------------------------------------------------------------------------
// Euler products
// ---------------------------------------------------------------------------

/// A value with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerProductValue<T> {
    pub value: T,
    pub error_bound: f64,
    pub budget: PrecisionBudget,
}

/// Prime table and prime-zeta tails for one budget.
#[derive(Debug)]
pub struct EulerContext {
    budget: PrecisionBudget,
    primes: Arc<Vec<u32>>,
    /// `tails[k] = sum_{q > P0} q^-k`, with `tails[0] = tails[1] = NaN`.
    tails: Vec<f64>,
}

const MAX_TAIL_INDEX: usize = 160;

impl EulerContext {
    pub fn new(budget: PrecisionBudget) -> Result<Self> {
        budget.validate()?;
        let primes = primes::primes_up_to(budget.prime_cutoff);
        let cut = primes.partition_point(|&p| (p as u64) <= budget.prime_cutoff);
        let primes = if cut == primes.len() {
            primes
        } else {
            Arc::new(primes[..cut].to_vec())
        };
        let mut tails = vec![f64::NAN; MAX_TAIL_INDEX + 1];
        let p0 = budget.prime_cutoff as f64;
        for (k, slot) in tails.iter_mut().enumerate().skip(2) {
            // below 1e-300 relative to P(k) the difference is pure rounding
            if (k as f64 - 1.0) * p0.log10() > 300.0 {
                *slot = 0.0;
                continue;
            }
            let mut head = KahanSum::new();
            for &q in primes.iter().rev() {
                head.add((q as f64).powi(-(k as i32)));
            }
            *slot = (prime_zeta(k as f64)? - head.value()).max(0.0);
        }
        Ok(Self { budget, primes, tails })
    }

    /// Shared context for a budget, built once.
    pub fn shared(budget: &PrecisionBudget) -> Result<Arc<Self>> {
        type Cache = Mutex<Vec<(PrecisionBudget, Arc<EulerContext>)>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some((_, ctx)) = cache.lock().unwrap().iter().find(|(b, _)| b == budget) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(Self::new(*budget)?);
        cache.lock().unwrap().push((*budget, ctx.clone()));
        Ok(ctx)
    }

    pub fn budget(&self) -> &PrecisionBudget {
        &self.budget
    }

    /// `sum_{q > P0} q^-k`.
    pub fn prime_tail(&self, k: usize) -> f64 {
        if k < 2 {
            return f64::INFINITY;
        }
        self.tails.get(k).copied().unwrap_or(0.0)
    }

    fn depth(&self) -> usize {
        self.budget.zeta_depth as usize
    }

    fn rounding(&self, magnitude: f64) -> f64 {
        8.0 * f64::EPSILON * magnitude
    }

    /// `log H_nu(z)` with an absolute error bound (on the real part, and on
    /// the imaginary part modulo `2 pi`).
    pub fn log_h(&self, z: Complex64, mode: NuMode) -> Result<(Complex64, f64)> {
        if mode == NuMode::Multiplicity && z.re >= 2.0 {
            return domain(format!("H_Omega(z) needs Re z < 2, got {z}"));
        }
        if mode == NuMode::Distinct && z.im == 0.0 && z.re <= -1.0 {
            return domain(format!("H_omega vanishes or changes sign at real z = {}", z.re));
        }
        let mut re = KahanSum::new();
        let mut im = KahanSum::new();
        let mut mag = 0.0;
        for &q in self.primes.iter() {
            let q = q as f64;
            let a = z * (-1.0 / q).ln_1p();
            let b = match mode {
                NuMode::Distinct => ln1p_c(z / (q - 1.0)),
                NuMode::Multiplicity => -ln1p_c(-z / q),
            };
            let t = a + b;
            re.add(t.re);
            im.add(t.im);
            mag += a.norm() + b.norm();
        }
        let (w, sign) = match mode {
            NuMode::Distinct => (Complex64::one() - z, 1.0),
            NuMode::Multiplicity => (z, 1.0),
        };
        let mut tail = Complex64::zero();
        let mut wk = w;
        let mut last = 0.0;
        let d = self.depth();
        for k in 2..=d + 2 {
            wk *= w;
            let coef = match mode {
                NuMode::Distinct => (w - wk) / k as f64,
                NuMode::Multiplicity => (wk - w) / k as f64,
            };
            let term = coef * self.prime_tail(k) * sign;
            if k == d + 2 {
                last = term.norm();
            } else {
                tail += term;
            }
        }
        let value = Complex64::new(re.value(), im.value()) + tail;
        Ok((value, 2.0 * last + self.rounding(mag)))
    }

    /// `H_nu(z)`.
    pub fn euler_h(&self, z: Complex64, mode: NuMode) -> Result<EulerProductValue<Complex64>> {
        let (l, err) = self.log_h(z, mode)?;
        let value = l.exp();
        Ok(EulerProductValue {
            value,
            error_bound: value.norm() * err * 1.01,
            budget: self.budget,
        })
    }

    /// `H_nu(v)` for real `v`.
    pub fn euler_h_real(&self, v: f64, mode: NuMode) -> Result<EulerProductValue<f64>> {
        let e = self.euler_h(Complex64::new(v, 0.0), mode)?;
        Ok(EulerProductValue {
            value: e.value.re,
            error_bound: e.error_bound,
            budget: e.budget,
        })
    }

    fn check_real(&self, v: f64, mode: NuMode) -> Result<()> {
        match mode {
            NuMode::Multiplicity if v >= 2.0 => domain(format!("Omega-mode prime sums need v < 2, got {v}")),
            NuMode::Distinct if v <= -1.0 => domain(format!("omega-mode prime sums need v > -1, got {v}")),
            _ if !v.is_finite() => domain(format!("non-finite argument {v}")),
            _ => Ok(()),
        }
    }

    /// `sigma_1(v) = (log H_nu)'(v)`.
    pub fn sigma1(&self, v: f64, mode: NuMode) -> Result<EulerProductValue<f64>> {
        self.check_real(v, mode)?;
        let mut head = KahanSum::new();
        let mut mag = 0.0;
        for &q in self.primes.iter() {
            let q = q as f64;
            let a = (-1.0 / q).ln_1p();
            let b = match mode {
                NuMode::Distinct => 1.0 / (q - 1.0 + v),
                NuMode::Multiplicity => 1.0 / (q - v),
            };
            head.add(a + b);
            mag += a.abs() + b.abs();
        }
        let w = match mode {
            NuMode::Distinct => 1.0 - v,
            NuMode::Multiplicity => v,
        };
        let d = self.depth();
        let mut tail = 0.0;
        let mut last = 0.0;
        for k in 2..=d + 2 {
            let term = (w.powi(k as i32 - 1) - 1.0 / k as f64) * self.prime_tail(k);
            if k == d + 2 {
                last = term.abs();
            } else {
                tail += term;
            }
        }
        Ok(EulerProductValue {
            value: head.value() + tail,
            error_bound: 2.0 * last + self.rounding(mag),
            budget: self.budget,
        })
    }

    /// `T_k(v) = sum_q (q - 1 + v)^-k` (omega) or `sum_q (q - v)^-k` (Omega),
    /// for `k >= 2`.
    pub fn t_sum(&self, k: usize, v: f64, mode: NuMode) -> Result<EulerProductValue<f64>> {
        if k < 2 {
            return Err(Error::Range(format!("T_k needs k >= 2, got {k}")));
        }
        self.check_real(v, mode)?;
        let mut head = KahanSum::new();
        for &q in self.primes.iter().rev() {
            let q = q as f64;
            let base = match mode {
                NuMode::Distinct => q - 1.0 + v,
                NuMode::Multiplicity => q - v,
            };
            head.add(base.powi(-(k as i32)));
        }
        let w = match mode {
            NuMode::Distinct => 1.0 - v,
            NuMode::Multiplicity => v,
        };
        // (1 - w/q)^-k = sum_j C(k+j-1, j) w^j q^-j
        let d = self.depth();
        let mut tail = 0.0;
        let mut binom = 1.0;
        let mut wj = 1.0;
        let mut last = 0.0;
        for j in 0..=d {
            let term = binom * wj * self.prime_tail(k + j);
            if j == d {
                last = term.abs();
            } else {
                tail += term;
            }
            binom *= (k + j) as f64 / (j + 1) as f64;
            wj *= w;
        }
        let value = head.value() + tail;
        Ok(EulerProductValue {
            value,
            error_bound: 2.0 * last + self.rounding(value.abs()),
            budget: self.budget,
        })
    }

    /// `sigma_2(v) = (log H_nu)''(v)`.
    pub fn sigma2(&self, v: f64, mode: NuMode) -> Result<EulerProductValue<f64>> {
        self.log_h_derivative(2, v, mode)
    }

    /// `(log H_nu)^(k)(v)` for `k >= 1`.
    pub fn log_h_derivative(&self, k: usize, v: f64, mode: NuMode) -> Result<EulerProductValue<f64>> {
        match k {
            0 => {
                self.check_real(v, mode)?;
                let (l, err) = self.log_h(Complex64::new(v, 0.0), mode)?;
                Ok(EulerProductValue {
                    value: l.re,
                    error_bound: err,
                    budget: self.budget,
                })
            }
            1 => self.sigma1(v, mode),
            _ => {
                let t = self.t_sum(k, v, mode)?;
                let fact: f64 = (1..k).map(|i| i as f64).product();
                let sign = match mode {
                    NuMode::Distinct if k % 2 == 1 => 1.0,
                    NuMode::Distinct => -1.0,
                    NuMode::Multiplicity => 1.0,
                };
                Ok(EulerProductValue {
                    value: sign * fact * t.value,
                    error_bound: fact * t.error_bound,
                    budget: self.budget,
                })
            }
        }
    }

    /// `F_nu(z) = e^(gamma z) H_nu(z)`.
    pub fn f_nu(&self, z: Complex64, mode: NuMode) -> Result<Complex64> {
        let (l, _) = self.log_h(z, mode)?;
        Ok((l + z * EULER_GAMMA).exp())
    }

    /// `(j_1(v), j_2(v))`:
    /// `j_1 = v sigma_1(v) - [psi(1 + 1/v) + (1 - v^2) gamma] / v` and
    /// `j_2 = v^2 sigma_2(v) - psi'(1 + 1/v) / v^2`.
    pub fn j_funcs(&self, v: f64, mode: NuMode) -> Result<(f64, f64)> {
        if v <= 0.0 || (mode == NuMode::Multiplicity && v >= 2.0) {
            return domain(format!("j functions need 0 < v (< 2 for Omega), got {v}"));
        }
        let s1 = self.sigma1(v, mode)?.value;
        let s2 = self.sigma2(v, mode)?.value;
        let a = 1.0 + 1.0 / v;
        let j1 = v * s1 - (digamma(a)? + (1.0 - v * v) * EULER_GAMMA) / v;
        let j2 = v * v * s2 - trigamma(a)? / (v * v);
        Ok((j1, j2))
    }
}

/// `log(1 + w)` accurate for small complex `w`.
fn ln1p_c(w: Complex64) -> Complex64 {
    let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
    let im = w.im.atan2(1.0 + w.re);
    Complex64::new(re, im)
}

/// `h_0(z) = e^(-gamma z) / Gamma(1 + z)`.
pub fn h0(z: Complex64) -> Complex64 {
    (-z * EULER_GAMMA).exp() * recip_gamma(z + 1.0)
}

/// `h_0` on the real line.
pub fn h0_real(v: f64) -> f64 {
    h0(Complex64::new(v, 0.0)).re
}

/// `h_0''(z) / h_0(z) = (gamma + psi(1 + z))^2 - psi'(1 + z)`, real `z > -1`.
pub fn h0_second_log_ratio(z: f64) -> Result<f64> {
    let a = EULER_GAMMA + digamma(1.0 + z)?;
    Ok(a * a - trigamma(1.0 + z)?)
}

/// Convenience wrappers with the default budget.
pub fn euler_h(z: Complex64, mode: NuMode, budget: &PrecisionBudget) -> Result<EulerProductValue<Complex64>> {
    EulerContext::shared(budget)?.euler_h(z, mode)
}

pub fn sigma1(v: f64, mode: NuMode, budget: &PrecisionBudget) -> Result<EulerProductValue<f64>> {
    EulerContext::shared(budget)?.sigma1(v, mode)
}

pub fn sigma2(v: f64, mode: NuMode, budget: &PrecisionBudget) -> Result<EulerProductValue<f64>> {
    EulerContext::shared(budget)?.sigma2(v, mode)
}

pub fn j_funcs(v: f64, mode: NuMode, budget: &PrecisionBudget) -> Result<(f64, f64)> {
    EulerContext::shared(budget)?.j_funcs(v, mode)
}

pub fn f_nu(z: Complex64, mode: NuMode, budget: &PrecisionBudget) -> Result<Complex64> {
    EulerContext::shared(budget)?.f_nu(z, mode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn bernoulli_small() {
        assert_eq!(bernoulli_exact(1).unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(bernoulli_exact(12).unwrap(), BigRational::new((-691).into(), 2730.into()));
        assert!(bernoulli_exact(13).unwrap().is_zero());
        assert!(bernoulli_exact(81).is_err());
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(5.0).unwrap() - 24.0).abs() < 1e-12);
        assert!((recip_gamma(c(-2.0))).norm() == 0.0);
        assert!(gamma_ln(c(-3.0)).is_err());
        // Gamma(1+i) Gamma(1-i) = pi / sinh pi
        let g = (gamma_ln(Complex64::new(1.0, 1.0)).unwrap() + gamma_ln(Complex64::new(1.0, -1.0)).unwrap()).exp();
        assert!((g.re - PI / PI.sinh()).abs() < 1e-14 && g.im.abs() < 1e-14);
    }

    #[test]
    fn polygamma_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        assert!((trigamma(1.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        // psi''(1) = -2 zeta(3)
        assert!((polygamma(2, 1.0).unwrap() + 2.0 * zeta(3.0).unwrap()).abs() < 1e-13);
        // psi'''(1/2) = pi^4
        assert!((polygamma(3, 0.5).unwrap() - PI.powi(4)).abs() < 1e-11);
        assert!(polygamma(1, 0.0).is_err());
    }

    #[test]
    fn lambert_roots() {
        let (x0, x1) = golden_entropy_roots();
        assert!((x0 - 0.26583).abs() < 5e-6, "{x0}");
        assert!((x1 - 1.99374).abs() < 5e-6, "{x1}");
        for x in [x0, x1] {
            assert!((1.0 / GOLDEN + q_entropy(x).unwrap() - 1.0).abs() < 1e-10);
        }
        assert_eq!(lambert_w(WBranch::Principal, 0.0).unwrap(), 0.0);
        assert!(lambert_w(WBranch::Principal, -0.5).is_err());
        assert!(lambert_w(WBranch::Lower, 0.1).is_err());
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((prime_zeta(2.0).unwrap() - 0.452_247_420_041_065_5).abs() < 1e-15);
        assert!(prime_zeta(1.5).is_err());
    }

    #[test]
    fn euler_products_collapse() {
        let ctx = EulerContext::shared(&PrecisionBudget::default()).unwrap();
        for mode in NuMode::BOTH {
            for z in [0.0, 1.0] {
                let h = ctx.euler_h(c(z), mode).unwrap();
                assert!((h.value.re - 1.0).abs() < 1e-13, "{mode} {z} {:?}", h);
            }
        }
        assert!(ctx.euler_h(c(2.0), NuMode::Multiplicity).is_err());
    }
}
