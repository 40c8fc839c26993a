//! Saddle-point evaluation of Cauchy coefficients
//! `I_k(xi) = (1 / 2 pi i) \oint e^(xi z) phi(z) z^-(k+1) dz`.
//!
//! The circle `|z| = r = k / xi` passes through the saddle point.  Writing
//! `theta = mu(s)` with `e^(i mu) - 1 - i mu = -s^2/2` turns the integrand
//! into a Gaussian, and the expansion coefficients become
//!
//! ```text
//! c_m(v) = v^-m sum_{j <= m} d_{m-j} (2j-1)!! [tau^2j] mu'(tau) phi(v e^(i mu(tau)))
//! ```
//!
//! with `d_n` the Stirling coefficients. Everything is done with Taylor jets.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::series::{gaussian_to_c64, rational_to_f64, ImaginaryUnit, PowerSeries, PowerSeriesJet, Scalar};
use crate::sieve::NuMode;
use crate::special::{self, EulerContext, PrecisionBudget};
use crate::EULER_GAMMA;

/// Exact Gaussian-rational series.
pub type ExactSeries = PowerSeries<Complex<BigRational>>;

/// Taylor series of `2 (1 + iz - e^(iz)) / z^2 = sum_m 2 i^m z^m / (m+2)!`.
fn denominator_series<T: ImaginaryUnit>(order: usize) -> PowerSeries<T> {
    let mut ipow = T::one();
    let mut fact = T::from_int(2);
    PowerSeries::from_fn(order, |m| {
        let c = T::from_int(2) * ipow.clone() / fact.clone();
        ipow = ipow.clone() * T::i();
        fact = fact.clone() * T::from_int(m as i64 + 3);
        c
    })
}

/// Jet of `q(z) = sqrt(z^2 / (2(1 + iz - e^(iz))))` at 0, principal root.
pub fn q_series<T: ImaginaryUnit>(order: usize) -> Result<PowerSeries<T>> {
    denominator_series::<T>(order).pow(T::from_ratio(-1, 2))
}

/// `mu` as the compositional inverse of `z / q(z)`.
pub fn mu_series_reversion<T: ImaginaryUnit>(order: usize) -> Result<PowerSeries<T>> {
    if order < 1 {
        return Err(Error::Range("mu needs order >= 1".into()));
    }
    let root = denominator_series::<T>(order - 1).sqrt()?;
    let mut c = vec![T::zero()];
    c.extend(root.into_coeffs());
    PowerSeries::new(c).revert()
}

/// `mu` from the Lagrange sum `mu_n = [z^(n-1)] q(z)^n / n`.
pub fn mu_series_lagrange<T: ImaginaryUnit>(order: usize) -> Result<PowerSeries<T>> {
    if order < 1 {
        return Err(Error::Range("mu needs order >= 1".into()));
    }
    let q = q_series::<T>(order - 1)?;
    let mut qn = PowerSeries::one(order - 1);
    let mut c = vec![T::zero(); order + 1];
    for (n, slot) in c.iter_mut().enumerate().skip(1) {
        qn = qn.mul_series(&q);
        *slot = qn.coeff(n - 1) / T::from_int(n as i64);
    }
    Ok(PowerSeries::new(c))
}

/// Exact `mu` jet, cached by order.
pub fn mu_series_exact(order: usize) -> Result<Arc<ExactSeries>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ExactSeries>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().unwrap().get(&order) {
        return Ok(s.clone());
    }
    let s = Arc::new(mu_series_lagrange(order)?);
    cache.lock().unwrap().insert(order, s.clone());
    Ok(s)
}

/// `mu` jet in `Complex64`.
pub fn mu_series(order: usize) -> Result<PowerSeriesJet> {
    Ok(mu_series_exact(order)?.map(gaussian_to_c64))
}

/// Coefficients of `e^(i mu(s)) - 1 - i mu(s) + s^2 / 2`, which vanish
/// identically.
pub fn mu_identity_residual<T: ImaginaryUnit>(mu: &PowerSeries<T>) -> Result<PowerSeries<T>> {
    let imu = mu.scale(&T::i());
    let mut r = imu.exp()?.sub_series(&imu);
    let c0 = r.coeff(0) - T::one();
    let c2 = r.coeff(2) + T::from_ratio(1, 2);
    let mut c = r.coeffs().to_vec();
    c[0] = c0;
    if c.len() > 2 {
        c[2] = c2;
    }
    r = PowerSeries::new(c);
    Ok(r)
}

/// `|mu_n|^(-1/n)` for `n = 1..=order`, a running estimate of the radius of
/// convergence of `mu`.
pub fn mu_radius_estimates(order: usize) -> Result<Vec<f64>> {
    let mu = mu_series(order)?;
    Ok((1..=order)
        .map(|n| {
            let a = mu.coeff(n).norm();
            if a == 0.0 {
                f64::INFINITY
            } else {
                a.powf(-1.0 / n as f64)
            }
        })
        .collect())
}

/// Radius within which the jets of `q` and `mu` are used.
pub const SAFE_MU_RADIUS: f64 = 0.5;

/// Coefficients `d_n` of `Gamma(z+1) e^z / (z^z sqrt(2 pi z)) ~ sum d_n z^-n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StirlingCoeffs {
    pub d: Vec<BigRational>,
}

impl StirlingCoeffs {
    pub fn get(&self, n: usize) -> f64 {
        rational_to_f64(&self.d[n])
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.d.iter().map(rational_to_f64).collect()
    }

    /// `sum_{n <= m} d_n z^-n`.
    pub fn partial_sum(&self, z: f64, m: usize) -> f64 {
        (0..=m.min(self.d.len() - 1)).map(|n| self.get(n) * z.powi(-(n as i32))).sum()
    }
}

/// `d_0..d_M` from `exp(sum_k B_2k / (2k (2k-1)) w^(2k-1))`, `M <= 20`.
pub fn stirling_d(m: usize) -> Result<StirlingCoeffs> {
    if m > 20 {
        return Err(Error::Range(format!("stirling_d supports M <= 20, got {m}")));
    }
    let mut s = vec![BigRational::zero(); m + 1];
    for k in 1.. {
        let idx = 2 * k - 1;
        if idx > m {
            break;
        }
        let b = special::bernoulli_exact(2 * k)?;
        s[idx] = b / BigRational::from_ratio((2 * k * (2 * k - 1)) as i64, 1);
    }
    let d = PowerSeries::new(s).exp()?.into_coeffs();
    Ok(StirlingCoeffs { d })
}

fn stirling_f64() -> &'static Vec<f64> {
    static D: OnceLock<Vec<f64>> = OnceLock::new();
    D.get_or_init(|| stirling_d(20).expect("fixed order").to_f64())
}

/// A function holomorphic on a disc about 0, with Taylor jets at real
/// points.
pub trait Analytic: Send + Sync {
    /// Radius of the disc of holomorphy about 0.
    fn radius(&self) -> f64;
    fn eval(&self, z: Complex64) -> Result<Complex64>;
    /// Taylor coefficients `phi^(k)(center) / k!`, `k <= order`.
    fn taylor(&self, center: f64, order: usize) -> Result<PowerSeriesJet>;
    fn name(&self) -> String;
}

/// The constant function.
#[derive(Debug, Clone, Copy)]
pub struct Constant(pub f64);

impl Analytic for Constant {
    fn radius(&self) -> f64 {
        f64::INFINITY
    }
    fn eval(&self, _z: Complex64) -> Result<Complex64> {
        Ok(Complex64::new(self.0, 0.0))
    }
    fn taylor(&self, _center: f64, order: usize) -> Result<PowerSeriesJet> {
        Ok(PowerSeries::constant(Complex64::new(self.0, 0.0), order))
    }
    fn name(&self) -> String {
        format!("const {}", self.0)
    }
}

/// `phi(z) = z`.
#[derive(Debug, Clone, Copy)]
pub struct Identity;

impl Analytic for Identity {
    fn radius(&self) -> f64 {
        f64::INFINITY
    }
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(z)
    }
    fn taylor(&self, center: f64, order: usize) -> Result<PowerSeriesJet> {
        let mut s = PowerSeries::constant(Complex64::new(center, 0.0), order);
        if order >= 1 {
            s = s.add_series(&PowerSeries::variable(order));
        }
        Ok(s)
    }
    fn name(&self) -> String {
        "z".into()
    }
}

/// `h_0(z) = e^(-gamma z) / Gamma(1 + z)`, entire.
#[derive(Debug, Clone, Copy)]
pub struct H0;

impl Analytic for H0 {
    fn radius(&self) -> f64 {
        f64::INFINITY
    }
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(special::h0(z))
    }
    fn taylor(&self, center: f64, order: usize) -> Result<PowerSeriesJet> {
        if center <= -1.0 {
            return domain(format!("h0 jets are built for centers > -1, got {center}"));
        }
        // log h0 = -gamma z - log Gamma(1 + z)
        let a = 1.0 + center;
        let mut c = vec![Complex64::zero(); order + 1];
        let mut fact = 1.0;
        for (k, slot) in c.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            let mut d = -special::polygamma(k as u32 - 1, a)?;
            if k == 1 {
                d -= EULER_GAMMA;
            }
            *slot = Complex64::new(d / fact, 0.0);
        }
        Ok(PowerSeries::new(c).exp_with(Complex64::new(special::h0_real(center), 0.0)))
    }
    fn name(&self) -> String {
        "h0".into()
    }
}

/// `F_nu(z) = e^(gamma z) H_nu(z)`, holomorphic for `|z| < r_nu`.
#[derive(Debug, Clone)]
pub struct FNu {
    pub mode: NuMode,
    ctx: Arc<EulerContext>,
}

impl FNu {
    pub fn new(mode: NuMode, budget: &PrecisionBudget) -> Result<Self> {
        Ok(Self {
            mode,
            ctx: EulerContext::shared(budget)?,
        })
    }
}

impl Analytic for FNu {
    fn radius(&self) -> f64 {
        self.mode.radius()
    }
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        if z.norm() >= self.radius() {
            return domain(format!("F_{} evaluated at |z| = {} outside its disc", self.mode, z.norm()));
        }
        self.ctx.f_nu(z, self.mode)
    }
    fn taylor(&self, center: f64, order: usize) -> Result<PowerSeriesJet> {
        if center.abs() >= self.radius() {
            return domain(format!("F_{} jet at {center} outside its disc", self.mode));
        }
        let mut c = vec![Complex64::zero(); order + 1];
        let mut fact = 1.0;
        for (k, slot) in c.iter_mut().enumerate().skip(1) {
            fact *= k as f64;
            let mut d = self.ctx.log_h_derivative(k, center, self.mode)?.value;
            if k == 1 {
                d += EULER_GAMMA;
            }
            *slot = Complex64::new(d / fact, 0.0);
        }
        let f0 = self.ctx.f_nu(Complex64::new(center, 0.0), self.mode)?;
        Ok(PowerSeries::new(c).exp_with(f0))
    }
    fn name(&self) -> String {
        format!("F_{}", self.mode)
    }
}

/// All `c_m(v)` for `m <= max_m` sharing one set of jets.
pub fn coeff_functionals(max_m: usize, phi: &dyn Analytic, v: f64) -> Result<Vec<Complex64>> {
    if !(v > 0.0 && v < phi.radius()) {
        return domain(format!("coefficient functional needs 0 < v < {}, got {v}", phi.radius()));
    }
    if max_m > 10 {
        return Err(Error::Range(format!("coefficient functionals supported for m <= 10, got {max_m}")));
    }
    let n = 2 * max_m;
    let jet = phi.taylor(v, n)?;
    let mu = mu_series(n + 1)?;
    let imu = mu.truncate(n).scale(&Complex64::i());
    let u = imu.exp()?.sub_series(&PowerSeries::one(n)).scale(&Complex64::new(v, 0.0));
    let g = jet.compose(&u)?;
    let a = mu.derivative().mul_series(&g);
    let d = stirling_f64();
    let mut out = Vec::with_capacity(max_m + 1);
    for m in 0..=max_m {
        let mut s = Complex64::zero();
        let mut dfact = 1.0; // (2j - 1)!!
        for j in 0..=m {
            if j > 0 {
                dfact *= (2 * j - 1) as f64;
            }
            s += a.coeff(2 * j) * (d[m - j] * dfact);
        }
        out.push(s / v.powi(m as i32));
    }
    Ok(out)
}

/// `c_m(v)` for one `m`.
pub fn coeff_functional(m: usize, phi: &dyn Analytic, v: f64) -> Result<Complex64> {
    Ok(coeff_functionals(m, phi, v)?[m])
}

/// `f_m(v) = c_m(v)` for `phi = h_0`.
pub fn f_m(m: usize, v: f64) -> Result<f64> {
    Ok(coeff_functional(m, &H0, v)?.re)
}

/// `g_m(v) = c_m(v)` for `phi = F_nu`.
pub fn g_m(m: usize, v: f64, mode: NuMode, budget: &PrecisionBudget) -> Result<f64> {
    Ok(coeff_functional(m, &FNu::new(mode, budget)?, v)?.re)
}

/// `log(xi^k / k!)`.
pub fn log_main_scale(k: u64, xi: f64) -> f64 {
    k as f64 * xi.ln() - special::ln_gamma_real(k as f64 + 1.0).unwrap_or(0.0)
}

/// `k! e^k / k^k`, through the Stirling series for large `k`.
pub fn stirling_ratio(k: u64) -> f64 {
    let kf = k as f64;
    if k < 12 {
        let mut r = 1.0;
        for j in 1..=k {
            r *= j as f64 * std::f64::consts::E / kf;
        }
        return r;
    }
    let mut s = 0.0;
    let inv = 1.0 / kf;
    let mut p = inv;
    for j in 1..=10 {
        s += special::bernoulli(2 * j) / ((2 * j) * (2 * j - 1)) as f64 * p;
        p *= inv * inv;
    }
    (2.0 * std::f64::consts::PI * kf).sqrt() * s.exp()
}

/// A Cauchy coefficient stored as `ratio * xi^k / k!`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledCoefficient {
    /// `I k! / xi^k`.
    pub ratio: Complex64,
    /// `log(xi^k / k!)`.
    pub log_scale: f64,
    /// Quadrature nodes used (0 for the expansion).
    pub nodes: usize,
}

impl ScaledCoefficient {
    pub fn value(&self) -> Complex64 {
        self.ratio * self.log_scale.exp()
    }
}

/// Largest node count tried by [`contour_i`].
pub const MAX_QUAD_NODES: usize = 1 << 18;

/// Circle quadrature of `I_k(xi)` at the saddle radius `r = k / xi`.  Nodes
/// are doubled from the budget's initial count until successive values
/// agree to the budget tolerance.
pub fn contour_i(k: u64, phi: &dyn Analytic, xi: f64, budget: &PrecisionBudget) -> Result<ScaledCoefficient> {
    if k == 0 || !(xi > 0.0) {
        return domain(format!("contour integral needs k >= 1 and xi > 0, got k = {k}, xi = {xi}"));
    }
    let r = k as f64 / xi;
    if r >= phi.radius() {
        return domain(format!("saddle radius {r} not inside the disc of {} (radius {})", phi.name(), phi.radius()));
    }
    let kf = k as f64;
    let tol = budget.tolerance();
    let average = |n: usize| -> Result<Complex64> {
        let mut s = Complex64::zero();
        for j in 0..n {
            let theta = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / n as f64;
            let e = Complex64::new(0.0, theta).exp();
            let w = (kf * (e - 1.0 - Complex64::new(0.0, theta))).exp();
            s += w * phi.eval(e * r)?;
        }
        Ok(s / n as f64)
    };
    let mut n = budget.quad_nodes.max(16).max((4.0 * kf.sqrt()) as usize);
    let mut prev = average(n)?;
    loop {
        n *= 2;
        let cur = average(n)?;
        if (cur - prev).norm() <= tol * cur.norm().max(1e-300) {
            return Ok(ScaledCoefficient {
                ratio: cur * stirling_ratio(k),
                log_scale: log_main_scale(k, xi),
                nodes: n,
            });
        }
        if n >= MAX_QUAD_NODES {
            return Err(Error::Consistency {
                quantity: format!("contour quadrature for {} at k = {k}", phi.name()),
                lhs: cur.re,
                rhs: prev.re,
                tolerance: tol,
            });
        }
        prev = cur;
    }
}

/// Window `a <= k / xi <= b` for the expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioWindow {
    pub a: f64,
    pub b: f64,
}

impl Default for RatioWindow {
    fn default() -> Self {
        Self { a: 0.05, b: 20.0 }
    }
}

/// `I_k(xi) ~ (xi^k / k!) sum_{m <= M} c_m(k / xi) / xi^m`.
pub fn expand_i(k: u64, phi: &dyn Analytic, xi: f64, order_m: usize, window: RatioWindow) -> Result<ScaledCoefficient> {
    if !(xi > 0.0) {
        return domain(format!("expansion needs xi > 0, got {xi}"));
    }
    let r = k as f64 / xi;
    if !(window.a <= r && r <= window.b) {
        return domain(format!("ratio k/xi = {r} outside window [{}, {}]", window.a, window.b));
    }
    let c = coeff_functionals(order_m, phi, r)?;
    let ratio = c
        .iter()
        .enumerate()
        .map(|(m, cm)| cm / xi.powi(m as i32))
        .sum::<Complex64>();
    Ok(ScaledCoefficient {
        ratio,
        log_scale: log_main_scale(k, xi),
        nodes: 0,
    })
}

/// Relative error of the `M`-term expansion against quadrature.
pub fn expansion_error(k: u64, phi: &dyn Analytic, xi: f64, order_m: usize, budget: &PrecisionBudget) -> Result<f64> {
    let exact = contour_i(k, phi, xi, budget)?;
    let approx = expand_i(k, phi, xi, order_m, RatioWindow::default())?;
    Ok(((approx.ratio - exact.ratio) / exact.ratio).norm())
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
