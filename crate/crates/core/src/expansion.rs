//! Asymptotic predictions and the first-order constants of
//! `S(x) = A x (log x)^(1/phi) {1 + c_1 / log log x + O((log log x)^-2)}`.
//!
//! The sum is dominated by middle primes `p` with `log log p / log log x`
//! near `phi* = phi / sqrt 5`, the maximum of
//! `kappa(v) = 2 sqrt(v(1-v)) + v - 1`.  The constants come from expanding
//! `rho(v) (log x)^kappa(v)` about `phi*`, which needs `R = log rho` to second
//! order together with the local correction `s_1(phi*)`.

use std::f64::consts::PI;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::saddle::{self, FNu, RatioWindow, H0};
use crate::sieve::NuMode;
use crate::special::{self, EulerContext, PrecisionBudget};
use crate::{EULER_GAMMA, GOLDEN};

const SQRT5: f64 = 2.236_067_977_499_79;

/// `phi* = phi / sqrt 5`, the maximum of `kappa`.
pub const PHI_STAR: f64 = GOLDEN / SQRT5;

/// `kappa''(phi*) / 2`.
pub const K2: f64 = -5.0 * SQRT5 / 4.0;
/// `kappa'''(phi*) / 3!`.
pub const K3: f64 = -25.0 / 8.0;
/// `kappa''''(phi*) / 4!`.
pub const K4: f64 = -225.0 * SQRT5 / 64.0;

/// Route agreement demanded by [`assemble_constants`].
pub const ROUTE_TOLERANCE: f64 = 1e-8;

/// `kappa(v) = 2 sqrt(v(1-v)) + v - 1` on `[0, 1]`.
pub fn kappa(v: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&v) {
        return domain(format!("kappa needs 0 <= v <= 1, got {v}"));
    }
    Ok(2.0 * (v * (1.0 - v)).sqrt() + v - 1.0)
}

/// `delta_v = sqrt((1 - v) / v)`.
pub fn delta(v: f64) -> Result<f64> {
    if !(v > 0.0 && v <= 1.0) {
        return domain(format!("delta needs 0 < v <= 1, got {v}"));
    }
    Ok(((1.0 - v) / v).sqrt())
}

fn check_geometry(v: f64) -> Result<()> {
    if !(v > 0.2 && v < 1.0) {
        return domain(format!("geometry functions need 1/5 < v < 1, got {v}"));
    }
    Ok(())
}

/// Geometry functions of the `v = log log p / log log x` variable.
#[derive(Debug, Clone)]
pub struct Geometry {
    mode: NuMode,
    ctx: Arc<EulerContext>,
}

/// Values at one point `v`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometryPoint {
    pub v: f64,
    pub delta: f64,
    pub kappa: f64,
    pub rho: f64,
    pub rho_plus: f64,
}

/// `(R'(v), R''(v))` by two routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RDerivs {
    pub rp: f64,
    pub rpp: f64,
    pub rp_fd: f64,
    pub rpp_fd: f64,
}

impl Geometry {
    pub fn new(mode: NuMode, budget: &PrecisionBudget) -> Result<Self> {
        Ok(Self {
            mode,
            ctx: EulerContext::shared(budget)?,
        })
    }

    pub fn context(&self) -> &EulerContext {
        &self.ctx
    }

    /// `K(d) = H(d) e^(gamma (d - 1/d)) / Gamma(1 + 1/d)`, `0 < d < 2`.
    pub fn k_nu(&self, d: f64) -> Result<f64> {
        if !(d > 0.0 && d < 2.0) {
            return domain(format!("K needs 0 < d < 2, got {d}"));
        }
        let h = self.ctx.euler_h_real(d, self.mode)?.value;
        Ok(h * (EULER_GAMMA * (d - 1.0 / d)).exp() / special::gamma(1.0 + 1.0 / d)?)
    }

    /// `log K(d)` and its first two derivatives.
    fn log_k_derivs(&self, d: f64) -> Result<(f64, f64, f64)> {
        let s1 = self.ctx.sigma1(d, self.mode)?.value;
        let s2 = self.ctx.sigma2(d, self.mode)?.value;
        let a = 1.0 + 1.0 / d;
        let psi = special::digamma(a)?;
        let psi1 = special::trigamma(a)?;
        let d2 = d * d;
        let first = s1 + EULER_GAMMA * (1.0 + 1.0 / d2) + psi / d2;
        let second = s2 - 2.0 * EULER_GAMMA / (d2 * d) - 2.0 * psi / (d2 * d) - psi1 / (d2 * d2);
        Ok((self.k_nu(d)?.ln(), first, second))
    }

    /// `rho(v) = v^(1/4) K(delta_v) / (2 sqrt(pi) (1 - v)^(3/4))`.
    pub fn rho(&self, v: f64) -> Result<f64> {
        check_geometry(v)?;
        Ok(v.powf(0.25) * self.k_nu(delta(v)?)? / (2.0 * PI.sqrt() * (1.0 - v).powf(0.75)))
    }

    /// `rho^+(v) = delta_v rho(v)`.
    pub fn rho_plus(&self, v: f64) -> Result<f64> {
        Ok(delta(v)? * self.rho(v)?)
    }

    pub fn point(&self, v: f64) -> Result<GeometryPoint> {
        check_geometry(v)?;
        Ok(GeometryPoint {
            v,
            delta: delta(v)?,
            kappa: kappa(v)?,
            rho: self.rho(v)?,
            rho_plus: self.rho_plus(v)?,
        })
    }

    /// `R(v) = log rho(v)`.
    pub fn r(&self, v: f64) -> Result<f64> {
        Ok(self.rho(v)?.ln())
    }

    /// `R'(v)` and `R''(v)` through the chain rule.
    pub fn r_derivs_analytic(&self, v: f64) -> Result<(f64, f64)> {
        check_geometry(v)?;
        let d = delta(v)?;
        if self.mode == NuMode::Multiplicity && d >= 2.0 {
            return domain(format!("Omega-mode needs delta_v < 2, got {d}"));
        }
        let (_, lk1, lk2) = self.log_k_derivs(d)?;
        let dp = -1.0 / (2.0 * v * v * d);
        let dpp = 1.0 / (v * v * v * d) - 1.0 / (4.0 * v.powi(4) * d.powi(3));
        let rp = 0.25 / v + lk1 * dp + 0.75 / (1.0 - v);
        let rpp = -0.25 / (v * v) + lk2 * dp * dp + lk1 * dpp + 0.75 / ((1.0 - v) * (1.0 - v));
        Ok((rp, rpp))
    }

    /// Both routes: analytic, and Richardson-extrapolated central
    /// differences (of `R` for `R'`, of analytic `R'` for `R''`).
    pub fn r_derivs(&self, v: f64) -> Result<RDerivs> {
        let (rp, rpp) = self.r_derivs_analytic(v)?;
        let h = 1e-4;
        let rp_fd = richardson(|t| self.r(t), v, h)?;
        let rpp_fd = richardson(|t| Ok(self.r_derivs_analytic(t)?.0), v, h)?;
        Ok(RDerivs { rp, rpp, rp_fd, rpp_fd })
    }

    /// `B_v = h_0''(1/delta) / (2 h_0(1/delta))`.
    pub fn b_v(&self, v: f64) -> Result<f64> {
        Ok(special::h0_second_log_ratio(1.0 / delta(v)?)? / 2.0)
    }

    /// `C_v = F''(delta) / (2 F(delta)) = ((gamma + sigma_1)^2 + sigma_2) / 2`.
    pub fn c_v(&self, v: f64) -> Result<f64> {
        let d = delta(v)?;
        let s1 = self.ctx.sigma1(d, self.mode)?.value;
        let s2 = self.ctx.sigma2(d, self.mode)?.value;
        Ok(((EULER_GAMMA + s1).powi(2) + s2) / 2.0)
    }

    /// `B_v` and `C_v` from Taylor jets of `h_0` and `F` instead.
    pub fn b_c_from_jets(&self, v: f64) -> Result<(f64, f64)> {
        let d = delta(v)?;
        let jh = saddle::Analytic::taylor(&H0, 1.0 / d, 2)?;
        let f = FNu::new(self.mode, self.ctx.budget())?;
        let jf = saddle::Analytic::taylor(&f, d, 2)?;
        // c_2 / c_0 = phi'' / (2 phi)
        Ok(((jh.coeff(2) / jh.coeff(0)).re, (jf.coeff(2) / jf.coeff(0)).re))
    }

    fn a_star(&self, d: f64) -> Result<f64> {
        let (j1, j2) = self.ctx.j_funcs(d, self.mode)?;
        Ok(4.0 * (EULER_GAMMA + special::digamma(1.0 + 1.0 / d)?) / d + j1 + j1 * j1 + j2 - 0.75)
    }

    /// First-order local correction `s_1(v)`.
    pub fn s1(&self, v: f64) -> Result<f64> {
        check_geometry(v)?;
        let d = delta(v)?;
        if self.mode == NuMode::Multiplicity && d >= 2.0 {
            return domain(format!("Omega-mode needs delta_v < 2, got {d}"));
        }
        let w = (v * (1.0 - v)).sqrt();
        Ok(self.a_star(d)? / (4.0 * w)
            - self.b_v(v)? * v.sqrt() / (1.0 - v).powf(1.5)
            - self.c_v(v)? * (1.0 - v).sqrt() / v.powf(1.5))
    }

    /// `s_1^+(v) = s_1(v) + (2 j_1(delta_v) + 1) / (4 sqrt(v(1-v)))`.
    pub fn s1_plus(&self, v: f64) -> Result<f64> {
        let d = delta(v)?;
        let (j1, _) = self.ctx.j_funcs(d, self.mode)?;
        Ok(self.s1(v)? + (2.0 * j1 + 1.0) / (4.0 * (v * (1.0 - v)).sqrt()))
    }
}

fn richardson(f: impl Fn(f64) -> Result<f64>, v: f64, h: f64) -> Result<f64> {
    let central = |h: f64| -> Result<f64> { Ok((f(v + h)? - f(v - h)?) / (2.0 * h)) };
    let coarse = central(h)?;
    let fine = central(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Free-function forms.
pub fn s1(v: f64, mode: NuMode, budget: &PrecisionBudget) -> Result<f64> {
    Geometry::new(mode, budget)?.s1(v)
}

pub fn s1_plus(v: f64, mode: NuMode, budget: &PrecisionBudget) -> Result<f64> {
    Geometry::new(mode, budget)?.s1_plus(v)
}

pub fn r_derivs(mode: NuMode, budget: &PrecisionBudget) -> Result<RDerivs> {
    Geometry::new(mode, budget)?.r_derivs(PHI_STAR)
}

/// Second-order correction from expanding `rho (log x)^kappa` about `phi*`,
/// in terms of `tau_j = R^(j)(phi*) / j!`.
pub fn saddle_correction(rp: f64, rpp: f64) -> f64 {
    let (t1, t2) = (rp, rpp / 2.0);
    let k2 = K2.abs();
    (t1 * t1 + 2.0 * t2) / (4.0 * k2) + 3.0 * (t1 * K3 + K4) / (4.0 * K2 * K2) + 15.0 * K3 * K3 / (16.0 * k2.powi(3))
}

/// All first-order constants for one mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionReport {
    pub mode: NuMode,
    /// `A = phi e^-gamma H(phi - 1) / (sqrt 5 Gamma(phi))`.
    pub a: f64,
    /// `A` as `phi rho(phi*) sqrt(pi / |K_2|)`.
    pub a_via_rho: f64,
    /// `A_iota = A / phi`, the constant of the odd-`nu` part.
    pub a_iota: f64,
    pub s1_at_phistar: f64,
    pub s1_plus_at_phistar: f64,
    pub rp: f64,
    pub rpp: f64,
    pub rp_fd: f64,
    pub rpp_fd: f64,
    /// `j_1(phi - 1)`, `j_2(phi - 1)`.
    pub j1: f64,
    pub j2: f64,
    pub b: f64,
    pub c: f64,
    pub a1: f64,
    /// `a_1 = s_1(phi*) + T(R', R'')` with `T` built from `K_2, K_3, K_4`.
    pub a1_via_t: f64,
    pub a1_plus: f64,
    /// `a_1^+ = s_1^+(phi*) + T(R^+', R^+'')` with `R^+ = log rho^+`.
    pub a1_plus_via_t: f64,
    pub c1: f64,
    /// Fully expanded closed form of `c_1`.
    pub c1_expanded: f64,
    pub budget: PrecisionBudget,
    pub errors: ReportErrors,
}

/// Absolute error estimates: the change under a refined budget plus the
/// disagreement between routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
pub struct ReportErrors {
    pub a: f64,
    pub a1: f64,
    pub a1_plus: f64,
    pub c1: f64,
    pub rp: f64,
    pub rpp: f64,
}

fn assemble_once(mode: NuMode, budget: &PrecisionBudget) -> Result<ExpansionReport> {
    let g = Geometry::new(mode, budget)?;
    let ctx = g.context();
    let h = ctx.euler_h_real(GOLDEN - 1.0, mode)?.value;
    let a = GOLDEN * (-EULER_GAMMA).exp() * h / (SQRT5 * special::gamma(GOLDEN)?);
    let rho_star = g.rho(PHI_STAR)?;
    let a_iota_rho = rho_star * (PI / K2.abs()).sqrt();
    let a_via_rho = GOLDEN * a_iota_rho;

    let d = g.r_derivs(PHI_STAR)?;
    let (rp, rpp) = (d.rp, d.rpp);
    let s1 = g.s1(PHI_STAR)?;
    let s1p = g.s1_plus(PHI_STAR)?;
    let (j1, j2) = ctx.j_funcs(GOLDEN - 1.0, mode)?;

    let a1 = s1 - 3.0 * SQRT5 / 20.0 - 0.3 * rp + SQRT5 / 25.0 * (rp * rp + rpp);
    let a1_via_t = s1 + saddle_correction(rp, rpp);
    let a1_plus = a1 + GOLDEN / 2.0 - SQRT5 / 5.0 * rp + SQRT5 / 4.0 * (2.0 * j1 + 1.0);
    // log rho^+ = R + log delta; (log delta)' = -1/(2v(1-v)), (log delta)'' = (1-2v)/(2 v^2 (1-v)^2)
    let v = PHI_STAR;
    let lp = -1.0 / (2.0 * v * (1.0 - v));
    let lpp = (1.0 - 2.0 * v) / (2.0 * v * v * (1.0 - v) * (1.0 - v));
    let a1_plus_via_t = s1p + saddle_correction(rp + lp, rpp + lpp);
    let c1 = (GOLDEN * a1 + a1_plus) / (GOLDEN + 1.0);
    let c1_expanded = s1 + (19.0 * SQRT5 - 35.0) / 40.0 + (2.0 - 3.0 * SQRT5) / 10.0 * rp
        + SQRT5 / 25.0 * (rp * rp + rpp)
        + (3.0 * SQRT5 - 5.0) / 4.0 * j1;

    Ok(ExpansionReport {
        mode,
        a,
        a_via_rho,
        a_iota: a / GOLDEN,
        s1_at_phistar: s1,
        s1_plus_at_phistar: s1p,
        rp,
        rpp,
        rp_fd: d.rp_fd,
        rpp_fd: d.rpp_fd,
        j1,
        j2,
        b: g.b_v(PHI_STAR)?,
        c: g.c_v(PHI_STAR)?,
        a1,
        a1_via_t,
        a1_plus,
        a1_plus_via_t,
        c1,
        c1_expanded,
        budget: *budget,
        errors: ReportErrors::default(),
    })
}

/// Budget used to estimate truncation error: twice the prime cutoff and
/// four more tail terms.
pub fn refined_budget(budget: &PrecisionBudget) -> PrecisionBudget {
    PrecisionBudget {
        prime_cutoff: budget.prime_cutoff * 2,
        zeta_depth: budget.zeta_depth + 4,
        ..*budget
    }
}

/// Computes every constant, checks the independent routes against each
/// other and attaches error estimates.
pub fn assemble_constants(mode: NuMode, budget: &PrecisionBudget) -> Result<ExpansionReport> {
    let mut rep = assemble_once(mode, budget)?;
    let fine = assemble_once(mode, &refined_budget(budget))?;
    let routes = [
        ("A", rep.a, rep.a_via_rho),
        ("a1", rep.a1, rep.a1_via_t),
        ("a1_plus", rep.a1_plus, rep.a1_plus_via_t),
        ("c1", rep.c1, rep.c1_expanded),
        ("R'", rep.rp, rep.rp_fd),
        ("R''", rep.rpp, rep.rpp_fd),
    ];
    for (name, lhs, rhs) in routes {
        let scale = 1.0f64.max(lhs.abs());
        if !((lhs - rhs).abs() <= ROUTE_TOLERANCE * scale) {
            return Err(Error::Consistency {
                quantity: format!("{name} ({mode})"),
                lhs,
                rhs,
                tolerance: ROUTE_TOLERANCE * scale,
            });
        }
    }
    rep.errors = ReportErrors {
        a: (rep.a - fine.a).abs() + (rep.a - rep.a_via_rho).abs(),
        a1: (rep.a1 - fine.a1).abs() + (rep.a1 - rep.a1_via_t).abs(),
        a1_plus: (rep.a1_plus - fine.a1_plus).abs() + (rep.a1_plus - rep.a1_plus_via_t).abs(),
        c1: (rep.c1 - fine.c1).abs() + (rep.c1 - rep.c1_expanded).abs(),
        rp: (rep.rp - fine.rp).abs() + (rep.rp - rep.rp_fd).abs(),
        rpp: (rep.rpp - fine.rpp).abs() + (rep.rpp - rep.rpp_fd).abs(),
    };
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Predictions
// ---------------------------------------------------------------------------

/// Predicted rough count with the theorem's range flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiPrediction {
    pub value: f64,
    /// `log u` with `u = log x / log y`.
    pub log_u: f64,
    /// `r = (k - 1) / log u`.
    pub r: f64,
    /// Whether `exp((log log x)^3) <= y <= sqrt x` holds.
    pub in_theorem_range: bool,
}

/// `Phi_k(x, y) ~ x (log u)^(k-1) / ((k-1)! log x) sum_{m <= M} f_m(r) / (log u)^m`.
/// The prediction does not depend on the mode.
pub fn predict_phi(x: f64, y: f64, k: u32, order_m: usize, window: RatioWindow) -> Result<PhiPrediction> {
    if !(x >= 3.0 && y >= 2.0 && y < x) {
        return domain(format!("predict_phi needs x >= 3 and 2 <= y < x, got x = {x}, y = {y}"));
    }
    if k < 1 {
        return domain("predict_phi needs k >= 1");
    }
    let lx = x.ln();
    let log_u = (lx / y.ln()).ln();
    if !(log_u > 0.0) {
        return domain(format!("predict_phi needs u > 1, got log u = {log_u}"));
    }
    let r = (k - 1) as f64 / log_u;
    if !(window.a <= r && r <= window.b) {
        return domain(format!("r = {r} outside window [{}, {}]", window.a, window.b));
    }
    let f = saddle::coeff_functionals(order_m, &H0, r)?;
    let series: f64 = f.iter().enumerate().map(|(m, c)| c.re / log_u.powi(m as i32)).sum();
    let log_main = lx.ln().mul_add(-1.0, x.ln()) + (k - 1) as f64 * log_u.ln()
        - special::ln_gamma_real(k as f64)?;
    let in_range = lx.ln().powi(3) <= y.ln() && y <= x.sqrt();
    Ok(PhiPrediction {
        value: log_main.exp() * series,
        log_u,
        r,
        in_theorem_range: in_range,
    })
}

/// `lambda(p, k) ~ (log log p)^k / k! sum_{m <= M} g_m(k / log log p) / (log log p)^m`.
pub fn predict_lambda(p: f64, k: u32, mode: NuMode, order_m: usize, budget: &PrecisionBudget, window: RatioWindow) -> Result<f64> {
    if !(p >= 3.0) {
        return domain(format!("predict_lambda needs p >= 3, got {p}"));
    }
    let l = p.ln().ln();
    let r = k as f64 / l;
    if r >= mode.radius() {
        return domain(format!("ratio {r} at or beyond the radius {} of F_{mode}", mode.radius()));
    }
    if !(window.a <= r && r <= window.b) {
        return domain(format!("ratio {r} outside window [{}, {}]", window.a, window.b));
    }
    let g = saddle::coeff_functionals(order_m, &FNu::new(mode, budget)?, r)?;
    let series: f64 = g.iter().enumerate().map(|(m, c)| c.re / l.powi(m as i32)).sum();
    let log_main = k as f64 * l.ln() - special::ln_gamma_real(k as f64 + 1.0)?;
    Ok(log_main.exp() * series)
}

/// Predictions for `S(x)` and its parity parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SPrediction {
    pub x: f64,
    /// `A x (log x)^(1/phi)`.
    pub j0: f64,
    /// `J0 (1 + c_1 / log log x)`.
    pub j1: f64,
    /// `A_iota x (log x)^(1/phi) (1 + a_1 / log log x)`.
    pub iota: f64,
    /// `(A_iota / phi) x (log x)^(1/phi) (1 + a_1^+ / log log x)`.
    pub pi: f64,
}

pub fn predict_s(x: f64, report: &ExpansionReport) -> Result<SPrediction> {
    if !(x >= 3.0) {
        return domain(format!("predict_S needs x >= 3, got {x}"));
    }
    let lx = x.ln();
    let l2 = lx.ln();
    let base = x * lx.powf(1.0 / GOLDEN);
    let j0 = report.a * base;
    Ok(SPrediction {
        x,
        j0,
        j1: j0 * (1.0 + report.c1 / l2),
        iota: report.a_iota * base * (1.0 + report.a1 / l2),
        pi: report.a_iota / GOLDEN * base * (1.0 + report.a1_plus / l2),
    })
}

// ---------------------------------------------------------------------------
// Fixed sampled grids
// ---------------------------------------------------------------------------

/// Specification of the `(x, y, k)` grid on which the one-term correction of
/// the rough-count prediction is compared with the leading term.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiGridSpec {
    pub xs: Vec<u64>,
    pub ys_per_x: usize,
    pub y_range: (u64, u64),
    pub window: RatioWindow,
    pub seed: u64,
}

impl Default for PhiGridSpec {
    fn default() -> Self {
        Self {
            xs: vec![1_000_000, 10_000_000, 100_000_000],
            ys_per_x: 16,
            y_range: (3, 200),
            window: RatioWindow { a: 0.5, b: 2.0 },
            seed: 20_240_607,
        }
    }
}

/// One grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiGridPoint {
    pub x: u64,
    pub y: u64,
    pub k: u32,
}

impl PhiGridSpec {
    /// For each `x`, `ys_per_x` distinct `y` drawn uniformly from `y_range`
    /// (clipped to `sqrt x`), then every `k >= 2` with `(k-1)/log u` inside
    /// the window.
    pub fn points(&self) -> Vec<PhiGridPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut out = Vec::new();
        for &x in &self.xs {
            let hi = self.y_range.1.min((x as f64).sqrt() as u64);
            let mut pool: Vec<u64> = (self.y_range.0..=hi).collect();
            pool.shuffle(&mut rng);
            let mut ys: Vec<u64> = pool.into_iter().take(self.ys_per_x).collect();
            ys.sort_unstable();
            for y in ys {
                let log_u = ((x as f64).ln() / (y as f64).ln()).ln();
                for k in 2..64u32 {
                    let r = (k - 1) as f64 / log_u;
                    if r > self.window.b {
                        break;
                    }
                    if r >= self.window.a {
                        out.push(PhiGridPoint { x, y, k });
                    }
                }
            }
        }
        out
    }
}

/// Ladder of primes for the `lambda` comparison: the least prime `>= 10^j`.
pub fn lambda_ladder(exponents: &[u32]) -> Vec<u64> {
    exponents
        .iter()
        .map(|&j| {
            let mut n = 10u64.pow(j);
            while !(2..).take_while(|d| d * d <= n).all(|d| n % d != 0) {
                n += 1;
            }
            n
        })
        .collect()
}

/// `k = round(log log p)`.
pub fn ladder_k(p: u64) -> u32 {
    (p as f64).ln().ln().round() as u32
}

/// Uniform sample in `[lo, hi)` (used for seeded spot checks).
pub fn seeded_uniform(seed: u64, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa_geometry() {
        assert!((kappa(PHI_STAR).unwrap() - 1.0 / GOLDEN).abs() < 1e-12);
        assert!((delta(PHI_STAR).unwrap() - (GOLDEN - 1.0)).abs() < 1e-12);
        assert!((kappa(0.6).unwrap() - 0.4 * (6f64.sqrt() - 1.0)).abs() < 1e-12);
        assert!((kappa(16.0 / 17.0).unwrap() - 7.0 / 17.0).abs() < 1e-12);
        assert!(kappa(1.5).is_err());
    }

    #[test]
    fn k_collapses_at_one() {
        for mode in NuMode::BOTH {
            let g = Geometry::new(mode, &PrecisionBudget::default()).unwrap();
            assert!((g.k_nu(1.0).unwrap() - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn grid_is_reproducible() {
        let spec = PhiGridSpec::default();
        assert_eq!(spec.points(), spec.points());
        assert!(spec.points().iter().all(|p| p.k >= 2));
    }
}
