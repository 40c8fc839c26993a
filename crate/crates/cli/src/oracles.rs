//! Acceptance families.  Each returns a verdict and the measurements behind
//! it.

use anyhow::Result;
use midprime::counts::{lambda_exact, phi_count, phi_count_multi, phi_generating, rough_count, RoughCountRequest};
use midprime::expansion::{
    assemble_constants, ladder_k, lambda_ladder, predict_lambda, predict_phi, predict_s, ExpansionReport,
    PhiGridSpec,
};
use midprime::primes::primes_le;
use midprime::saddle::{
    coeff_functionals, expansion_error, loglog_slope, mu_identity_residual, mu_series_exact, Analytic, FNu,
    RatioWindow, H0,
};
use midprime::sieve::{
    middle_primes, middle_primes_via_decomposition, sum_log_middle_both, sum_log_middle_via_decomposition,
    sum_log_middle_with,
};
use midprime::special::{golden_entropy_roots, h0_real, h0_second_log_ratio, q_entropy, EulerContext};
use midprime::{NuMode, EULER_GAMMA, GOLDEN};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::config::RunConfig;
use crate::report::{Table, Tag, Value};

/// One acceptance family.
pub struct Family {
    pub verdict: crate::report::Verdict,
    pub table: Table,
}

fn verdict(id: &str, name: &str, pass: bool, detail: String) -> crate::report::Verdict {
    crate::report::Verdict { id: id.into(), name: name.into(), pass, detail }
}

const E: Option<Tag> = Some(Tag::Exact);
const P: Option<Tag> = Some(Tag::Predicted);
const G: Option<Tag> = Some(Tag::PaperGolden);
const L: Option<Tag> = None;

fn txt(s: impl Into<String>) -> Value {
    Value::Text(s.into())
}

/// Published values: (quantity, mode, value, required tolerance, target tolerance).
pub const GOLDEN_VALUES: [(&str, NuMode, f64, f64, f64); 4] = [
    ("A", NuMode::Distinct, 0.493286, 5e-7, 5e-7),
    ("A", NuMode::Multiplicity, 0.414005, 5e-7, 5e-7),
    ("c1", NuMode::Distinct, 0.245436, 1e-4, 1e-5),
    ("c1", NuMode::Multiplicity, 0.334322, 1e-4, 1e-5),
];

pub fn golden_table(reports: &[ExpansionReport]) -> (Table, Vec<crate::report::Verdict>) {
    let mut t = Table::new(
        "golden",
        &[("quantity", L), ("mode", L), ("published", G), ("computed", P), ("abs_diff", P), ("tolerance", G), ("within_target", L)],
    );
    let mut vs = Vec::new();
    for (q, mode, value, tol, target) in GOLDEN_VALUES {
        let Some(r) = reports.iter().find(|r| r.mode == mode) else { continue };
        let got = if q == "A" { r.a } else { r.c1 };
        let diff = (got - value).abs();
        t.push(vec![
            txt(q),
            txt(mode.name()),
            Value::Real(value),
            Value::Real(got),
            Value::Real(diff),
            Value::Real(tol),
            Value::Flag(diff <= target),
        ]);
        vs.push(verdict(
            &format!("golden-{q}-{mode}"),
            &format!("{q} ({mode})"),
            diff <= tol,
            format!("computed {got:.10}, published {value}, |diff| = {diff:.2e}, tolerance {tol:.0e}"),
        ));
    }
    (t, vs)
}

/// Criterion 1: published constants.
pub fn golden_constants(cfg: &RunConfig) -> Result<Family> {
    let reports: Vec<ExpansionReport> =
        NuMode::BOTH.iter().map(|&m| assemble_constants(m, &cfg.budget)).collect::<Result<_, _>>()?;
    let (table, vs) = golden_table(&reports);
    let pass = vs.iter().all(|v| v.pass);
    let detail = vs.iter().map(|v| v.detail.clone()).collect::<Vec<_>>().join("; ");
    Ok(Family { verdict: verdict("1", "golden constants", pass, detail), table })
}

/// Criterion 2: roots of `1/phi + Q(xi) - 1 = 0`.
pub fn entropy_roots(_cfg: &RunConfig) -> Result<Family> {
    let (x0, x1) = golden_entropy_roots();
    let mut t = Table::new("entropy_roots", &[("root", L), ("value", P), ("published", G), ("residual", P)]);
    let mut pass = true;
    for (name, v, want) in [("xi0", x0, 0.26583), ("xi1", x1, 1.99374)] {
        let res = 1.0 / GOLDEN + q_entropy(v)? - 1.0;
        pass &= (v - want).abs() <= 5e-6 && res.abs() <= 1e-10;
        t.push(vec![txt(name), Value::Real(v), Value::Real(want), Value::Real(res)]);
    }
    Ok(Family {
        verdict: verdict("2", "entropy roots", pass, format!("xi0 = {x0:.8}, xi1 = {x1:.8}")),
        table: t,
    })
}

/// Criterion 3: the reverted series identity and the first two coefficient
/// functionals against closed forms.
pub fn saddle_identities(cfg: &RunConfig) -> Result<Family> {
    let mu = mu_series_exact(24)?;
    let residual = mu_identity_residual(&mu)?;
    let nonzero = residual.coeffs().iter().filter(|c| !c.is_zero()).count();
    let ctx = EulerContext::shared(&cfg.budget)?;
    let fw = FNu::new(NuMode::Distinct, &cfg.budget)?;
    let fo = FNu::new(NuMode::Multiplicity, &cfg.budget)?;
    let mut t = Table::new(
        "functionals",
        &[("phi", L), ("v", E), ("c0", P), ("c0_closed", P), ("c1", P), ("c1_closed", P), ("max_rel_diff", P)],
    );
    let mut worst = 0.0f64;
    let cases: [(&str, &dyn Analytic, Option<NuMode>); 3] =
        [("h0", &H0, None), ("F_omega", &fw, Some(NuMode::Distinct)), ("F_Omega", &fo, Some(NuMode::Multiplicity))];
    for (name, phi, mode) in cases {
        for v in [0.25, 0.6, 0.9, 1.3, 1.8] {
            let c = coeff_functionals(1, phi, v)?;
            let (f, f2) = match mode {
                None => {
                    let h = h0_real(v);
                    (h, h * h0_second_log_ratio(v)?)
                }
                Some(m) => {
                    let f = ctx.f_nu(Complex64::new(v, 0.0), m)?.re;
                    let s1 = ctx.sigma1(v, m)?.value;
                    let s2 = ctx.sigma2(v, m)?.value;
                    (f, f * ((EULER_GAMMA + s1).powi(2) + s2))
                }
            };
            let c1 = -0.5 * v * f2;
            let d = ((c[0].re - f).abs() / f.abs().max(1.0))
                .max((c[1].re - c1).abs() / c1.abs().max(1.0))
                .max(c[0].im.abs())
                .max(c[1].im.abs());
            worst = worst.max(d);
            t.push(vec![txt(name), Value::Real(v), Value::Real(c[0].re), Value::Real(f), Value::Real(c[1].re), Value::Real(c1), Value::Real(d)]);
        }
    }
    let pass = nonzero == 0 && worst <= 1e-8;
    Ok(Family {
        verdict: verdict(
            "3",
            "saddle identities",
            pass,
            format!("order-24 identity residual: {nonzero} nonzero exact coefficients; worst functional mismatch {worst:.2e}"),
        ),
        table: t,
    })
}

/// Criterion 4: log-log error slopes of the expansion against quadrature.
pub fn expansion_slopes(cfg: &RunConfig) -> Result<Family> {
    let xis = [20.0, 40.0, 80.0, 160.0];
    let mut t = Table::new("expansion_slopes", &[("M", E), ("slope", P), ("expected", E), ("errors", L)]);
    let mut pass = true;
    let mut parts = Vec::new();
    for m in 0..=2usize {
        let errs: Vec<f64> = xis
            .iter()
            .map(|&xi| expansion_error(xi as u64, &H0, xi, m, &cfg.budget))
            .collect::<Result<_, _>>()?;
        let slope = loglog_slope(&xis, &errs);
        let want = -(m as f64 + 1.0);
        pass &= (slope - want).abs() <= 0.35;
        parts.push(format!("M={m}: {slope:.3}"));
        let errs_txt: Vec<String> = errs.iter().map(|e| format!("{e:.3e}")).collect();
        t.push(vec![Value::Int(m as u64), Value::Real(slope), Value::Real(want), txt(errs_txt.join(" "))]);
    }
    Ok(Family { verdict: verdict("4", "expansion vs quadrature", pass, parts.join(", ")), table: t })
}

/// Criterion 5: sieve against the decomposition sum, rough-count and
/// `lambda` identities.
pub fn oracle_equivalence(cfg: &RunConfig) -> Result<Family> {
    let mut t = Table::new("oracle_equivalence", &[("check", L), ("mode", L), ("x", E), ("agrees", L)]);
    let mut pass = true;
    for mode in NuMode::BOTH {
        let a = middle_primes(10_000, mode)?;
        let b = middle_primes_via_decomposition(10_000, mode)?;
        let ok = a == b;
        pass &= ok;
        t.push(vec![txt("every x <= 10^4 (per-n middle primes)"), txt(mode.name()), Value::Int(10_000), Value::Flag(ok)]);
        for x in [100_000u64, 1_000_000] {
            let s = sum_log_middle_with(x, mode, cfg.segment_size)?;
            let d = sum_log_middle_via_decomposition(x, mode)?;
            let ok = s == d;
            pass &= ok;
            t.push(vec![txt("S via decomposition"), txt(mode.name()), Value::Int(x), Value::Flag(ok)]);
        }
        for (x, y) in [(100_000u64, 2u64), (100_000, 17), (1_000_000, 101)] {
            let c = phi_count(&RoughCountRequest { x, y, mode, kmax: 64 })?;
            let total: u64 = c.iter().sum();
            let g = phi_generating(x, y, Complex64::new(1.0, 0.0), mode)?;
            let ok = total == rough_count(x, y)? && g.re == total as f64 && g.im == 0.0;
            pass &= ok;
            t.push(vec![txt(format!("Phi collapse at z = 1, y = {y}")), txt(mode.name()), Value::Int(x), Value::Flag(ok)]);
        }
    }
    for p in [3u64, 97, 211] {
        let below = primes_le(p - 1);
        let table = lambda_exact(p, NuMode::Distinct, below.len())?;
        let mass = table.exact().map(|v| v.iter().fold(BigRational::zero(), |a, b| a + b));
        let product = below
            .iter()
            .fold(BigRational::one(), |acc, &q| acc * BigRational::new(BigInt::from(q), BigInt::from(q - 1)));
        let ok = mass == Some(product);
        pass &= ok;
        t.push(vec![txt("lambda mass = prod q/(q-1)"), txt("omega"), Value::Int(p), Value::Flag(ok)]);
    }
    let failed = t.rows.iter().filter(|r| r[3] == Value::Flag(false)).count();
    Ok(Family {
        verdict: verdict("5", "oracle equivalence", pass, format!("{} checks, {failed} disagreements", t.rows.len())),
        table: t,
    })
}

/// Criterion 6a: relative error of the `lambda` prediction along the prime
/// ladder.
pub fn lambda_ladder_family(cfg: &RunConfig) -> Result<Family> {
    let ladder = lambda_ladder(&[3, 4, 5, 6]);
    let mut t = Table::new(
        "lambda_ladder",
        &[("p", E), ("k", E), ("mode", L), ("exact", E), ("predicted", P), ("rel_err", P)],
    );
    let mut pass = true;
    let mut parts = Vec::new();
    for mode in NuMode::BOTH {
        let mut errs = Vec::new();
        for &p in &ladder {
            let k = ladder_k(p);
            let exact = lambda_exact(p, mode, k as usize)?.get(k as usize);
            let pred = predict_lambda(p as f64, k, mode, cfg.order, &cfg.budget, RatioWindow::default())?;
            let rel = (pred / exact - 1.0).abs();
            errs.push(rel);
            t.push(vec![Value::Int(p), Value::Int(k as u64), txt(mode.name()), Value::Real(exact), Value::Real(pred), Value::Real(rel)]);
        }
        let decreasing = errs.windows(2).all(|w| w[1] < w[0]);
        pass &= decreasing;
        let shown: Vec<String> = errs.iter().map(|e| format!("{e:.2e}")).collect();
        parts.push(format!("{mode}: [{}]{}", shown.join(", "), if decreasing { "" } else { " not decreasing" }));
    }
    Ok(Family {
        verdict: verdict("6a", &format!("lambda ladder (M = {})", cfg.order), pass, parts.join("; ")),
        table: t,
    })
}

/// Criterion 6b: one correction term against the leading term on the seeded
/// grid.
pub fn phi_grid_family(cfg: &RunConfig) -> Result<Family> {
    let spec = PhiGridSpec { seed: cfg.seed, ..PhiGridSpec::default() };
    let points = spec.points();
    let mut t = Table::new(
        "phi_grid",
        &[("x", E), ("y", E), ("k", E), ("mode", L), ("exact", E), ("pred_m0", P), ("pred_m1", P), ("m1_better", L)],
    );
    let mut wins = 0usize;
    let mut total = 0usize;
    for mode in NuMode::BOTH {
        for &x in &spec.xs {
            cfg.check_cap(x)?;
            let here: Vec<_> = points.iter().filter(|p| p.x == x).collect();
            let mut ys: Vec<u64> = here.iter().map(|p| p.y).collect();
            ys.dedup();
            let counts = phi_count_multi(x, &ys, mode)?;
            for pt in here {
                let row = &counts[ys.iter().position(|&y| y == pt.y).expect("y present")];
                let exact = row.get(pt.k as usize).copied().unwrap_or(0) as f64;
                let p0 = predict_phi(x as f64, pt.y as f64, pt.k, 0, spec.window)?.value;
                let p1 = predict_phi(x as f64, pt.y as f64, pt.k, 1, spec.window)?.value;
                let better = (p1 - exact).abs() < (p0 - exact).abs();
                wins += better as usize;
                total += 1;
                t.push(vec![
                    Value::Int(x),
                    Value::Int(pt.y),
                    Value::Int(pt.k as u64),
                    txt(mode.name()),
                    Value::Real(exact),
                    Value::Real(p0),
                    Value::Real(p1),
                    Value::Flag(better),
                ]);
            }
        }
    }
    let share = wins as f64 / total as f64;
    Ok(Family {
        verdict: verdict(
            "6b",
            "Phi correction term",
            share >= 0.70,
            format!("M=1 closer on {wins}/{total} = {:.1}% of grid points (seed {})", 100.0 * share, spec.seed),
        ),
        table: t,
    })
}

/// Criterion 7: first-order correction and parity ratio trend, Omega-mode.
pub fn main_trend(cfg: &RunConfig) -> Result<Family> {
    let mode = NuMode::Multiplicity;
    let report = assemble_constants(mode, &cfg.budget)?;
    let xs = [1_000_000u64, 10_000_000, 100_000_000];
    let mut t = Table::new(
        "main_trend",
        &[("x", E), ("s_exact", E), ("s_odd", E), ("s_even", E), ("s_pred_j0", P), ("s_pred_j1", P), ("err_j0", P), ("err_j1", P), ("parity", E)],
    );
    let mut parity = Vec::new();
    let mut last = (0.0, 0.0);
    for &x in &xs {
        cfg.check_cap(x)?;
        let [_, s] = sum_log_middle_both(x, cfg.segment_size)?;
        let pred = predict_s(x as f64, &report)?;
        let e0 = (s.total() / pred.j0 - 1.0).abs();
        let e1 = (s.total() / pred.j1 - 1.0).abs();
        let ratio = s.odd() / s.even();
        parity.push(ratio);
        last = (e0, e1);
        t.push(vec![
            Value::Int(x),
            Value::Real(s.total()),
            Value::Real(s.odd()),
            Value::Real(s.even()),
            Value::Real(pred.j0),
            Value::Real(pred.j1),
            Value::Real(e0),
            Value::Real(e1),
            Value::Real(ratio),
        ]);
    }
    let j1_better = last.1 < last.0;
    let in_band = parity.iter().all(|&r| r > 1.0 && r < GOLDEN + 0.8);
    let toward = parity.windows(2).all(|w| (w[1] - GOLDEN).abs() < (w[0] - GOLDEN).abs());
    let shown: Vec<String> = parity.iter().map(|r| format!("{r:.4}")).collect();
    Ok(Family {
        verdict: verdict(
            "7",
            "main-theorem trend (Omega)",
            j1_better && in_band && toward,
            format!(
                "at 1e8 |S/J0-1| = {:.4}, |S/J1-1| = {:.4}; parity ratios [{}]",
                last.0,
                last.1,
                shown.join(", ")
            ),
        ),
        table: t,
    })
}

/// Every family in criterion order.
pub fn all_families(cfg: &RunConfig) -> Result<Vec<Family>> {
    let runs: [fn(&RunConfig) -> Result<Family>; 8] = [
        golden_constants,
        entropy_roots,
        saddle_identities,
        expansion_slopes,
        oracle_equivalence,
        lambda_ladder_family,
        phi_grid_family,
        main_trend,
    ];
    runs.iter().map(|f| f(cfg)).collect()
}
