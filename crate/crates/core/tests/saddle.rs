use midprime::saddle::{
    coeff_functionals, contour_i, expand_i, expansion_error, loglog_slope, mu_identity_residual, mu_series_exact,
    mu_series_lagrange, mu_series_reversion, q_series, stirling_d, Analytic, Constant, FNu, RatioWindow, H0,
};
use midprime::special::{h0_real, h0_second_log_ratio, EulerContext};
use midprime::{NuMode, PrecisionBudget, EULER_GAMMA};
use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::Zero;

type Gauss = Complex<BigRational>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn mu_identity_is_exact_to_order_24() {
    let mu = mu_series_exact(24).unwrap();
    let res = mu_identity_residual(&mu).unwrap();
    assert!(res.coeffs().iter().all(|c| c.is_zero()));
}

#[test]
fn reversion_routes_agree_exactly() {
    let a: midprime::series::PowerSeries<Gauss> = mu_series_reversion(16).unwrap();
    let b: midprime::series::PowerSeries<Gauss> = mu_series_lagrange(16).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.coeff(1), Gauss::new(q(1, 1), q(0, 1)));
    assert_eq!(a.coeff(3), Gauss::new(q(-1, 36), q(0, 1)));
    let qs: midprime::series::PowerSeries<Gauss> = q_series(4).unwrap();
    assert_eq!(qs.coeff(0), Gauss::new(q(1, 1), q(0, 1)));
    assert_eq!(qs.coeff(1), Gauss::new(q(0, 1), q(-1, 6)));
}

#[test]
fn stirling_coefficients() {
    let d = stirling_d(3).unwrap();
    assert_eq!(d.get(0), 1.0);
    assert!((d.get(1) - 1.0 / 12.0).abs() < 1e-16);
    assert!((d.get(2) - 1.0 / 288.0).abs() < 1e-16);
    assert!((d.get(3) + 139.0 / 51840.0).abs() < 1e-16);
}

/// `phi(v)` and `phi''(v)` in closed form.
fn closed_forms(phi: &str, v: f64, ctx: &EulerContext) -> (f64, f64) {
    match phi {
        "h0" => {
            let h = h0_real(v);
            (h, h * h0_second_log_ratio(v).unwrap())
        }
        _ => {
            let mode: NuMode = phi.parse().unwrap();
            let f = ctx.f_nu(Complex64::new(v, 0.0), mode).unwrap().re;
            let s1 = ctx.sigma1(v, mode).unwrap().value;
            let s2 = ctx.sigma2(v, mode).unwrap().value;
            (f, f * ((EULER_GAMMA + s1).powi(2) + s2))
        }
    }
}

#[test]
fn first_two_functionals_match_closed_forms() {
    let budget = PrecisionBudget::default();
    let ctx = EulerContext::shared(&budget).unwrap();
    let fw = FNu::new(NuMode::Distinct, &budget).unwrap();
    let fo = FNu::new(NuMode::Multiplicity, &budget).unwrap();
    let cases: [(&str, &dyn Analytic); 3] = [("h0", &H0), ("omega", &fw), ("Omega", &fo)];
    for (name, phi) in cases {
        for v in [0.25, 0.6, 0.9, 1.3, 1.8] {
            let c = coeff_functionals(1, phi, v).unwrap();
            let (f, f2) = closed_forms(name, v, &ctx);
            assert!((c[0].re - f).abs() < 1e-8 * f.abs().max(1.0), "{name} c0 at {v}");
            let want = -0.5 * v * f2;
            assert!((c[1].re - want).abs() < 1e-8 * want.abs().max(1.0), "{name} c1 at {v}: {} vs {want}", c[1].re);
            assert!(c[0].im.abs() < 1e-12 && c[1].im.abs() < 1e-12);
        }
    }
}

#[test]
fn constant_function_has_no_first_correction() {
    let c = coeff_functionals(1, &Constant(2.5), 0.8).unwrap();
    assert!((c[0].re - 2.5).abs() < 1e-15);
    assert!(c[1].norm() < 1e-14);
}

#[test]
fn expansion_error_slopes_for_h0() {
    let budget = PrecisionBudget::default();
    let xis = [20.0, 40.0, 80.0, 160.0];
    for m in 0..=2usize {
        let errs: Vec<f64> = xis.iter().map(|&xi| expansion_error(xi as u64, &H0, xi, m, &budget).unwrap()).collect();
        let slope = loglog_slope(&xis, &errs);
        assert!((slope + (m as f64 + 1.0)).abs() <= 0.35, "M = {m}: slope {slope}");
    }
}

#[test]
fn quadrature_matches_expansion_at_large_xi() {
    let budget = PrecisionBudget::default();
    let f = FNu::new(NuMode::Multiplicity, &budget).unwrap();
    let exact = contour_i(125, &f, 250.0, &budget).unwrap();
    let errs: Vec<f64> = (0..=3)
        .map(|m| {
            let approx = expand_i(125, &f, 250.0, m, RatioWindow::default()).unwrap();
            ((approx.value() - exact.value()) / exact.value()).norm()
        })
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(errs[3] < 1e-7, "{errs:?}");
}
