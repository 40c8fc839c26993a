use midprime::counts::{lambda_exact, phi_count, RoughCountRequest};
use midprime::expansion::{ladder_k, lambda_ladder, predict_lambda, predict_phi, PhiGridSpec};
use midprime::saddle::RatioWindow;
use midprime::special::{f_nu, h0_real, ln_gamma_real};
use midprime::{Error, NuMode, PrecisionBudget};
use num_complex::Complex64;

#[test]
fn phi_leading_term() {
    let (x, y, k) = (1e7f64, 50.0f64, 3u32);
    let p = predict_phi(x, y, k, 0, RatioWindow::default()).unwrap();
    let log_u = (x.ln() / y.ln()).ln();
    let r = 2.0 / log_u;
    let want = x * h0_real(r) * log_u.powi(2) / (2.0 * x.ln());
    assert!((p.value / want - 1.0).abs() < 1e-13);
    assert!(!p.in_theorem_range);
}

#[test]
fn phi_prediction_near_exact_count() {
    let (x, y, k) = (10_000_000u64, 50u64, 2u32);
    let exact = phi_count(&RoughCountRequest { x, y, mode: NuMode::Distinct, kmax: 2 }).unwrap()[2] as f64;
    let p = predict_phi(x as f64, y as f64, k, 1, RatioWindow::default()).unwrap();
    assert!((p.value / exact - 1.0).abs() < 1.0 / p.log_u, "{} vs {exact}", p.value);
}

#[test]
fn phi_window_is_enforced() {
    let w = RatioWindow { a: 0.5, b: 2.0 };
    assert!(matches!(predict_phi(1e8, 50.0, 1, 1, w), Err(Error::Domain(_))));
    assert!(matches!(predict_phi(1e8, 50.0, 9, 1, w), Err(Error::Domain(_))));
    assert!(predict_phi(1e8, 1e9, 3, 1, w).is_err());
}

#[test]
fn lambda_leading_term() {
    let budget = PrecisionBudget::default();
    for mode in NuMode::BOTH {
        let (p, k) = (10_007f64, 2u32);
        let l = p.ln().ln();
        let r = k as f64 / l;
        let f = f_nu(Complex64::new(r, 0.0), mode, &budget).unwrap().re;
        let want = l.powi(k as i32) * f / (ln_gamma_real(k as f64 + 1.0).unwrap()).exp();
        let got = predict_lambda(p, k, mode, 0, &budget, RatioWindow::default()).unwrap();
        assert!((got / want - 1.0).abs() < 1e-13);
    }
}

#[test]
fn lambda_radius_guard() {
    let budget = PrecisionBudget::default();
    // log log 1009 = 1.93..., k = 4 gives ratio above 2
    let e = predict_lambda(1009.0, 4, NuMode::Multiplicity, 1, &budget, RatioWindow::default());
    assert!(matches!(e, Err(Error::Domain(_))));
    assert!(predict_lambda(1009.0, 4, NuMode::Distinct, 1, &budget, RatioWindow::default()).is_ok());
}

/// Observed accuracy against the theoretical error order: the omega-mode
/// first-order prediction is within `1/L^2`; the Omega-mode generating
/// function has a pole at 2, so only the leading term is within `1/L` at this
/// scale.
#[test]
fn lambda_prediction_tracks_exact_values() {
    let budget = PrecisionBudget::default();
    for p in lambda_ladder(&[3, 4, 5, 6]) {
        let k = ladder_k(p);
        let l = (p as f64).ln().ln();
        let w = RatioWindow::default();
        let exact = lambda_exact(p, NuMode::Distinct, k as usize).unwrap().get(k as usize);
        let pred = predict_lambda(p as f64, k, NuMode::Distinct, 1, &budget, w).unwrap();
        assert!((pred / exact - 1.0).abs() < l.powi(-2), "p = {p}: {pred} vs {exact}");
        let exact = lambda_exact(p, NuMode::Multiplicity, k as usize).unwrap().get(k as usize);
        let pred = predict_lambda(p as f64, k, NuMode::Multiplicity, 0, &budget, w).unwrap();
        assert!((pred / exact - 1.0).abs() < 1.0 / l, "p = {p}: {pred} vs {exact}");
    }
}

#[test]
fn ladder_primes() {
    assert_eq!(lambda_ladder(&[3, 4, 5, 6]), vec![1009, 10_007, 100_003, 1_000_003]);
    assert_eq!(ladder_k(1_000_003), 3);
}

#[test]
fn grid_respects_window_and_range() {
    let spec = PhiGridSpec::default();
    let pts = spec.points();
    assert!(!pts.is_empty());
    for pt in pts {
        assert!(pt.y * pt.y <= pt.x);
        let log_u = ((pt.x as f64).ln() / (pt.y as f64).ln()).ln();
        let r = (pt.k - 1) as f64 / log_u;
        assert!(spec.window.a <= r && r <= spec.window.b);
    }
}
