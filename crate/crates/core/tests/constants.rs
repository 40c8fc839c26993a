use midprime::expansion::{
    assemble_constants, kappa, predict_s, refined_budget, Geometry, K2, K3, K4, PHI_STAR,
};
use midprime::special::{golden_entropy_roots, q_entropy};
use midprime::{NuMode, PrecisionBudget, GOLDEN};
use num_complex::Complex64;

fn report(mode: NuMode) -> midprime::expansion::ExpansionReport {
    assemble_constants(mode, &PrecisionBudget::default()).unwrap()
}

#[test]
fn golden_constants() {
    let w = report(NuMode::Distinct);
    let m = report(NuMode::Multiplicity);
    assert!((w.a - 0.493286).abs() < 5e-7, "{}", w.a);
    assert!((m.a - 0.414005).abs() < 5e-7, "{}", m.a);
    assert!((w.c1 - 0.245436).abs() < 1e-5, "{}", w.c1);
    assert!((m.c1 - 0.334322).abs() < 1e-5, "{}", m.c1);
}

#[test]
fn routes_agree() {
    for mode in NuMode::BOTH {
        let r = report(mode);
        assert!((r.a - r.a_via_rho).abs() < 1e-8);
        assert!((r.c1 - r.c1_expanded).abs() < 1e-8);
        assert!((r.c1 - (GOLDEN * r.a1 + r.a1_plus) / (GOLDEN + 1.0)).abs() < 1e-15);
        assert!((r.rp - r.rp_fd).abs() < 1e-6);
        assert!((r.rpp - r.rpp_fd).abs() < 1e-6);
    }
}

#[test]
fn stable_under_budget_doubling() {
    for mode in NuMode::BOTH {
        let base = PrecisionBudget::default();
        let r = assemble_constants(mode, &base).unwrap();
        let f = assemble_constants(mode, &refined_budget(&base)).unwrap();
        let slack = 1e-14;
        assert!((r.a - f.a).abs() <= r.errors.a + slack);
        assert!((r.c1 - f.c1).abs() <= r.errors.c1 + slack);
        assert!((r.a1_plus - f.a1_plus).abs() <= r.errors.a1_plus + slack);
        assert!((r.rp - f.rp).abs() <= r.errors.rp + slack);
        assert!((r.rpp - f.rpp).abs() <= r.errors.rpp + slack);
    }
}

/// Taylor coefficients of `kappa` at `phi*` by high-order central differences.
fn kappa_fd(order: usize) -> f64 {
    let k = |t: f64| kappa(PHI_STAR + t).unwrap();
    let h: f64 = match order {
        1 => 1e-4,
        2 => 1e-3,
        3 => 3e-3,
        _ => 1e-2,
    };
    // five-point (order 1, 2) and seven-point (order 3, 4) stencils, O(h^4)
    let d = match order {
        1 => (-k(2.0 * h) + 8.0 * k(h) - 8.0 * k(-h) + k(-2.0 * h)) / (12.0 * h),
        2 => (-k(2.0 * h) + 16.0 * k(h) - 30.0 * k(0.0) + 16.0 * k(-h) - k(-2.0 * h)) / (12.0 * h * h),
        3 => (-k(3.0 * h) + 8.0 * k(2.0 * h) - 13.0 * k(h) + 13.0 * k(-h) - 8.0 * k(-2.0 * h) + k(-3.0 * h))
            / (8.0 * h.powi(3)),
        _ => (-k(3.0 * h) + 12.0 * k(2.0 * h) - 39.0 * k(h) + 56.0 * k(0.0) - 39.0 * k(-h) + 12.0 * k(-2.0 * h)
            - k(-3.0 * h))
            / (6.0 * h.powi(4)),
    };
    d / (1..=order).product::<usize>() as f64
}

#[test]
fn kappa_taylor_coefficients() {
    assert!((kappa(PHI_STAR).unwrap() - 1.0 / GOLDEN).abs() < 1e-12);
    assert!(kappa_fd(1).abs() < 1e-10);
    assert!((kappa_fd(2) - K2).abs() < 1e-8, "{}", kappa_fd(2) - K2);
    // third and fourth coefficients by trapezoid Cauchy integrals on |t| = 0.1
    let cauchy = |ord: i32| {
        let n = 128;
        let rad = 0.1;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let t = Complex64::from_polar(rad, 2.0 * std::f64::consts::PI * j as f64 / n as f64);
            let v = t + PHI_STAR;
            let k = 2.0 * (v * (1.0 - v)).sqrt() + v - 1.0;
            acc += k * t.powi(-ord);
        }
        (acc / n as f64).re
    };
    assert!((cauchy(2) - K2).abs() < 1e-8);
    assert!((cauchy(3) - K3).abs() < 1e-8, "{}", cauchy(3) - K3);
    assert!((cauchy(4) - K4).abs() < 1e-8, "{}", cauchy(4) - K4);
    assert!((kappa_fd(3) - K3).abs() < 1e-4);
    assert!((kappa_fd(4) - K4).abs() < 1e-3);
}

#[test]
fn boundary_kappa_values() {
    assert!((kappa(0.6).unwrap() - 0.4 * (6f64.sqrt() - 1.0)).abs() < 1e-12);
    assert!((kappa(16.0 / 17.0).unwrap() - 7.0 / 17.0).abs() < 1e-12);
}

#[test]
fn entropy_roots() {
    let (x0, x1) = golden_entropy_roots();
    assert!((x0 - 0.26583).abs() < 5e-6, "{x0}");
    assert!((x1 - 1.99374).abs() < 5e-6, "{x1}");
    for x in [x0, x1] {
        assert!((1.0 / GOLDEN + q_entropy(x).unwrap() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn b_and_c_by_two_routes() {
    for mode in NuMode::BOTH {
        let g = Geometry::new(mode, &PrecisionBudget::default()).unwrap();
        for v in [0.3, 0.5, PHI_STAR, 0.85] {
            let (bj, cj) = g.b_c_from_jets(v).unwrap();
            assert!((g.b_v(v).unwrap() - bj).abs() < 1e-8, "B at {v}");
            assert!((g.c_v(v).unwrap() - cj).abs() < 1e-8, "C at {v} {mode}");
        }
    }
}

#[test]
fn r_prime_matches_sampled_slope() {
    for mode in NuMode::BOTH {
        let g = Geometry::new(mode, &PrecisionBudget::default()).unwrap();
        let (rp, _) = g.r_derivs_analytic(PHI_STAR).unwrap();
        let slope = (g.r(PHI_STAR + 0.01).unwrap() - g.r(PHI_STAR - 0.01).unwrap()) / 0.02;
        assert_eq!(rp.signum(), slope.signum());
        assert!((rp - slope).abs() < 0.05 * rp.abs());
    }
}

#[test]
fn delta_at_phi_star() {
    assert!((midprime::expansion::delta(PHI_STAR).unwrap() - (GOLDEN - 1.0)).abs() < 1e-12);
}

#[test]
fn geometry_domain_guards() {
    let g = Geometry::new(NuMode::Multiplicity, &PrecisionBudget::default()).unwrap();
    assert!(g.s1(0.1).is_err());
    assert!(g.s1(1.0).is_err());
    // delta_v >= 2 once v <= 1/5, which the range already excludes; near the edge it still works
    assert!(g.s1(0.21).is_ok());
}

#[test]
fn parity_split_recombines() {
    for mode in NuMode::BOTH {
        let r = report(mode);
        assert!((r.a_iota * (1.0 + 1.0 / GOLDEN) - r.a).abs() < 1e-12);
        for x in [1e6, 1e8, 1e20] {
            let s = predict_s(x, &r).unwrap();
            assert!(((s.iota + s.pi) / s.j1 - 1.0).abs() < 1e-13);
            assert!(s.j1 > s.j0);
        }
        let far = predict_s(1e300, &r).unwrap();
        assert!((far.iota / far.pi - GOLDEN).abs() < 0.2);
    }
}

#[test]
fn s1_plus_shift() {
    let g = Geometry::new(NuMode::Distinct, &PrecisionBudget::default()).unwrap();
    let r = report(NuMode::Distinct);
    let diff = g.s1_plus(PHI_STAR).unwrap() - g.s1(PHI_STAR).unwrap();
    let want = (2.0 * r.j1 + 1.0) * 5f64.sqrt() / 4.0;
    assert!((diff - want).abs() < 1e-12);
}
