use midprime::counts::{lambda_exact, phi_count, rough_count, RoughCountRequest};
use midprime::expansion::{kappa, PHI_STAR};
use midprime::primes::primes_le;
use midprime::series::PowerSeries;
use midprime::sieve::{factorize, isqrt, sum_log_middle, sum_log_middle_with, SieveSegment};
use midprime::sum::LogAccumulator;
use midprime::{NuMode, GOLDEN};
use num_traits::Signed;
use proptest::prelude::*;

fn segment_for(lo: u64, hi: u64) -> SieveSegment {
    let base = primes_le(isqrt(hi) + 1);
    SieveSegment::build(lo, hi, &base).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn factorization_invariants(lo in 2u64..5_000_000_000, len in 1u64..2_000) {
        let seg = segment_for(lo, lo + len);
        for n in lo..lo + len {
            let f = factorize(n, &seg).unwrap();
            let prod: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(prod, n);
            prop_assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(f.omega() <= f.big_omega());
            for mode in NuMode::BOTH {
                let pm = f.middle_prime(mode).unwrap();
                prop_assert_eq!(n % pm, 0);
                // exactly ceil(nu/2) prime factors (in the mode's counting) are <= p_m
                let nu = f.nu(mode);
                let below: u32 = f.factors().iter().filter(|&&(p, _)| p <= pm).map(|&(_, e)| match mode {
                    NuMode::Distinct => 1,
                    NuMode::Multiplicity => e,
                }).sum();
                let before: u32 = f.factors().iter().filter(|&&(p, _)| p < pm).map(|&(_, e)| match mode {
                    NuMode::Distinct => 1,
                    NuMode::Multiplicity => e,
                }).sum();
                prop_assert!(before < nu.div_ceil(2) && nu.div_ceil(2) <= below);
            }
        }
    }

    #[test]
    fn segment_size_does_not_change_sums(x in 2u64..200_000, size in 64usize..50_000) {
        for mode in NuMode::BOTH {
            prop_assert_eq!(sum_log_middle_with(x, mode, size).unwrap(), sum_log_middle(x, mode).unwrap());
        }
    }

    #[test]
    fn fixed_point_sums_are_order_free(ps in proptest::collection::vec(2u64..1_000_000_000, 1..200)) {
        let forward: LogAccumulator = ps.iter().map(|&p| { let mut a = LogAccumulator::new(); a.add_log_of(p); a }).sum();
        let mut backward = LogAccumulator::new();
        for &p in ps.iter().rev() { backward.add_log_of(p); }
        prop_assert_eq!(forward, backward);
        let direct: f64 = ps.iter().map(|&p| (p as f64).ln()).sum();
        prop_assert!((forward.value() - direct).abs() < 1e-9 * direct.max(1.0));
    }

    #[test]
    fn rough_counts_partition(x in 10u64..300_000, y in 2u64..400) {
        prop_assume!(y <= x);
        for mode in NuMode::BOTH {
            let c = phi_count(&RoughCountRequest { x, y, mode, kmax: 40 }).unwrap();
            prop_assert_eq!(c.iter().sum::<u64>(), rough_count(x, y).unwrap());
            prop_assert_eq!(c[0], 1);
        }
    }

    #[test]
    fn lambda_coefficients_grow_with_p(idx in 1usize..60, k in 1usize..12) {
        let ps = primes_le(300);
        let (p, next) = (ps[idx] as u64, ps[idx + 1] as u64);
        for mode in NuMode::BOTH {
            let a = lambda_exact(p, mode, k).unwrap().get(k);
            let b = lambda_exact(next, mode, k).unwrap().get(k);
            prop_assert!(a >= 0.0 && b >= a && (a == 0.0 || b > a));
        }
    }

    #[test]
    fn kappa_peaks_at_phi_star(v in 0.0f64..=1.0) {
        let k = kappa(v).unwrap();
        prop_assert!(k <= 1.0 / GOLDEN + 1e-15);
        prop_assert!(kappa(PHI_STAR).unwrap() >= k - 1e-15);
    }

    #[test]
    fn exp_ln_roundtrip(c in proptest::collection::vec(-1.0f64..1.0, 2..16)) {
        let mut coeffs = c.clone();
        coeffs[0] = 1.0;
        let s = PowerSeries::new(coeffs);
        let back = s.ln().unwrap().exp().unwrap();
        for (a, b) in back.coeffs().iter().zip(s.coeffs()) {
            prop_assert!((a - b).abs() < 1e-9 * (1.0 + b.abs()) * 10f64.powi(s.order() as i32 / 4));
        }
    }

    #[test]
    fn reversion_inverts_composition(c in proptest::collection::vec(-0.5f64..0.5, 3..12)) {
        let mut coeffs = c.clone();
        coeffs[0] = 0.0;
        coeffs[1] = 1.0 + coeffs[1].abs();
        let f = PowerSeries::new(coeffs);
        let g = f.revert().unwrap();
        let id = f.compose(&g).unwrap();
        for (k, a) in id.coeffs().iter().enumerate() {
            let want = if k == 1 { 1.0 } else { 0.0 };
            prop_assert!((a - want).abs() < 1e-8 * 10f64.powi(k as i32 / 3), "k = {} {}", k, a);
        }
    }
}

#[test]
fn rational_reversion_is_exact() {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let f: PowerSeries<BigRational> =
        PowerSeries::from_fn(10, |k| if k == 0 { BigRational::from_integer(0.into()) } else { BigRational::new(BigInt::from(1), BigInt::from(k as i64 * k as i64)) });
    let id = f.compose(&f.revert().unwrap()).unwrap();
    for (k, a) in id.coeffs().iter().enumerate() {
        let want = if k == 1 { BigRational::from_integer(1.into()) } else { BigRational::from_integer(0.into()) };
        assert_eq!(a, &want);
        assert!(!a.is_negative());
    }
}
