use midprime::expansion::assemble_constants;
use midprime::sieve::{middle_primes, sum_log_middle_via_decomposition};
use midprime::{NuMode, PrecisionBudget};
use midprime_demo::{middle_info, sum_comparison, MAX_DEMO_X};

#[test]
fn middle_prime_of_small_numbers() {
    // 360 = 2^3 3^2 5
    let w = middle_info(360, NuMode::Distinct).unwrap();
    assert_eq!(w.factors, vec![(2, 3), (3, 2), (5, 1)]);
    assert_eq!((w.omega, w.big_omega, w.middle), (3, 6, 3));
    assert_eq!(middle_info(360, NuMode::Multiplicity).unwrap().middle, 2);
    assert_eq!(middle_info(97, NuMode::Distinct).unwrap().middle, 97);
    assert!(middle_info(1, NuMode::Distinct).is_err());
}

#[test]
fn middle_prime_matches_table() {
    for mode in NuMode::BOTH {
        let table = middle_primes(3000, mode).unwrap();
        for n in 2..=3000u64 {
            assert_eq!(middle_info(n, mode).unwrap().middle, table[n as usize], "n = {n}");
        }
    }
}

#[test]
fn twelve_digit_input_factors_back() {
    let n = 999_999_000_001u64;
    let info = middle_info(n, NuMode::Distinct).unwrap();
    let prod: u64 = info.factors.iter().map(|&(p, e)| p.pow(e)).product();
    assert_eq!(prod, n);
}

#[test]
fn sum_comparison_agrees_with_oracle() {
    for mode in NuMode::BOTH {
        let rep = assemble_constants(mode, &PrecisionBudget::default()).unwrap();
        let c = sum_comparison(20_000, mode, &rep).unwrap();
        let oracle = sum_log_middle_via_decomposition(20_000, mode).unwrap();
        assert_eq!(c.exact, oracle.total());
        assert!((c.odd + c.even - c.exact).abs() < 1e-9 * c.exact);
        assert!(c.ratio_j0 > 0.5 && c.ratio_j0 < 2.0);
        assert!(sum_comparison(MAX_DEMO_X + 1, mode, &rep).is_err());
    }
}
