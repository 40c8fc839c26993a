//! Exact and asymptotic evaluation of sums of the logarithm of the middle
//! prime factor of an integer.
//!
//! The crate has two halves that are meant to be checked against each other:
//!
//! * an exact side ([`sieve`], [`counts`]) that factors every `n <= x` with a
//!   segmented sieve and computes `S(x) = sum log p_m(n)`, the rough-number
//!   counts `Phi_k(x, y)` and the logarithmic means `lambda(p, k)`;
//! * an analytic side ([`special`], [`saddle`], [`expansion`]) that evaluates
//!   the Euler products, the saddle-point coefficient functionals and the
//!   first-order constants `A`, `a_1`, `a_1^+`, `c_1` of the expansion
//!   `S(x) ~ A x (log x)^(1/phi) {1 + c_1 / log log x + ...}`.
//!
//! Everything that counts primes "with or without multiplicity" is driven by
//! [`NuMode`].

pub mod counts;
pub mod error;
pub mod expansion;
pub mod primes;
pub mod saddle;
pub mod series;
pub mod sieve;
pub mod special;
pub mod sum;

pub use error::{Error, Result};
pub use sieve::{Factorization, NuMode};
pub use special::PrecisionBudget;

/// Golden ratio `(1 + sqrt 5) / 2`.
pub const GOLDEN: f64 = 1.618_033_988_749_894_8;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
