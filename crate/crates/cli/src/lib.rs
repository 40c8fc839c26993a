//! Experiment harness around the `midprime` crate: constant assembly, sieve
//! sweeps and oracle comparisons, written as versioned CSV or JSON.

use std::fmt;

pub mod commands;
pub mod config;
pub mod oracles;
pub mod report;

/// Bad input: malformed config, out-of-range values, refused workloads.
/// Maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
