//! Run configuration: built-in defaults, then an optional TOML file, then
//! command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use midprime::sieve::DEFAULT_SEGMENT_SIZE;
use midprime::{NuMode, PrecisionBudget};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::UsageError;

/// Hard ceiling for sieve-backed commands, whatever the config says.
pub const HARD_MAX_X: u64 = 1_000_000_000;

/// Environment variable naming the prime-table cache directory.
pub const CACHE_DIR_ENV: &str = "MIDPRIME_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum ModeSel {
    #[serde(rename = "omega")]
    #[value(name = "omega")]
    Distinct,
    #[serde(rename = "Omega")]
    #[value(name = "Omega")]
    Multiplicity,
    #[serde(rename = "both")]
    #[value(name = "both")]
    Both,
}

impl ModeSel {
    pub fn modes(self) -> Vec<NuMode> {
        match self {
            ModeSel::Distinct => vec![NuMode::Distinct],
            ModeSel::Multiplicity => vec![NuMode::Multiplicity],
            ModeSel::Both => NuMode::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Keys accepted in a config file.  Every key is optional; unknown keys are
/// an error.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub mode: Option<ModeSel>,
    pub x: Option<u64>,
    pub x_list: Option<Vec<u64>>,
    pub budget_digits: Option<u32>,
    pub prime_cutoff: Option<u64>,
    pub segment_size: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub order: Option<usize>,
    pub y_list: Option<Vec<u64>>,
    pub k: Option<u32>,
    pub p_list: Option<Vec<u64>>,
    pub r: Option<f64>,
    pub xi_list: Option<Vec<f64>>,
    pub max_x: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| UsageError(format!("invalid config {}: {e}", path.display())))
    }

    /// `other` wins wherever it sets a key.
    pub fn overlay(self, other: FileConfig) -> FileConfig {
        FileConfig {
            mode: other.mode.or(self.mode),
            x: other.x.or(self.x),
            x_list: other.x_list.or(self.x_list),
            budget_digits: other.budget_digits.or(self.budget_digits),
            prime_cutoff: other.prime_cutoff.or(self.prime_cutoff),
            segment_size: other.segment_size.or(self.segment_size),
            out: other.out.or(self.out),
            format: other.format.or(self.format),
            seed: other.seed.or(self.seed),
            order: other.order.or(self.order),
            y_list: other.y_list.or(self.y_list),
            k: other.k.or(self.k),
            p_list: other.p_list.or(self.p_list),
            r: other.r.or(self.r),
            xi_list: other.xi_list.or(self.xi_list),
            max_x: other.max_x.or(self.max_x),
        }
    }
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub modes: Vec<NuMode>,
    pub x: Option<u64>,
    pub x_list: Vec<u64>,
    pub budget: PrecisionBudget,
    pub segment_size: usize,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
    pub order: usize,
    pub y_list: Vec<u64>,
    pub k: Option<u32>,
    pub p_list: Vec<u64>,
    pub r: f64,
    pub xi_list: Vec<f64>,
    pub max_x: u64,
}

pub const DEFAULT_SEED: u64 = 20_240_607;
pub const DEFAULT_X_LIST: [u64; 4] = [100_000, 1_000_000, 10_000_000, 100_000_000];
pub const DEFAULT_P_LIST: [u64; 4] = [1009, 10_007, 100_003, 1_000_003];
pub const DEFAULT_XI_LIST: [f64; 4] = [20.0, 40.0, 80.0, 160.0];

impl RunConfig {
    pub fn resolve(command: &str, cfg: FileConfig) -> Result<Self, UsageError> {
        let default_budget = PrecisionBudget::default();
        let budget = PrecisionBudget {
            target_digits: cfg.budget_digits.unwrap_or(default_budget.target_digits),
            prime_cutoff: cfg.prime_cutoff.unwrap_or(default_budget.prime_cutoff),
            ..default_budget
        };
        budget.validate().map_err(|e| UsageError(format!("precision budget: {e}")))?;
        if budget.target_digits < 4 {
            return Err(UsageError(format!("budget_digits must be at least 4, got {}", budget.target_digits)));
        }
        let max_x = cfg.max_x.unwrap_or(HARD_MAX_X);
        if max_x > HARD_MAX_X {
            return Err(UsageError(format!("max_x may not exceed {HARD_MAX_X}")));
        }
        let segment_size = cfg.segment_size.unwrap_or(DEFAULT_SEGMENT_SIZE);
        if !(1_024..=1 << 26).contains(&segment_size) {
            return Err(UsageError(format!("segment_size must lie in [1024, 2^26], got {segment_size}")));
        }
        let default_format = match command {
            "empirical" | "phi" | "lambda" | "saddle" => Format::Csv,
            _ => Format::Json,
        };
        let x_list = match (cfg.x_list, cfg.x) {
            (Some(l), _) => l,
            (None, Some(x)) => vec![x],
            (None, None) => DEFAULT_X_LIST.to_vec(),
        };
        let rc = RunConfig {
            command: command.to_string(),
            modes: cfg.mode.unwrap_or(ModeSel::Both).modes(),
            x: cfg.x,
            x_list,
            budget,
            segment_size,
            out: cfg.out,
            format: cfg.format.unwrap_or(default_format),
            seed: cfg.seed.unwrap_or(DEFAULT_SEED),
            order: cfg.order.unwrap_or(1),
            y_list: cfg.y_list.unwrap_or_else(|| vec![50]),
            k: cfg.k,
            p_list: cfg.p_list.unwrap_or_else(|| DEFAULT_P_LIST.to_vec()),
            r: cfg.r.unwrap_or(1.0),
            xi_list: cfg.xi_list.unwrap_or_else(|| DEFAULT_XI_LIST.to_vec()),
            max_x,
        };
        if rc.order > 8 {
            return Err(UsageError(format!("order must be at most 8, got {}", rc.order)));
        }
        Ok(rc)
    }

    /// Refuses sieve work beyond the configured cap.
    pub fn check_cap(&self, x: u64) -> Result<(), UsageError> {
        if x > self.max_x {
            return Err(UsageError(format!(
                "x = {x} exceeds the cap of {}; lower the x values or raise max_x in the config (at most {HARD_MAX_X})",
                self.max_x
            )));
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form of the configuration.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        format!("{:x}", Sha256::digest(canonical))
    }
}

/// Parses counts written as integers or in scientific notation (`1e8`).
pub fn parse_count(s: &str) -> Result<u64, String> {
    let s = s.trim().replace('_', "");
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if f < 0.0 || f.fract() != 0.0 || f > 1e19 {
        return Err(format!("not a non-negative integer: {s}"));
    }
    Ok(f as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_in_scientific_notation() {
        assert_eq!(parse_count("1e8").unwrap(), 100_000_000);
        assert_eq!(parse_count("10_000").unwrap(), 10_000);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<FileConfig>("mode = \"omega\"\nx = 1000\n").is_ok());
        assert!(toml::from_str::<FileConfig>("colour = 3\n").is_err());
    }

    #[test]
    fn overlay_prefers_later() {
        let a = FileConfig { x: Some(10), seed: Some(1), ..Default::default() };
        let b = FileConfig { x: Some(20), ..Default::default() };
        let c = a.overlay(b);
        assert_eq!((c.x, c.seed), (Some(20), Some(1)));
    }
}
