use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use midprime_cli::config::{parse_count, FileConfig, Format, ModeSel, RunConfig};
use midprime_cli::{commands, UsageError, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(name = "midprime", version, about = "Middle prime factor sums: exact sieving against asymptotics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Assemble the expansion constants and check them against published values
    Constants,
    /// Sieve S(x) for each x and compare with the one- and two-term predictions
    Empirical,
    /// Exact rough-number counts against their predictions
    Phi,
    /// Exact lambda(p, k) against the saddle-point prediction
    Lambda,
    /// Contour quadrature against the coefficient expansion
    Saddle,
    /// Run every acceptance family
    Oracles,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Constants => "constants",
            Command::Empirical => "empirical",
            Command::Phi => "phi",
            Command::Lambda => "lambda",
            Command::Saddle => "saddle",
            Command::Oracles => "oracles",
        }
    }
}

#[derive(clap::Args, Debug, Default)]
struct Opts {
    /// TOML config file; flags override its keys
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeSel>,
    /// Single x (accepts 1e8 notation)
    #[arg(long, global = true, value_parser = parse_count)]
    x: Option<u64>,
    /// Comma-separated x values
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_count)]
    x_list: Option<Vec<u64>>,
    #[arg(long, global = true)]
    budget_digits: Option<u32>,
    #[arg(long, global = true, value_parser = parse_count)]
    prime_cutoff: Option<u64>,
    #[arg(long, global = true)]
    segment_size: Option<usize>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for sampled grids
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Expansion order M
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_count)]
    y_list: Option<Vec<u64>>,
    #[arg(long, global = true)]
    k: Option<u32>,
    #[arg(long, global = true, value_delimiter = ',', value_parser = parse_count)]
    p_list: Option<Vec<u64>>,
    /// Saddle ratio k / xi
    #[arg(long, global = true)]
    r: Option<f64>,
    #[arg(long, global = true, value_delimiter = ',')]
    xi_list: Option<Vec<f64>>,
}

impl Opts {
    fn into_file_config(self) -> FileConfig {
        FileConfig {
            mode: self.mode,
            x: self.x,
            x_list: self.x_list,
            budget_digits: self.budget_digits,
            prime_cutoff: self.prime_cutoff,
            segment_size: self.segment_size,
            out: self.out,
            format: self.format,
            seed: self.seed,
            order: self.order,
            y_list: self.y_list,
            k: self.k,
            p_list: self.p_list,
            r: self.r,
            xi_list: self.xi_list,
            max_x: None,
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let base = match &cli.opts.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let cfg = RunConfig::resolve(cli.command.name(), base.overlay(cli.opts.into_file_config()))?;
    let doc = commands::run(&cfg)?;
    let mut out: Box<dyn Write> = match &cfg.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    doc.write(cfg.format, &mut out)?;
    out.flush()?;
    for v in &doc.verdicts {
        eprintln!("{}", v.line());
    }
    Ok(doc.passed())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_PASS as u8 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::from(EXIT_PASS as u8),
        Ok(false) => ExitCode::from(EXIT_FAIL as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.chain().any(|c| c.is::<UsageError>() || c.is::<midprime::Error>() && is_input_error(c));
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_FAIL } as u8)
        }
    }
}

/// Domain and range errors from the library come from bad arguments.
fn is_input_error(e: &(dyn std::error::Error + 'static)) -> bool {
    matches!(e.downcast_ref::<midprime::Error>(), Some(midprime::Error::Domain(_) | midprime::Error::Range(_)))
}
