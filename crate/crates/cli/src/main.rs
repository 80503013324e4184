use std::collections::BTreeSet;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use ckverify_cli::{render, run, Check, OutputFormat, RunConfig};

const USAGE_ERROR: u8 = 64;

/// Exact verification of cohomological identities on products of
/// hyperelliptic-type spaces, with Schubert-calculus and dimension checks.
#[derive(Debug, Parser)]
#[command(name = "ckverify", version)]
struct Cli {
    /// Genus values, comma separated.
    #[arg(long = "g", value_delimiter = ',', default_value = "2")]
    g: Vec<u32>,

    /// Largest number of factors for the tautological checks.
    #[arg(long, default_value_t = 2)]
    m_max: usize,

    /// Checks to run, comma separated (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    checks: Option<Vec<Check>>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    /// Upper bound on terms or monomials in combinatorial sums.
    #[arg(long, default_value_t = ckverify::tautring::DEFAULT_CAP)]
    term_cap: u128,

    /// Exit with status 2 when a check was skipped by the term cap.
    #[arg(long, action = clap::ArgAction::Set, default_value_t = true)]
    strict_caps: bool,

    /// Number of worker threads.
    #[arg(long)]
    workers: Option<usize>,

    /// Include per-cell wall times (output is then not reproducible).
    #[arg(long)]
    timings: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let config = RunConfig {
        g_values: cli.g,
        m_max: cli.m_max,
        checks: cli.checks.map_or_else(|| Check::ALL.into_iter().collect(), |c| c.into_iter().collect::<BTreeSet<_>>()),
        format: cli.format,
        term_cap: cli.term_cap,
        strict_caps: cli.strict_caps,
        workers: cli.workers,
        timings: cli.timings,
    };
    let outcome = match run(&config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    for note in &outcome.notes {
        eprintln!("note: {note}");
    }
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(render(&outcome.report, config.format).as_bytes()).is_err() {
        return ExitCode::FAILURE;
    }
    ExitCode::from(outcome.exit_code as u8)
}
