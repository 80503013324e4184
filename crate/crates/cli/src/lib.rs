//! Batch runner for the verification suites.
//!
//! Each selected `(check, g, m)` cell is evaluated independently, possibly
//! in parallel, and the entries are merged into one sorted report. Output
//! is byte-identical regardless of the worker count unless timings are
//! requested.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use ckverify::ckmck::{build_ck, hyp_report, mck_full_check, verify_ck};
use ckverify::schubert::{dimension_report, fano_degree_check};
use ckverify::tautring::{build_generators, fp_report, injectivity_report, symmetrized_report, verify_relations};
use ckverify::{Entry, Report, SpaceSpec, Status};
use rayon::prelude::*;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Check {
    Ck,
    Mck,
    Hyp,
    TautRelations,
    TautSym,
    Hilbert,
    Fp,
    Schubert,
    Dims,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Ck,
        Check::Mck,
        Check::Hyp,
        Check::TautRelations,
        Check::TautSym,
        Check::Hilbert,
        Check::Fp,
        Check::Schubert,
        Check::Dims,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("no checks selected")]
    NoChecks,
    #[error("no genus values given")]
    NoGenus,
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("--m-max must be at least 1")]
    ZeroM,
    #[error("--term-cap must be positive")]
    ZeroCap,
    #[error("--workers must be positive")]
    ZeroWorkers,
    #[error("could not start worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub g_values: Vec<u32>,
    pub m_max: usize,
    pub checks: BTreeSet<Check>,
    pub format: OutputFormat,
    pub term_cap: u128,
    /// Whether cap-skips make the run exit nonzero.
    pub strict_caps: bool,
    /// Size of the worker pool; `None` uses rayon's default.
    pub workers: Option<usize>,
    /// Record per-cell wall time. Makes output nondeterministic.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            g_values: vec![2],
            m_max: 2,
            checks: Check::ALL.into_iter().collect(),
            format: OutputFormat::Text,
            term_cap: ckverify::tautring::DEFAULT_CAP,
            strict_caps: true,
            workers: None,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.checks.is_empty() {
            return Err(ConfigError::NoChecks);
        }
        if self.g_values.is_empty() {
            return Err(ConfigError::NoGenus);
        }
        if self.g_values.contains(&0) {
            return Err(ConfigError::ZeroGenus);
        }
        if self.m_max == 0 {
            return Err(ConfigError::ZeroM);
        }
        if self.term_cap == 0 {
            return Err(ConfigError::ZeroCap);
        }
        if self.workers == Some(0) {
            return Err(ConfigError::ZeroWorkers);
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
    /// Diagnostics for stderr, such as cells skipped as inapplicable.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
struct Cell {
    check: Check,
    g: u32,
    m: usize,
}

fn cells(config: &RunConfig, notes: &mut Vec<String>) -> Vec<Cell> {
    let mut genera: Vec<u32> = config.g_values.clone();
    genera.sort_unstable();
    genera.dedup();
    let mut out = Vec::new();
    for &check in &config.checks {
        match check {
            Check::Schubert => out.push(Cell { check, g: 0, m: 0 }),
            Check::TautRelations | Check::Hilbert => {
                for &g in &genera {
                    out.extend((1..=config.m_max).map(|m| Cell { check, g, m }));
                }
            }
            Check::TautSym => out.extend(genera.iter().map(|&g| Cell { check, g, m: 2 * g as usize + 2 })),
            Check::Fp => {
                for &g in &genera {
                    if g < 2 {
                        notes.push(format!("fp: skipping g={g}, the canonical class needs g >= 2"));
                    } else {
                        out.push(Cell { check, g, m: 2 });
                    }
                }
            }
            Check::Ck | Check::Mck | Check::Hyp | Check::Dims => {
                out.extend(genera.iter().map(|&g| Cell { check, g, m: 1 }))
            }
        }
    }
    out
}

fn error_entry(name: &str, g: u32, e: ckverify::Error) -> Report {
    let mut r = Report::new();
    r.push(Entry::new(name, Status::Fail).param("g", g as i64).value("error", e));
    r
}

fn evaluate(cell: Cell, config: &RunConfig) -> Report {
    let Cell { check, g, m } = cell;
    match check {
        Check::Ck => match build_ck(g) {
            Ok(d) => verify_ck(&d),
            Err(e) => error_entry("ck", g, e),
        },
        Check::Mck => match build_ck(g) {
            Ok(d) => mck_full_check(&d),
            Err(e) => error_entry("mck", g, e),
        },
        Check::Hyp => hyp_report(g),
        Check::TautRelations => match SpaceSpec::y_type(g).and_then(|s| build_generators(s, m)) {
            Ok(gens) => verify_relations(&gens).unwrap_or_else(|e| error_entry("taut", g, e)),
            Err(e) => error_entry("taut", g, e),
        },
        Check::TautSym => match SpaceSpec::y_type(g) {
            Ok(s) => symmetrized_report(s, config.term_cap),
            Err(e) => error_entry("symmetrized-tau-sum", g, e),
        },
        Check::Hilbert => match SpaceSpec::y_type(g) {
            Ok(s) => injectivity_report(s, m, config.term_cap),
            Err(e) => error_entry("taut.hilbert-match", g, e),
        },
        Check::Fp => fp_report(g),
        Check::Schubert => fano_degree_check().unwrap_or_else(|e| error_entry("schubert", 0, e)),
        Check::Dims => dimension_report(g).unwrap_or_else(|e| error_entry("dims", g, e)),
    }
}

fn exit_code(report: &Report, strict_caps: bool) -> i32 {
    if report.count(Status::Fail) > 0 {
        1
    } else if strict_caps && report.count(Status::SkippedCap) > 0 {
        2
    } else {
        0
    }
}

/// Runs every selected cell and returns the sorted report with its exit code.
pub fn run(config: &RunConfig) -> Result<Outcome, ConfigError> {
    config.validate()?;
    let mut notes = Vec::new();
    let work = cells(config, &mut notes);
    let execute = || -> Vec<Report> {
        work.par_iter()
            .map(|&cell| {
                let start = Instant::now();
                let mut r = evaluate(cell, config);
                if config.timings {
                    let ms = start.elapsed().as_millis() as u64;
                    r.entries.iter_mut().for_each(|e| e.wall_time_ms = Some(ms));
                }
                r
            })
            .collect()
    };
    let parts = match config.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| ConfigError::Pool(e.to_string()))?
            .install(execute),
        None => execute(),
    };
    let mut report = Report::new();
    parts.into_iter().for_each(|r| report.extend(r));
    report.sort();
    let exit_code = exit_code(&report, config.strict_caps);
    Ok(Outcome { report, exit_code, notes })
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: u32,
    entries: &'a [Entry],
}

pub fn render_json(report: &Report) -> String {
    let env = Envelope { schema: SCHEMA_VERSION, entries: &report.entries };
    let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for e in &report.entries {
        let status = match e.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedCap => "SKIP",
        };
        let params: Vec<String> = e.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = write!(out, "{status}  {}", e.check);
        if !params.is_empty() {
            let _ = write!(out, " [{}]", params.join(" "));
        }
        for (k, v) in &e.values {
            let _ = write!(out, "  {k}={v}");
        }
        if let Some(ms) = e.wall_time_ms {
            let _ = write!(out, "  ({ms} ms)");
        }
        out.push('\n');
        if let Some(w) = &e.witness {
            let _ = writeln!(out, "      witness on {} (arity {}): {} terms", w.space, w.arity, w.terms.len());
        }
    }
    let _ = writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::SkippedCap)
    );
    out
}

pub fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => render_text(report),
        OutputFormat::Json => render_json(report),
    }
}
