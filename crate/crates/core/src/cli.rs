//! Command-line front end.
//!
//! Exit codes: 0 success, 2 malformed input, 3 unsupported ring tag,
//! 4 precondition violation.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Integer, Prime};
use crate::fpmod::FpModule;
use crate::functor::{FpFunctor, FunctorError, FunctorJson, RING_TAG};
use crate::invariants::{lmc, rmc, HilbertData, HilbertPolynomial, K0Class};
use crate::ziegler::{serre_member, vanishing_locus, ClosedSet, ZieglerError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error("unsupported ring {0:?}, only \"ZZ\" is available")]
    UnsupportedRing(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::UnsupportedRing(_) => 3,
            CliError::Precondition(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "fpfunctor", version, about = "Invariants and vanishing loci of finitely presented functors over the integers")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, K0 classes, defects, Hilbert data and vanishing locus.
    Invariants { functor: PathBuf },
    /// Hilbert function values or the eventual linear form at one prime.
    Hilbert {
        functor: PathBuf,
        #[arg(long)]
        prime: String,
        #[arg(long, conflicts_with = "polynomial", value_parser = clap::value_parser!(u32).range(1..))]
        n_max: Option<u32>,
        #[arg(long)]
        polynomial: bool,
    },
    /// Evaluate the functor at a module.
    Eval {
        functor: PathBuf,
        /// Module such as "Z/8+Z/2+Z" or "0".
        #[arg(long, conflicts_with = "at_module", required_unless_present = "at_module")]
        at: Option<String>,
        #[arg(long)]
        at_module: Option<PathBuf>,
    },
    /// Vanishing locus in the Ziegler spectrum.
    Vlocus { functor: PathBuf },
    /// Whether the functor vanishes on a closed set.
    Member {
        functor: PathBuf,
        #[arg(long)]
        set: PathBuf,
    },
    /// Whether a set is closed in the Ziegler spectrum.
    IsClosed {
        #[arg(long)]
        set: PathBuf,
    },
}

const DEFAULT_N_MAX: u32 = 5;

/// Structure of a module as printed in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSummary {
    pub structure: String,
    pub free_rank: usize,
    pub annihilator: String,
}

impl ModuleSummary {
    pub fn of(m: &FpModule) -> Self {
        ModuleSummary {
            structure: format_module(m),
            free_rank: m.free_rank(),
            annihilator: m.annihilator().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertRow {
    pub prime: Prime,
    pub values: Vec<i64>,
    pub polynomial: HilbertPolynomial,
}

/// Everything the `invariants` subcommand computes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub functor: FunctorJson,
    pub rank: i64,
    pub lmc: K0Class,
    pub rmc: K0Class,
    pub defect: ModuleSummary,
    pub covdefect: ModuleSummary,
    /// One row per prime in the torsion support, values for `n = 1..`.
    pub hilbert: Vec<HilbertRow>,
    pub vanishing_locus: ClosedSet,
}

impl Report {
    pub fn of(g: &FpFunctor) -> Self {
        let data = HilbertData::of(g);
        let hilbert = data
            .support()
            .into_iter()
            .map(|p| {
                let polynomial = data.polynomial(&p);
                let n_max = DEFAULT_N_MAX.max(polynomial.threshold + 1);
                let values = (1..=n_max).map(|n| data.value(&p, n)).collect();
                HilbertRow { prime: p, values, polynomial }
            })
            .collect();
        Report {
            functor: FunctorJson::from(g),
            rank: data.rank,
            lmc: lmc(g),
            rmc: rmc(g),
            defect: ModuleSummary::of(&g.defect()),
            covdefect: ModuleSummary::of(&g.covdefect()),
            hilbert,
            vanishing_locus: vanishing_locus(g),
        }
    }

    pub fn to_text(&self) -> String {
        let f = &self.functor;
        let mut lines = vec![
            format!(
                "functor: alpha: {} -> {} ({}x{})",
                format_module(&f.a),
                format_module(&f.b),
                f.alpha.len(),
                f.a.generators()
            ),
            format!("rank: {}", self.rank),
            format!("lmc: {}", self.lmc),
            format!("rmc: {}", self.rmc),
            format!("defect: {} (annihilator {})", self.defect.structure, self.defect.annihilator),
            format!("covdefect: {} (annihilator {})", self.covdefect.structure, self.covdefect.annihilator),
        ];
        if self.hilbert.is_empty() {
            lines.push(format!("hilbert: {}n at every prime", self.rank));
        }
        for row in &self.hilbert {
            lines.push(format!(
                "hilbert at {}: {}; {}",
                row.prime,
                join(&row.values),
                format_polynomial(&row.polynomial)
            ));
        }
        lines.push("vanishing locus:".into());
        lines.extend(self.vanishing_locus.to_string().lines().map(|l| format!("  {l}")));
        lines.join("\n")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertOutput {
    pub prime: Prime,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<HilbertPolynomial>,
}

fn join(values: &[i64]) -> String {
    values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn format_polynomial(p: &HilbertPolynomial) -> String {
    format!("{}n + {} for n >= {}", p.slope, p.constant, p.threshold)
        .replace("+ -", "- ")
}

/// Canonical short form, e.g. `Z/2+Z/4+Z` or `0`.
pub fn format_module(m: &FpModule) -> String {
    m.structure_invariants().to_string()
}

/// Parses `Z`, `Z/d` and sums of them joined by `+`; `0` is the zero module.
pub fn parse_module_dsl(text: &str) -> Result<FpModule, String> {
    let text = text.trim();
    if text == "0" {
        return Ok(FpModule::zero());
    }
    let mut factors = Vec::new();
    let mut free = 0;
    for term in text.split('+') {
        let term = term.trim();
        match term.strip_prefix('Z') {
            Some("") => free += 1,
            Some(rest) => {
                let d = rest
                    .trim_start()
                    .strip_prefix('/')
                    .ok_or_else(|| format!("expected Z or Z/d, found {term:?}"))?
                    .trim();
                let d: Integer = d.parse().map_err(|_| format!("invalid modulus in {term:?}"))?;
                if d <= Integer::from(0) {
                    return Err(format!("modulus must be positive in {term:?}"));
                }
                factors.push(d);
            }
            None => return Err(format!("expected Z or Z/d, found {term:?}")),
        }
    }
    Ok(FpModule::from_invariant_factors(&factors, free))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Malformed(format!("{}: {e}", path.display())))
}

fn malformed(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Malformed(format!("{}: {e}", path.display()))
}

pub fn load_functor(path: &Path) -> Result<FpFunctor, CliError> {
    let value: serde_json::Value = serde_json::from_str(&read(path)?).map_err(|e| malformed(path, e))?;
    if let Some(ring) = value.get("ring").and_then(|r| r.as_str()) {
        if ring != RING_TAG {
            return Err(CliError::UnsupportedRing(ring.to_string()));
        }
    }
    let j: FunctorJson = serde_json::from_value(value).map_err(|e| malformed(path, e))?;
    FpFunctor::try_from(j).map_err(|e| match e {
        FunctorError::UnsupportedRing(r) => CliError::UnsupportedRing(r),
        other => malformed(path, other),
    })
}

pub fn load_module(path: &Path) -> Result<FpModule, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| malformed(path, e))
}

pub fn load_set(path: &Path) -> Result<ClosedSet, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| malformed(path, e))
}

fn parse_prime(text: &str) -> Result<Prime, CliError> {
    let n: Integer = text
        .trim()
        .parse()
        .map_err(|_| CliError::Malformed(format!("--prime expects an integer, found {text:?}")))?;
    Prime::new(n).map_err(|e| CliError::Precondition(format!("--prime {text}: {e}")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

/// Runs one subcommand and returns what goes to standard output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let json = cli.format == Format::Json;
    let text = match &cli.command {
        Command::Invariants { functor } => {
            let report = Report::of(&load_functor(functor)?);
            if json {
                to_json(&report)
            } else {
                report.to_text()
            }
        }
        Command::Hilbert { functor, prime, n_max, polynomial } => {
            let g = load_functor(functor)?;
            let p = parse_prime(prime)?;
            let data = HilbertData::of(&g);
            let output = if *polynomial {
                HilbertOutput { polynomial: Some(data.polynomial(&p)), values: None, prime: p }
            } else {
                let values = (1..=n_max.unwrap_or(DEFAULT_N_MAX)).map(|n| data.value(&p, n)).collect();
                HilbertOutput { values: Some(values), polynomial: None, prime: p }
            };
            match (json, &output.values, &output.polynomial) {
                (true, _, _) => to_json(&output),
                (false, Some(values), _) => join(values),
                (false, None, Some(poly)) => format_polynomial(poly),
                (false, None, None) => unreachable!("one of values and polynomial is set"),
            }
        }
        Command::Eval { functor, at, at_module } => {
            let g = load_functor(functor)?;
            let x = match (at, at_module) {
                (Some(dsl), _) => parse_module_dsl(dsl).map_err(|e| CliError::Malformed(format!("--at: {e}")))?,
                (None, Some(path)) => load_module(path)?,
                (None, None) => unreachable!("clap requires one of --at and --at-module"),
            };
            let summary = ModuleSummary::of(&g.evaluate(&x));
            if json {
                to_json(&summary)
            } else {
                summary.structure
            }
        }
        Command::Vlocus { functor } => {
            let v = vanishing_locus(&load_functor(functor)?);
            if json {
                to_json(&v)
            } else {
                v.to_string()
            }
        }
        Command::Member { functor, set } => {
            let g = load_functor(functor)?;
            let x = load_set(set)?;
            let member = serre_member(&g, &x).map_err(|e| match e {
                ZieglerError::NotClosed => CliError::Precondition(format!("{}: {e}", set.display())),
                other => malformed(set, other),
            })?;
            if json {
                to_json(&serde_json::json!({ "member": member }))
            } else {
                member.to_string()
            }
        }
        Command::IsClosed { set } => {
            let closed = load_set(set)?.is_closed();
            if json {
                to_json(&serde_json::json!({ "closed": closed }))
            } else {
                closed.to_string()
            }
        }
    };
    Ok(text)
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    if write!(out, "{rendered}").is_err() {
                        return 1;
                    }
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    let result = execute(&cli).and_then(|text| writeln!(out, "{text}").map_err(CliError::from));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
