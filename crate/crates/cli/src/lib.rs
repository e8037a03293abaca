//! Command implementations behind the `rharmonic` binary.
//!
//! Every command renders into a `String`; `main` only decides where it goes
//! and which exit code to use.

pub mod render;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rharmonic::critical_points::{solve_clifford, solve_hypersphere, SolutionReport};
use rharmonic::fd_oracle::{verify_clifford_criticality, verify_hypersphere_critical, FD_TOL};
use rharmonic::reduced_energy::{eps_r_deriv, DerivOrder};
use rharmonic::{discriminant_condition, OracleReport, Suite};
use serde::Deserialize;
use serde_json::{json, Value};

use render::{fmt_sig, json_num, round_sig, MACHINE_DIGITS, TABLE_DIGITS};

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Largest order, dimension or multiplicity the command line accepts.
pub const MAX_PARAM: u32 = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "rharmonic",
    version,
    about = "r-harmonic hyperspheres and Clifford tori"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Radius of the proper r-harmonic hypersphere in S^n.
    Hypersphere {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=MAX_PARAM as i64))]
        r: u32,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(2..=MAX_PARAM as i64))]
        n: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Admissible radii of r-harmonic Clifford tori S^p(R1) x S^q(R2).
    Clifford {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_PARAM as i64))]
        p: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=MAX_PARAM as i64))]
        q: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=MAX_PARAM as i64))]
        r: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Root counts over a grid of (p, q, r), rows ordered by p, then q, then r.
    Sweep {
        /// Inclusive range such as `1..8`, `1..=8` or `3`.
        #[arg(long)]
        p: IntRange,
        #[arg(long)]
        q: IntRange,
        #[arg(long)]
        r: IntRange,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite, or re-check the solutions in a JSON file.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Tolerance for the finite-difference checks.
        #[arg(long, default_value_t = FD_TOL)]
        tol: f64,
        /// JSON written by `hypersphere`, `clifford` or `sweep`.
        #[arg(long, conflicts_with = "suite")]
        input: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Energy,
    Ladder,
    Tau,
    Clifford,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Energy => Suite::Energy,
            SuiteArg::Ladder => Suite::Ladder,
            SuiteArg::Tau => Suite::Tau,
            SuiteArg::Clifford => Suite::Clifford,
            SuiteArg::All => Suite::All,
        }
    }
}

/// Nonempty inclusive integer range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |x: &str| {
            x.trim()
                .parse::<u32>()
                .map_err(|e| format!("bad bound {x:?}: {e}"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((lo, hi)) => (parse(lo)?, parse(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { lo, hi })
    }
}

impl IntRange {
    fn check(self, name: &str, min: u32) -> Result<Self, CliError> {
        if self.lo < min || self.hi > MAX_PARAM {
            return Err(CliError::Usage(format!(
                "--{name} must lie within {min}..={MAX_PARAM}, got {}..={}",
                self.lo, self.hi
            )));
        }
        Ok(self)
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<rharmonic::Error> for CliError {
    fn from(e: rharmonic::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Rendered output plus the names of failed checks (empty unless `verify`).
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub failed: Vec<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            failed: Vec::new(),
        }
    }
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Hypersphere { r, n, output } => {
            hypersphere(*r, *n, output.format).map(Outcome::ok)
        }
        Command::Clifford { p, q, r, output } => {
            clifford(*p, *q, *r, output.format).map(Outcome::ok)
        }
        Command::Sweep { p, q, r, output } => sweep(
            p.check("p", 1)?,
            q.check("q", 1)?,
            r.check("r", 2)?,
            output.format,
        )
        .map(Outcome::ok),
        Command::Verify {
            suite,
            tol,
            input,
            output,
        } => {
            if !(tol.is_finite() && *tol > 0.0) {
                return Err(CliError::Usage(format!(
                    "--tol must be positive, got {tol}"
                )));
            }
            let reports = match input {
                Some(path) => verify_input(path, *tol)?,
                None => Suite::from(*suite).run(*tol)?,
            };
            Ok(Outcome {
                failed: reports
                    .iter()
                    .filter(|r| !r.passed)
                    .map(|r| r.name.clone())
                    .collect(),
                text: render_reports(&reports, output.format),
            })
        }
    }
}

pub fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Hypersphere { output, .. }
        | Command::Clifford { output, .. }
        | Command::Sweep { output, .. }
        | Command::Verify { output, .. } => output,
    }
}

/// Residuals reported for a hypersphere critical angle. Computed from the
/// printed value of `alpha`, so re-verifying the output reproduces them.
pub fn hypersphere_residuals(alpha: f64, r: u32) -> Result<BTreeMap<String, f64>, CliError> {
    let alpha = round_sig(alpha);
    let mut out = verify_hypersphere_critical(alpha, r, FD_TOL)?.details;
    out.insert(
        "eps_prime".into(),
        eps_r_deriv(alpha, r, DerivOrder::First)?,
    );
    Ok(out)
}

/// Residuals reported for a Clifford root, from the printed value of `t`.
pub fn clifford_residuals(
    t: f64,
    p: u32,
    q: u32,
    r: u32,
) -> Result<BTreeMap<String, f64>, CliError> {
    Ok(verify_clifford_criticality(round_sig(t), p, q, r, FD_TOL)?.details)
}

fn stable_label(stable: Option<bool>) -> &'static str {
    match stable {
        Some(true) => "stable",
        Some(false) => "unstable",
        None => "-",
    }
}

fn stable_json(stable: Option<bool>) -> Value {
    stable.map_or(Value::Null, Value::Bool)
}

fn residuals_json(residuals: &BTreeMap<String, f64>) -> Value {
    Value::Object(
        residuals
            .iter()
            .map(|(k, v)| (k.clone(), json_num(*v)))
            .collect(),
    )
}

fn hypersphere(r: u32, n: u32, format: Format) -> Result<String, CliError> {
    let report = solve_hypersphere(r)?;
    let residuals = hypersphere_residuals(report.alpha_star, r)?;
    Ok(match format {
        Format::Json => render::json(&json!({
            "command": "hypersphere",
            "r": r,
            "n": n,
            "radius": json_num(report.parameter),
            "alpha_star": json_num(report.alpha_star),
            "kind": report.kind.as_str(),
            "stable": stable_json(report.stable),
            "residuals": residuals_json(&residuals),
        })),
        Format::Csv | Format::Table => {
            let digits = if format == Format::Csv {
                MACHINE_DIGITS
            } else {
                TABLE_DIGITS
            };
            let mut headers: Vec<String> = ["r", "n", "radius", "alpha_star", "kind", "stable"]
                .map(String::from)
                .to_vec();
            let mut row = vec![
                r.to_string(),
                n.to_string(),
                fmt_sig(report.parameter, digits),
                fmt_sig(report.alpha_star, digits),
                report.kind.to_string(),
                stable_label(report.stable).to_string(),
            ];
            headers.extend(residuals.keys().cloned());
            row.extend(residuals.values().map(|v| fmt_sig(*v, digits)));
            if format == Format::Csv {
                render::csv(&headers, &[row])
            } else {
                render::table(&headers, &[row])
            }
        }
    })
}

fn discriminant(p: u32, q: u32, r: u32) -> Result<Option<f64>, CliError> {
    Ok(if r >= 3 {
        Some(discriminant_condition(p, q, r)?)
    } else {
        None
    })
}

fn clifford(p: u32, q: u32, r: u32, format: Format) -> Result<String, CliError> {
    let reports = solve_clifford(p, q, r)?;
    let disc = discriminant(p, q, r)?;
    let residuals = reports
        .iter()
        .map(|rep| clifford_residuals(rep.parameter, p, q, r))
        .collect::<Result<Vec<_>, _>>()?;
    if format == Format::Json {
        let solutions: Vec<Value> = reports
            .iter()
            .zip(&residuals)
            .map(|(rep, res)| {
                let t = round_sig(rep.parameter);
                json!({
                    "t": json_num(t),
                    "r1": json_num(t.sqrt()),
                    "r2": json_num((1.0 - t).sqrt()),
                    "alpha_star": json_num(rep.alpha_star),
                    "kind": rep.kind.as_str(),
                    "stable": stable_json(rep.stable),
                    "residuals": residuals_json(res),
                })
            })
            .collect();
        return Ok(render::json(&json!({
            "command": "clifford",
            "p": p,
            "q": q,
            "r": r,
            "discriminant": disc.map_or(Value::Null, json_num),
            "solutions": solutions,
        })));
    }
    let digits = if format == Format::Csv {
        MACHINE_DIGITS
    } else {
        TABLE_DIGITS
    };
    let mut headers: Vec<String> = [
        "p",
        "q",
        "r",
        "t",
        "r1",
        "r2",
        "alpha_star",
        "kind",
        "stable",
        "discriminant",
    ]
    .map(String::from)
    .to_vec();
    if let Some(first) = residuals.first() {
        headers.extend(first.keys().cloned());
    }
    let rows: Vec<Vec<String>> = reports
        .iter()
        .zip(&residuals)
        .map(|(rep, res)| clifford_row(rep, res, (p, q, r), disc, digits))
        .collect();
    Ok(if format == Format::Csv {
        render::csv(&headers, &rows)
    } else {
        render::table(&headers, &rows)
    })
}

fn clifford_row(
    rep: &SolutionReport,
    residuals: &BTreeMap<String, f64>,
    (p, q, r): (u32, u32, u32),
    disc: Option<f64>,
    digits: usize,
) -> Vec<String> {
    let t = rep.parameter;
    let mut row = vec![
        p.to_string(),
        q.to_string(),
        r.to_string(),
        fmt_sig(t, digits),
        fmt_sig(t.sqrt(), digits),
        fmt_sig((1.0 - t).sqrt(), digits),
        fmt_sig(rep.alpha_star, digits),
        rep.kind.to_string(),
        stable_label(rep.stable).to_string(),
        disc.map_or(String::new(), |d| fmt_sig(d, digits)),
    ];
    row.extend(residuals.values().map(|v| fmt_sig(*v, digits)));
    row
}

struct SweepRow {
    p: u32,
    q: u32,
    r: u32,
    disc: Option<f64>,
    roots: Vec<f64>,
}

fn sweep(p: IntRange, q: IntRange, r: IntRange, format: Format) -> Result<String, CliError> {
    let mut rows = Vec::new();
    for p in p.lo..=p.hi {
        for q in q.lo..=q.hi {
            for r in r.lo..=r.hi {
                let roots = solve_clifford(p, q, r)?
                    .into_iter()
                    .map(|s| s.parameter)
                    .collect();
                rows.push(SweepRow {
                    p,
                    q,
                    r,
                    disc: discriminant(p, q, r)?,
                    roots,
                });
            }
        }
    }
    if format == Format::Json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|row| {
                json!({
                    "p": row.p,
                    "q": row.q,
                    "r": row.r,
                    "count": row.roots.len(),
                    "discriminant": row.disc.map_or(Value::Null, json_num),
                    "t": row.roots.iter().map(|t| json_num(*t)).collect::<Vec<_>>(),
                })
            })
            .collect();
        return Ok(render::json(&json!({ "command": "sweep", "rows": rows })));
    }
    let digits = if format == Format::Csv {
        MACHINE_DIGITS
    } else {
        TABLE_DIGITS
    };
    let headers: Vec<String> = ["p", "q", "r", "count", "disc", "t1", "t2", "t3"]
        .map(String::from)
        .to_vec();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| {
            let mut cells = vec![
                row.p.to_string(),
                row.q.to_string(),
                row.r.to_string(),
                row.roots.len().to_string(),
                row.disc.map_or(String::new(), |d| fmt_sig(d, digits)),
            ];
            cells.extend((0..3).map(|i| {
                row.roots
                    .get(i)
                    .map_or(String::new(), |t| fmt_sig(*t, digits))
            }));
            cells
        })
        .collect();
    Ok(if format == Format::Csv {
        render::csv(&headers, &cells)
    } else {
        render::table(&headers, &cells)
    })
}

#[derive(Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
enum SavedOutput {
    Hypersphere {
        r: u32,
        alpha_star: f64,
    },
    Clifford {
        p: u32,
        q: u32,
        r: u32,
        solutions: Vec<SavedRoot>,
    },
    Sweep {
        rows: Vec<SavedRow>,
    },
}

#[derive(Deserialize)]
struct SavedRoot {
    t: f64,
}

#[derive(Deserialize)]
struct SavedRow {
    p: u32,
    q: u32,
    r: u32,
    t: Vec<f64>,
}

fn verify_input(path: &PathBuf, tol: f64) -> Result<Vec<OracleReport>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let saved: SavedOutput = serde_json::from_str(&text).map_err(|e| {
        CliError::Usage(format!(
            "{} is not rharmonic JSON output: {e}",
            path.display()
        ))
    })?;
    let clifford = |t: f64, p: u32, q: u32, r: u32| -> Result<OracleReport, CliError> {
        let mut report = verify_clifford_criticality(t, p, q, r, tol)?;
        report.details = clifford_residuals(t, p, q, r)?;
        Ok(report)
    };
    match saved {
        SavedOutput::Hypersphere { r, alpha_star } => {
            let mut report = verify_hypersphere_critical(alpha_star, r, tol)?;
            report.details = hypersphere_residuals(alpha_star, r)?;
            Ok(vec![report])
        }
        SavedOutput::Clifford { p, q, r, solutions } => {
            solutions.iter().map(|s| clifford(s.t, p, q, r)).collect()
        }
        SavedOutput::Sweep { rows } => rows
            .iter()
            .flat_map(|row| row.t.iter().map(move |&t| (t, row)))
            .map(|(t, row)| clifford(t, row.p, row.q, row.r))
            .collect(),
    }
}

fn render_reports(reports: &[OracleReport], format: Format) -> String {
    match format {
        Format::Table => {
            let passed = reports.iter().filter(|r| r.passed).count();
            let mut out: String = reports.iter().map(|r| format!("{r}\n")).collect();
            out.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
            out
        }
        Format::Csv => {
            let headers: Vec<String> = ["name", "passed", "max_residual", "tolerance", "samples"]
                .map(String::from)
                .to_vec();
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        r.passed.to_string(),
                        fmt_sig(r.max_residual, MACHINE_DIGITS),
                        fmt_sig(r.tolerance, MACHINE_DIGITS),
                        r.samples.to_string(),
                    ]
                })
                .collect();
            render::csv(&headers, &rows)
        }
        Format::Json => {
            let items: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "name": r.name,
                        "passed": r.passed,
                        "max_residual": json_num(r.max_residual),
                        "tolerance": json_num(r.tolerance),
                        "samples": r.samples,
                        "residuals": residuals_json(&r.details),
                    })
                })
                .collect();
            render::json(&Value::Array(items))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("3..12".parse::<IntRange>(), Ok(IntRange { lo: 3, hi: 12 }));
        assert_eq!("3..=12".parse::<IntRange>(), Ok(IntRange { lo: 3, hi: 12 }));
        assert_eq!("5".parse::<IntRange>(), Ok(IntRange { lo: 5, hi: 5 }));
        assert!("12..3".parse::<IntRange>().is_err());
        assert!("a..3".parse::<IntRange>().is_err());
        assert!(IntRange { lo: 1, hi: 3 }.check("r", 2).is_err());
    }

    #[test]
    fn sweep_row_transitions_where_condition_turns_positive() {
        let csv = sweep(
            IntRange { lo: 1, hi: 1 },
            IntRange { lo: 2, hi: 2 },
            IntRange { lo: 3, hi: 12 },
            Format::Csv,
        )
        .unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("p,q,r,count,disc,t1,t2,t3"));
        for (line, r) in lines.zip(3u32..) {
            let fields: Vec<&str> = line.split(',').collect();
            let count: usize = fields[3].parse().unwrap();
            let disc: f64 = fields[4].parse().unwrap();
            let expected_disc = discriminant_condition(1, 2, r).unwrap();
            assert_eq!(disc, expected_disc);
            assert_eq!(count, if disc > 0.0 { 3 } else { 1 }, "r={r}");
        }
    }

    #[test]
    fn printed_residuals_use_printed_parameter() {
        let res = clifford_residuals(0.61, 1, 2, 10).unwrap();
        assert_eq!(res, clifford_residuals(round_sig(0.61), 1, 2, 10).unwrap());
        assert!(res.contains_key("P") && res.contains_key("residual_334"));
    }
}
