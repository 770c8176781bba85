//! Command-line front end for the `gabor-theta` binary.
//!
//! Exit codes: 0 success, 1 domain or computation error (one line on
//! stderr), 2 usage error, 3 when `verify` ran but a suite failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::frame::{frame_bounds, FrameBounds, LatticeParams};
use crate::oracle::{grid_extrema_f, frame_bounds_via_f, GridSpec, Scale};
use crate::sweep::{emit_csv, emit_plot, sweep_beta, Column};
use crate::theta::{eval_theta, DerivativeOrder, ThetaFamily, DEFAULT_TOL};
use crate::verify::{all_passed, run_all, VerifyConfig, SUITE_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

/// Parsed command line.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "gabor-theta", version, about = "Certified Jacobi theta values and Gaussian Gabor frame bounds")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Evaluate a theta function or one of its s-derivatives
    Eval(EvalArgs),
    /// Frame bounds of the Gaussian on the lattice with redundancy n
    Bounds(BoundsArgs),
    /// Tabulate A, B and B/A over a range of beta
    Sweep(SweepArgs),
    /// Run the numerical check suites
    Verify(VerifyArgs),
    /// Cross-check the closed-form bounds against a grid search of F
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Theta3,
    Theta4,
    #[value(name = "theta_odd")]
    ThetaOdd,
    #[value(name = "theta_general")]
    ThetaGeneral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

/// What a subcommand prints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ColumnArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "ratio")]
    Ratio,
}

impl From<ColumnArg> for Column {
    fn from(c: ColumnArg) -> Self {
        match c {
            ColumnArg::A => Column::A,
            ColumnArg::B => Column::B,
            ColumnArg::Ratio => Column::Ratio,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub s: f64,
    /// Shift of Θ(z, is); only with theta_general
    #[arg(long, required_if_eq("family", "theta_general"))]
    pub z: Option<f64>,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=2))]
    pub order: u8,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args)]
#[command(allow_negative_numbers = true)]
pub struct BoundsArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long)]
    pub beta_min: f64,
    #[arg(long)]
    pub beta_max: f64,
    #[arg(long)]
    pub steps: usize,
    /// Log-spaced instead of evenly spaced beta values
    #[arg(long)]
    pub log: bool,
    /// CSV destination
    #[arg(long)]
    pub out: PathBuf,
    /// Optional SVG plot destination
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Column drawn in the SVG plot
    #[arg(long, value_enum, default_value_t = ColumnArg::Ratio)]
    pub column: ColumnArg,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Suite name, or `all`
    #[arg(long, default_value = "all", value_parser = suite_names())]
    pub suite: String,
    /// Residual threshold for the identity suites
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Args)]
#[command(allow_negative_numbers = true)]
pub struct OracleArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long)]
    pub beta: f64,
    /// Grid points per axis on [0, 1)
    #[arg(long, default_value_t = 128)]
    pub grid: u32,
    /// Truncation index; defaults to the tail-bound choice
    #[arg(long)]
    pub kmax: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
}

fn suite_names() -> clap::builder::PossibleValuesParser {
    let mut names: Vec<&'static str> = vec!["all"];
    names.extend_from_slice(SUITE_NAMES);
    clap::builder::PossibleValuesParser::new(names)
}

impl CliConfig {
    pub fn output_format(&self) -> OutputFormat {
        let f = match &self.command {
            Command::Eval(a) => a.format,
            Command::Bounds(a) => a.format,
            Command::Verify(a) => a.format,
            Command::Oracle(a) => a.format,
            Command::Sweep(_) => return OutputFormat::Csv,
        };
        match f {
            Format::Human => OutputFormat::Human,
            Format::Json => OutputFormat::Json,
        }
    }
}

/// Parses `argv` (program name first) without side effects.
pub fn parse_args<I, T>(argv: I) -> std::result::Result<CliConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = CliConfig::try_parse_from(argv)?;
    if let Command::Eval(a) = &config.command {
        if a.z.is_some() && a.family != FamilyArg::ThetaGeneral {
            return Err(clap::Error::raw(
                clap::error::ErrorKind::ArgumentConflict,
                "--z is only accepted with --family theta_general\n",
            ));
        }
    }
    Ok(config)
}

/// Runs the binary and returns its exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&config) {
        Ok(out) => {
            print!("{}", out.text);
            out.code
        }
        Err(e) => {
            eprintln!("gabor-theta: {e}");
            EXIT_ERROR
        }
    }
}

/// Output of a successful run.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

/// Executes a parsed command; stdout text is returned rather than printed.
pub fn execute(config: &CliConfig) -> Result<Outcome> {
    match &config.command {
        Command::Eval(a) => eval(a),
        Command::Bounds(a) => bounds(a),
        Command::Sweep(a) => sweep(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(a) => oracle(a),
    }
}

/// `x` with 12 significant digits.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

fn with_bound(x: f64, err: f64) -> String {
    format!("{} [± {err:.1e}]", sig12(x))
}

fn json_text(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn eval(a: &EvalArgs) -> Result<Outcome> {
    let family = match a.family {
        FamilyArg::Theta3 => ThetaFamily::Theta3,
        FamilyArg::Theta4 => ThetaFamily::Theta4,
        FamilyArg::ThetaOdd => ThetaFamily::ThetaOdd,
        FamilyArg::ThetaGeneral => ThetaFamily::general(a.z.unwrap_or(0.0))?,
    };
    let order = DerivativeOrder::new(a.order)?;
    let v = eval_theta(family, a.s, order, a.tol)?;
    let text = match a.format {
        Format::Human => {
            let primes = "'".repeat(a.order as usize);
            let arg = match family {
                ThetaFamily::General { z } => format!("z = {}, s = {}", z, a.s),
                _ => format!("s = {}", a.s),
            };
            format!(
                "{}{primes}({arg}) = {}  ({} terms, {:?})\n",
                family.name(),
                with_bound(v.value, v.error_bound),
                v.terms_used,
                v.method
            )
        }
        Format::Json => json_text(json!({
            "family": family.name(),
            "z": match family { ThetaFamily::General { z } => Some(z), _ => None },
            "s": a.s,
            "order": a.order,
            "value": v.value,
            "error_bound": v.error_bound,
            "terms_used": v.terms_used,
            "method": v.method,
        })),
    };
    Ok(Outcome::ok(text))
}

fn bounds_json(p: &LatticeParams, fb: &FrameBounds) -> serde_json::Value {
    json!({
        "n": p.n,
        "alpha": p.alpha,
        "beta": p.beta,
        "lower": fb.lower,
        "upper": fb.upper,
        "ratio": fb.ratio,
        "error_bound": fb.error_bound,
        "valid": fb.valid,
    })
}

fn bounds(a: &BoundsArgs) -> Result<Outcome> {
    let p = LatticeParams::new(a.n, a.beta)?;
    let fb = frame_bounds(&p, a.tol)?;
    let text = match a.format {
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(s, "n = {}, alpha = {}, beta = {}", p.n, sig12(p.alpha), sig12(p.beta));
            let _ = writeln!(s, "A   = {}", with_bound(fb.lower, fb.error_bound));
            let _ = writeln!(s, "B   = {}", with_bound(fb.upper, fb.error_bound));
            let _ = writeln!(s, "B/A = {}", sig12(fb.ratio));
            if !fb.valid {
                let _ = writeln!(s, "warning: A is indistinguishable from 0; not a frame");
            }
            s
        }
        Format::Json => json_text(bounds_json(&p, &fb)),
    };
    Ok(Outcome::ok(text))
}

fn sweep(a: &SweepArgs) -> Result<Outcome> {
    let scale = if a.log { Scale::Log } else { Scale::Linear };
    let grid = GridSpec::new(a.beta_min, a.beta_max, a.steps, scale)?;
    let rows = sweep_beta(a.n, &grid, a.tol)?;
    emit_csv(&rows, &a.out)?;
    let mut text = format!("wrote {} rows to {}\n", rows.len(), a.out.display());
    if let Some(svg) = &a.svg {
        emit_plot(&rows, svg, a.column.into())?;
        let _ = writeln!(text, "wrote plot to {}", svg.display());
    }
    Ok(Outcome::ok(text))
}

fn verify(a: &VerifyArgs) -> Result<Outcome> {
    if let Some(t) = a.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::Domain(format!("tol = {t} must be positive")));
        }
    }
    let config = VerifyConfig {
        suites: (a.suite != "all").then(|| vec![a.suite.clone()]),
        residual_tol: a.tol,
        ..VerifyConfig::default()
    };
    let results = run_all(&config)?;
    let passed = all_passed(&results);
    let text = match a.format {
        Format::Human => {
            let mut s = String::new();
            for r in &results {
                let status = if r.informational {
                    "INFO"
                } else if r.passed {
                    "PASS"
                } else {
                    "FAIL"
                };
                let _ = writeln!(
                    s,
                    "{status} {:<18} worst {:+.3e} at {} ({} points){}",
                    r.name,
                    r.worst_residual,
                    location_text(&r.worst_location),
                    r.points_tested,
                    if r.low_margin { " low-margin" } else { "" }
                );
            }
            let _ = writeln!(s, "{}", if passed { "all suites passed" } else { "some suites failed" });
            s
        }
        Format::Json => json_text(json!({ "passed": passed, "suites": results })),
    };
    Ok(Outcome {
        text,
        code: if passed { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

fn location_text(l: &crate::verify::Location) -> String {
    match l {
        crate::verify::Location::Point(s) => format!("s = {}", sig12(*s)),
        crate::verify::Location::Pair(a, b) => format!("({}, {})", sig12(*a), sig12(*b)),
    }
}

fn oracle(a: &OracleArgs) -> Result<Outcome> {
    let p = LatticeParams::new(a.n, a.beta)?;
    let report = grid_extrema_f(&p, a.grid, a.kmax)?;
    let via_f = frame_bounds_via_f(&p, a.grid, a.kmax)?;
    let closed = frame_bounds(&p, DEFAULT_TOL)?;
    let deviation = (via_f.lower - closed.lower).abs().max((via_f.upper - closed.upper).abs());
    let text = match a.format {
        Format::Human => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "F on a {0}x{0} grid, K = {1}",
                report.grid_steps, report.truncation_k
            );
            let _ = writeln!(
                s,
                "max F = {} at ({}, {})",
                sig12(report.max_value),
                sig12(report.argmax.0),
                sig12(report.argmax.1)
            );
            let _ = writeln!(
                s,
                "min F = {} at ({}, {})",
                sig12(report.min_value),
                sig12(report.argmin.0),
                sig12(report.argmin.1)
            );
            let _ = writeln!(s, "closed form A = {}, B = {}", sig12(closed.lower), sig12(closed.upper));
            let _ = writeln!(s, "deviation {deviation:.3e} (oracle bound {:.3e})", via_f.error_bound);
            s
        }
        Format::Json => json_text(json!({
            "n": p.n,
            "beta": p.beta,
            "grid_steps": report.grid_steps,
            "truncation_k": report.truncation_k,
            "max_value": report.max_value,
            "argmax": [report.argmax.0, report.argmax.1],
            "min_value": report.min_value,
            "argmin": [report.argmin.0, report.argmin.1],
            "lower": via_f.lower,
            "upper": via_f.upper,
            "error_bound": via_f.error_bound,
            "closed_form": bounds_json(&p, &closed),
            "deviation": deviation,
        })),
    };
    Ok(Outcome::ok(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<CliConfig, clap::Error> {
        parse_args(std::iter::once("gabor-theta").chain(args.iter().copied()))
    }

    #[test]
    fn bounds_defaults() {
        let c = parse(&["bounds", "--n", "2", "--beta", "0.7"]).unwrap();
        let Command::Bounds(b) = &c.command else { panic!() };
        assert_eq!(b.tol, 1e-12);
        assert_eq!(b.format, Format::Human);
        assert_eq!(c.output_format(), OutputFormat::Human);
    }

    #[test]
    fn sweep_config() {
        let c = parse(&[
            "sweep", "--n", "2", "--beta-min", "0.4", "--beta-max", "1.4", "--steps", "101", "--out", "s.csv",
        ])
        .unwrap();
        let Command::Sweep(s) = &c.command else { panic!() };
        assert_eq!((s.n, s.steps, s.log), (2, 101, false));
        assert_eq!(s.out, PathBuf::from("s.csv"));
        assert_eq!(c.output_format(), OutputFormat::Csv);
    }

    #[test]
    fn usage_errors() {
        let e = parse(&["bounds", "--n", "0", "--beta", "1"]).unwrap_err();
        assert!(e.to_string().contains("--n"));
        assert!(parse(&["eval", "--family", "theta_general", "--s", "1"]).is_err());
        assert!(parse(&["eval", "--family", "theta3", "--s", "1", "--z", "0.5"]).is_err());
        assert!(parse(&["eval", "--family", "theta3", "--s", "1", "--order", "3"]).is_err());
        assert!(parse(&["verify", "--suite", "nope"]).is_err());
    }

    #[test]
    fn negative_s_parses() {
        let c = parse(&["eval", "--family", "theta3", "--s", "-1"]).unwrap();
        assert!(matches!(execute(&c), Err(Error::Domain(_))));
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig12(1.086_434_811_213_308), "1.08643481121");
        assert_eq!(sig12(0.0864278365), "0.0864278365000");
        assert_eq!(sig12(-2.5e-7), "-2.50000000000e-7");
    }
}
