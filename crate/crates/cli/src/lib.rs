//! Command-line front end. `run` renders a command to a string plus an exit
//! code so the same path serves the binary and the golden tests.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thue_cf::cfengine::{cf_of_series, ContinuedFraction};
use thue_cf::conjecture::{Conjecture, PPolynomialTable};
use thue_cf::verify::{
    irrationality_estimate, required_precision, verify_expansion_with, VerificationReport, VerifyOptions,
    MEASURE_FORMULA,
};
use thue_cf::words::word_prefix;
use thue_cf::{FamilyIndex, LaurentSeries, Polynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "thue-cf", version, about = "Continued fractions of Thue-Morse-type power series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Alphabet {
    /// Letters a and b.
    Ab,
    /// Comma-separated +1 and -1.
    Signed,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Word family index i >= 1.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub i: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Prefix of the infinite word W(i).
    Word {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        length: u64,
        #[arg(long, value_enum, default_value_t = Alphabet::Ab)]
        alphabet: Alphabet,
    },
    /// θ_i truncated after T^-length.
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        length: u64,
    },
    /// Certified continued fraction of θ_i computed from the word.
    Cf {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        /// Series precision; defaults to what `depth` predicted quotients need.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        precision: Option<u64>,
    },
    /// Predicted continued fraction of θ_i from the recursive laws.
    Predict {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
    },
    /// Compare computed and predicted quotients; exit 1 on any mismatch.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        precision: Option<u64>,
        /// Include wall-clock time (makes output non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Irrationality measure estimate from the predicted degrees.
    Measure {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        depth: u64,
    },
    /// The polynomials P_{i,m}, m = 1..depth (i >= 2).
    Ppoly {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        /// Print P(1) and P'(1) instead of the polynomials (text format).
        #[arg(long)]
        values: bool,
    },
    /// Leading coefficients λ_{i,n}, n = 1..depth.
    Lambda {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Word { common, .. }
            | Command::Series { common, .. }
            | Command::Cf { common, .. }
            | Command::Predict { common, .. }
            | Command::Verify { common, .. }
            | Command::Measure { common, .. }
            | Command::Ppoly { common, .. }
            | Command::Lambda { common, .. } => common,
        }
    }
}

/// Rendered result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    /// Diagnostics, one per line.
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, warnings: Vec::new(), exit_code: EXIT_OK }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] thue_cf::Error),
    #[error("{0}")]
    Usage(String),
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn quotient_line(n: usize, a: &Polynomial) -> String {
    match a.split_leading() {
        Some((lambda, b)) => format!("{n}: lambda = {lambda}, b = {b}\n"),
        None => format!("{n}: lambda = 0, b = 0\n"),
    }
}

fn render_cf(cf: &ContinuedFraction, format: Format) -> String {
    match format {
        Format::Json => json_text(&json!(cf.to_text_list())),
        Format::Text => cf
            .quotients
            .iter()
            .enumerate()
            .map(|(k, a)| quotient_line(k + 1, a))
            .collect(),
    }
}

pub fn run(cmd: &Command) -> Result<Outcome, CliError> {
    let common = cmd.common();
    let i = FamilyIndex::new(common.i)?;
    let format = common.format;
    let outcome = match cmd {
        Command::Word { length, alphabet, .. } => {
            let w = word_prefix(i, *length as usize);
            let rendered = match alphabet {
                Alphabet::Ab => w.to_ab_string(),
                Alphabet::Signed => w.to_signed_string(),
            };
            Outcome::ok(match format {
                Format::Text => format!("{rendered}\n"),
                Format::Json => json_text(&json!({
                    "i": i.get(),
                    "length": length,
                    "alphabet": match alphabet { Alphabet::Ab => "ab", Alphabet::Signed => "signed" },
                    "word": rendered,
                })),
            })
        }
        Command::Series { length, .. } => {
            let n = *length as usize;
            let s = LaurentSeries::from_word(&word_prefix(i, n).values(), n)?;
            Outcome::ok(match format {
                Format::Text => format!("{s}\n"),
                Format::Json => json_text(&json!({
                    "i": i.get(),
                    "precision": s.precision(),
                    "top": s.top(),
                    "coefficients": s.coeffs(),
                })),
            })
        }
        Command::Cf { depth, precision, .. } => {
            let required = required_precision(i, *depth);
            let mut warnings = precision_warning(*precision, required, *depth);
            let n = precision.map_or(required, |p| p as usize);
            let s = LaurentSeries::from_word(&word_prefix(i, n).values(), n)?;
            let mut exp = cf_of_series(&s)?;
            if exp.certified_count < *depth as usize {
                warnings.push(format!(
                    "warning: only {} quotients certified at precision {n}",
                    exp.certified_count
                ));
            }
            exp.cf.quotients.truncate(*depth as usize);
            Outcome { stdout: render_cf(&exp.cf, format), warnings, exit_code: EXIT_OK }
        }
        Command::Predict { depth, .. } => {
            let mut c = Conjecture::new(i);
            let quotients = (1..=*depth).map(|n| c.quotient(n)).collect::<Result<Vec<_>, _>>()?;
            let cf = ContinuedFraction { a0: Polynomial::zero(), quotients };
            Outcome::ok(render_cf(&cf, format))
        }
        Command::Verify { depth, precision, timing, .. } => {
            let required = required_precision(i, *depth);
            let mut warnings = precision_warning(*precision, required, *depth);
            let opts = VerifyOptions {
                precision: precision.map(|p| p as usize),
                ..Default::default()
            };
            let report = verify_expansion_with(i, *depth, opts)?;
            if !report.fully_certified() {
                warnings.push(format!(
                    "warning: only {} of {} quotients certified at precision {}",
                    report.depth_certified, report.depth_requested, report.precision_used
                ));
            }
            let exit_code = if report.all_match() { EXIT_OK } else { EXIT_MISMATCH };
            let stdout = match format {
                Format::Text => render_report_text(&report, *timing),
                Format::Json => {
                    let mut v = serde_json::to_value(&report).expect("report serializes");
                    if *timing {
                        v["metadata"] = json!({ "elapsed_seconds": report.elapsed.as_secs_f64() });
                    }
                    json_text(&v)
                }
            };
            Outcome { stdout, warnings, exit_code }
        }
        Command::Measure { depth, .. } => {
            let est = irrationality_estimate(i, *depth)?;
            Outcome::ok(match format {
                Format::Text => format!("{} (~{:.6})\n", est.value, est.value.to_f64()),
                Format::Json => json_text(&json!({
                    "i": est.i,
                    "depth": est.depth,
                    "value": est.value,
                    "formula": MEASURE_FORMULA,
                })),
            })
        }
        Command::Ppoly { depth, values, .. } => {
            if i.get() < 2 {
                return Err(CliError::Usage("ppoly needs --i 2 or larger".into()));
            }
            let mut table = PPolynomialTable::new(i)?;
            let mut rows = Vec::with_capacity(*depth as usize);
            for m in 1..=*depth {
                let p = table.get(m)?.clone();
                let v = table.value_at_one(m)?;
                let d = table.derivative_at_one(m)?;
                rows.push((m, p, v, d));
            }
            Outcome::ok(match (format, values) {
                (Format::Json, _) => json_text(&Value::Array(
                    rows.iter()
                        .map(|(m, p, v, d)| {
                            json!({
                                "m": m,
                                "degree": p.degree().finite(),
                                "poly": p,
                                "value_at_one": v,
                                "derivative_at_one": d,
                            })
                        })
                        .collect(),
                )),
                (Format::Text, true) => rows
                    .iter()
                    .map(|(m, _, v, d)| format!("{m}: P(1) = {v}, P'(1) = {d}\n"))
                    .collect(),
                (Format::Text, false) => rows.iter().map(|(m, p, ..)| format!("{m}: P = {p}\n")).collect(),
            })
        }
        Command::Lambda { depth, .. } => {
            let mut c = Conjecture::new(i);
            let lambdas = (1..=*depth).map(|n| c.lambda(n)).collect::<Result<Vec<_>, _>>()?;
            Outcome::ok(match format {
                Format::Json => json_text(&json!(lambdas)),
                Format::Text => lambdas
                    .iter()
                    .enumerate()
                    .map(|(k, l)| format!("{}: {l}\n", k + 1))
                    .collect(),
            })
        }
    };
    Ok(outcome)
}

fn precision_warning(precision: Option<u64>, required: usize, depth: u64) -> Vec<String> {
    match precision {
        Some(p) if (p as usize) < required => vec![format!(
            "warning: --precision {p} is below the {required} needed to certify depth {depth}"
        )],
        _ => Vec::new(),
    }
}

fn render_report_text(r: &VerificationReport, timing: bool) -> String {
    let mut out = format!(
        "i = {}, depth = {}, certified = {}, precision = {}\n",
        r.i, r.depth_requested, r.depth_certified, r.precision_used
    );
    for m in &r.matches {
        if m.equal {
            out.push_str(&format!("{}: ok, a = {}\n", m.index, m.computed));
        } else {
            out.push_str(&format!(
                "{}: MISMATCH, computed = {}, predicted = {}\n",
                m.index, m.computed, m.predicted
            ));
        }
    }
    out.push_str(&format!("matches: {}/{}\n", r.match_count(), r.matches.len()));
    match r.first_mismatch {
        Some(n) => out.push_str(&format!("first mismatch: {n}\n")),
        None => out.push_str("first mismatch: none\n"),
    }
    out.push_str(&format!("measure estimate: {} ({})\n", r.measure_estimate, r.measure_formula));
    if timing {
        out.push_str(&format!("elapsed: {:.3} s\n", r.elapsed.as_secs_f64()));
    }
    out
}
