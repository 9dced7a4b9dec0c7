//! The `freeprob` command line: coefficient tables with numeric columns, and
//! the identity suite.

mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use freeprob::fubm::{a_table, free_cumulant_fubm, g_table, h_table, moment_fubm, MAX_H};
use freeprob::jacobi::{b_table, c_table, h_sign_finding, s_transform, BVariant, CVariant};
use freeprob::ncpart::cumulants_from_moments;
use freeprob::schur::{f0_closed, f1_closed, f1_finding, verblunsky, F1Prefactor};
use freeprob::verify::{self, a_integral_rep_finding, q_integral_rep_finding, Report, VerifyOptions};
use freeprob::{CoeffTable, Error, Provenance};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::json;

pub use output::{t_key, EntryOut, TableOut};

#[derive(Debug, Parser)]
#[command(name = "freeprob", version, about = "Exact tables for the free unitary Brownian motion and the free Jacobi process")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Table size or truncation order.
    #[arg(long, global = true)]
    pub order: Option<usize>,

    /// Time at which to evaluate every entry numerically; repeatable. Accepts
    /// `2`, `1/2` or `0.25`.
    #[arg(long = "t", global = true, value_parser = parse_time)]
    pub t: Vec<BigRational>,

    /// Working precision in bits for the numeric columns.
    #[arg(long, global = true, default_value_t = 128)]
    pub precision: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,

    /// Restrict an adjudicated table to one closed-form variant.
    #[arg(long, global = true)]
    pub variant: Option<String>,

    /// Number of Schur steps.
    #[arg(long, global = true)]
    pub depth: Option<usize>,

    /// Upper bound on `--order`.
    #[arg(long, global = true, env = "FREEPROB_MAX_ORDER", default_value_t = 12, hide = true)]
    pub max_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Moments phi(u_t^k).
    Moments,
    /// Free cumulants of u_t (`--variant oracle` for Möbius inversion).
    FreeCumulants,
    /// Alternating star cumulants g_n, h_n and the coefficients a_n.
    StarCumulants,
    /// The b_n table: reversion oracle and closed-form variants.
    JacobiR,
    /// The c_n table and the S-transform coefficients.
    JacobiS,
    /// Schur function f_0, first iterate f_1 and Verblunsky coefficients.
    Schur,
    /// Run the full identity suite.
    Verify,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfRange { .. } => CliError::Usage(e.to_string()),
            e => CliError::Compute(e),
        }
    }
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Compute(_) => "computation",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Compute(e) => e.to_string(),
        }
    }
}

/// Positive rational from `p`, `p/q` or a decimal literal.
pub fn parse_time(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let r = if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let num: BigInt = digits.parse().map_err(|_| format!("not a number: {s}"))?;
        BigRational::new(num, num_traits::pow(BigInt::from(10), frac.len()))
    } else {
        s.parse::<BigRational>().map_err(|_| format!("not a rational: {s}"))?
    };
    if !r.is_positive() {
        return Err(format!("t must be positive, got {s}"));
    }
    Ok(r)
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            if cli.format == Format::Json {
                let rec = json!({ "error": { "kind": e.kind(), "message": e.message() } });
                let _ = writeln!(out, "{rec}");
            }
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    if cli.precision < 53 {
        return Err(CliError::Usage(format!("--precision must be at least 53, got {}", cli.precision)));
    }
    let default_order = match cli.command {
        Command::Verify => 12,
        Command::Schur => 6,
        _ => 8,
    };
    let order = cli.order.unwrap_or(default_order);
    if order == 0 || order > cli.max_order {
        return Err(CliError::Usage(format!("--order must be in 1..={}, got {order}", cli.max_order)));
    }
    if cli.variant.is_some() && !matches!(cli.command, Command::FreeCumulants | Command::JacobiR | Command::JacobiS | Command::Schur) {
        return Err(CliError::Usage("--variant only applies to free-cumulants, jacobi-r, jacobi-s and schur".into()));
    }
    if cli.depth.is_some() && cli.command != Command::Schur {
        return Err(CliError::Usage("--depth only applies to schur".into()));
    }
    if cli.command == Command::Verify {
        let report = verify::run(&VerifyOptions { order, precision_bits: cli.precision })?;
        write_report(out, &report, cli.format).map_err(io_error)?;
        return Ok(if report.passed() { 0 } else { 1 });
    }
    let tables = tables(cli, order)?;
    let rendered: Vec<TableOut> = tables.iter().map(|t| TableOut::from_table(t, &cli.t, cli.precision)).collect();
    match cli.format {
        Format::Pretty => output::write_pretty(out, &rendered, &cli.t),
        Format::Json => output::write_json(out, &rendered),
        Format::Csv => output::write_csv(out, &rendered, &cli.t),
    }
    .map_err(io_error)?;
    Ok(0)
}

fn io_error(e: std::io::Error) -> CliError {
    CliError::Usage(format!("cannot write output: {e}"))
}

fn variant<T: Copy>(given: Option<&str>, options: &[(&str, T)]) -> Result<Vec<T>, CliError> {
    match given {
        None => Ok(options.iter().map(|(_, v)| *v).collect()),
        Some(name) => options.iter().find(|(n, _)| *n == name).map(|(_, v)| vec![*v]).ok_or_else(|| {
            let names: Vec<&str> = options.iter().map(|(n, _)| *n).collect();
            CliError::Usage(format!("unknown variant {name}; expected one of {}", names.join(", ")))
        }),
    }
}

fn tables(cli: &Cli, order: usize) -> Result<Vec<CoeffTable>, CliError> {
    let given = cli.variant.as_deref();
    Ok(match cli.command {
        Command::Moments => {
            vec![CoeffTable::new("moments", Provenance::ClosedForm, 1, (1..=order as i64).map(|k| moment_fubm(k, 1)).collect())]
        }
        Command::FreeCumulants => {
            let mut out = Vec::new();
            for oracle in variant(given, &[("closed-form", false), ("oracle", true)])? {
                out.push(if oracle {
                    let moments: Vec<_> = (0..=order as i64).map(|k| moment_fubm(k, 1)).collect();
                    CoeffTable::new("kappa", Provenance::Oracle, 1, cumulants_from_moments(&moments)?)
                } else {
                    CoeffTable::new("kappa", Provenance::ClosedForm, 1, (1..=order as u32).map(free_cumulant_fubm).collect())
                });
            }
            out
        }
        Command::StarCumulants => {
            let (closed, oracle, _) = a_table(order)?;
            let (_, finding) = a_integral_rep_finding(order.min(5) as u32);
            vec![g_table(order)?, h_table(order.min(MAX_H))?, closed.with_findings(vec![finding]), oracle]
        }
        Command::JacobiR => {
            let wanted = variant(given, &[("as-printed", BVariant::AsPrinted), ("corrected", BVariant::Corrected)])?;
            let (oracle, variants, finding) = b_table(order)?;
            let (_, rep) = q_integral_rep_finding(order.min(5) as u32);
            let mut out = vec![oracle.with_findings(vec![finding, rep])];
            for (v, mut t) in variants.into_iter().filter(|(v, _)| wanted.contains(v)) {
                t.label = format!("b[{}]", kebab(&v));
                out.push(t);
            }
            out
        }
        Command::JacobiS => {
            let wanted = variant(
                given,
                &[("as-printed", CVariant::AsPrinted), ("cauchy", CVariant::Cauchy), ("corrected", CVariant::Corrected)],
            )?;
            let (oracle, variants, finding) = c_table(order)?;
            let h = h_sign_finding(order.min(3) as u32, order.min(6));
            let mut out = vec![oracle.with_findings(vec![finding, h])];
            for (v, mut t) in variants.into_iter().filter(|(v, _)| wanted.contains(v)) {
                t.label = format!("c[{}]", kebab(&v));
                out.push(t);
            }
            out.push(s_transform(order)?);
            out
        }
        Command::Schur => {
            let wanted = variant(given, &[("one-minus-exp-t", F1Prefactor::OneMinusExpT), ("one-minus-exp-neg-t", F1Prefactor::OneMinusExpNegT)])?;
            let f0 = f0_closed(order)?;
            let mut out = vec![CoeffTable::new("f0", Provenance::ClosedForm, 0, f0.into_coeffs())];
            let (_, finding) = f1_finding(order)?;
            for (i, p) in wanted.into_iter().enumerate() {
                let f1 = f1_closed(order, p)?;
                let t = CoeffTable::new(format!("f1[{}]", kebab(&p)), Provenance::ClosedForm, 0, f1.into_coeffs());
                out.push(if i == 0 { t.with_findings(vec![finding.clone()]) } else { t });
            }
            out.push(verblunsky(cli.depth.unwrap_or(2))?);
            out
        }
        Command::Verify => unreachable!("handled by execute"),
    })
}

fn kebab<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_value(v).ok().and_then(|x| x.as_str().map(str::to_owned)).unwrap_or_default()
}

fn write_report(w: &mut dyn Write, report: &Report, format: Format) -> std::io::Result<()> {
    match format {
        Format::Pretty => {
            for s in &report.sections {
                writeln!(w, "{}", s.name)?;
                for c in &s.checks {
                    writeln!(w, "  {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
                    if let Some(d) = &c.detail {
                        writeln!(w, "       {d}")?;
                    }
                }
                for f in &s.findings {
                    output::write_finding(w, f)?;
                }
            }
            let total = report.checks().count();
            let failed = report.checks().filter(|c| !c.passed).count();
            writeln!(w, "{total} checks, {failed} failed, {} findings", report.findings().count())
        }
        Format::Json => {
            let v = json!({ "passed": report.passed(), "sections": report.sections });
            serde_json::to_writer_pretty(&mut *w, &v)?;
            writeln!(w)
        }
        Format::Csv => {
            let mut out = csv::Writer::from_writer(&mut *w);
            out.write_record(["section", "check", "passed", "detail"])?;
            for s in &report.sections {
                for c in &s.checks {
                    out.write_record([s.name, &c.name, if c.passed { "true" } else { "false" }, c.detail.as_deref().unwrap_or("")])?;
                }
            }
            out.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_parsing() {
        assert_eq!(parse_time("1/2").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_time("0.25").unwrap(), BigRational::new(1.into(), 4.into()));
        assert_eq!(parse_time("3").unwrap(), BigRational::from_integer(3.into()));
        assert!(parse_time("0").is_err());
        assert!(parse_time("-1").is_err());
        assert!(parse_time("x").is_err());
    }
}
