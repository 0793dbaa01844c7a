//! Command-line front end: `compute`, `table`, `series` and `verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 I/O error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::analytic::{
    deg_derangement, deg_euler_polys, deg_gamma, deg_gamma_moment, derangements, euler_polys,
};
use crate::bell::{
    complete_bell_all, deg_bell_numbers, deg_partial_bell, partial_bell, partial_bell_triangle,
    partially_deg_bell_polys, ArgumentVector,
};
use crate::error::Error;
use crate::ring::{Rational, Scalar, Var};
use crate::sequences::{deg_falling_table, deg_rising_table, harmonic_table, hurwitz_table};
use crate::series::{gf_build, GfFamily};
use crate::stirling::{build_triangle, TriangleFamily};
use crate::verify::{run_suite, CheckId, Corruption, LambdaMode, Status, SuiteConfig};

#[derive(Parser, Debug)]
#[command(name = "degen", version, about = "Exact degenerate Stirling, Bell, Euler and derangement numbers")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// One value of a family
    Compute(ComputeArgs),
    /// A triangle or sequence up to --n-max
    Table(TableArgs),
    /// Coefficients of a generating function
    Series(SeriesArgs),
    /// Run the identity suite
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Plain,
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: String,
    /// `sym` or an exact rational `p/q`
    #[arg(long, default_value = "sym")]
    pub lambda: String,
    /// `x` for the indeterminate, or a rational
    #[arg(long)]
    pub x: Option<String>,
    /// JSON array of rational strings, or `sym`
    #[arg(long)]
    pub xs: Option<String>,
    /// harmonic order
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ComputeArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long = "n-max")]
    pub n_max: usize,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 8)]
    pub order: usize,
    /// kernel power
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// print `[t^n]` instead of `n!·[t^n]`
    #[arg(long)]
    pub raw: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `all`, a check name, or a comma-separated list
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long = "n-max")]
    pub n_max: Option<usize>,
    /// comma-separated list of `sym` and rationals
    #[arg(long)]
    pub lambda: Option<String>,
    /// index for the partial-sum diagnostic
    #[arg(long)]
    pub n: Option<usize>,
    /// last term of the partial-sum diagnostic
    #[arg(long)]
    pub truncate: Option<usize>,
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// include the quadrature comparison
    #[arg(long = "check-quadrature")]
    pub check_quadrature: bool,
    /// `family:n:k`, adds 1 to one triangle entry
    #[arg(long, hide = true)]
    pub corrupt: Option<String>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{}: {0}", .0.name())]
    Domain(#[from] Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn parse_lambda(s: &str) -> CliResult<LambdaMode> {
    match s.trim() {
        "sym" => Ok(LambdaMode::Symbolic),
        t => Ok(LambdaMode::Rational(Rational::from_str(t)?)),
    }
}

fn parse_x(s: Option<&str>) -> CliResult<Scalar> {
    match s.map(str::trim) {
        None | Some("x") | Some("sym") => Ok(Scalar::x()),
        Some(t) => Ok(Rational::from_str(t)?.into()),
    }
}

fn parse_xs(s: Option<&str>, len: usize) -> CliResult<ArgumentVector> {
    match s.map(str::trim) {
        None => Err(usage("--xs is required for this family")),
        Some("sym") => Ok(ArgumentVector::symbolic(len)),
        Some(t) => {
            let rs: Vec<Rational> = serde_json::from_str(t).map_err(|e| Error::ParseScalar(e.to_string()))?;
            Ok(ArgumentVector::from_rationals(rs))
        }
    }
}

/// What a subcommand produces.
#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Triangle(Vec<Vec<Scalar>>),
    Sequence { first_index: usize, values: Vec<Scalar> },
    Cell { n: usize, k: Option<usize>, value: Scalar },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Emission {
    pub family: String,
    /// `sym`, `p/q`, or absent for families without λ
    pub lambda: Option<String>,
    pub body: Body,
}

fn csv_value(v: &Scalar) -> String {
    match v.as_rational() {
        Some(r) => r.to_string(),
        None => v.to_json(),
    }
}

fn aligned(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in width.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let last = header.len() - 1;
    let line = |cells: Vec<String>| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i == last {
                s.push_str(cell);
            } else {
                let pad = width[i] - cell.chars().count();
                s.push_str(&" ".repeat(pad));
                s.push_str(cell);
                s.push_str("  ");
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

/// Renders an emission. Every format ends in a newline.
pub fn emit(e: &Emission, format: Format) -> String {
    match format {
        Format::Plain => match &e.body {
            Body::Triangle(rows) => aligned(
                &["n", "k", "value"],
                cells(rows)
                    .map(|(n, k, v)| vec![n.to_string(), k.to_string(), v.to_string()])
                    .collect(),
            ),
            Body::Sequence { first_index, values } => aligned(
                &["n", "value"],
                values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| vec![(i + first_index).to_string(), v.to_string()])
                    .collect(),
            ),
            Body::Cell { value, .. } => format!("{value}\n"),
        },
        Format::Csv => {
            let mut out = String::new();
            match &e.body {
                Body::Triangle(rows) => {
                    out.push_str("n,k,value\n");
                    for (n, k, v) in cells(rows) {
                        out.push_str(&format!("{n},{k},{}\n", csv_value(v)));
                    }
                }
                Body::Sequence { first_index, values } => {
                    out.push_str("n,value\n");
                    for (i, v) in values.iter().enumerate() {
                        out.push_str(&format!("{},{}\n", i + first_index, csv_value(v)));
                    }
                }
                Body::Cell { n, k: Some(k), value } => {
                    out.push_str(&format!("n,k,value\n{n},{k},{}\n", csv_value(value)));
                }
                Body::Cell { n, k: None, value } => {
                    out.push_str(&format!("n,value\n{n},{}\n", csv_value(value)));
                }
            }
            out
        }
        Format::Json => {
            let mut obj = json!({ "family": e.family, "lambda": e.lambda });
            let map = obj.as_object_mut().expect("object literal");
            match &e.body {
                Body::Triangle(rows) => {
                    map.insert("values".into(), json!(rows));
                }
                Body::Sequence { first_index, values } => {
                    map.insert("first_index".into(), json!(first_index));
                    map.insert("values".into(), json!(values));
                }
                Body::Cell { n, k, value } => {
                    map.insert("n".into(), json!(n));
                    if let Some(k) = k {
                        map.insert("k".into(), json!(k));
                    }
                    map.insert("values".into(), json!([value]));
                }
            }
            let mut s = serde_json::to_string_pretty(&obj).expect("json value");
            s.push('\n');
            s
        }
    }
}

fn cells(rows: &[Vec<Scalar>]) -> impl Iterator<Item = (usize, usize, &Scalar)> {
    rows.iter()
        .enumerate()
        .flat_map(|(n, row)| row.iter().enumerate().map(move |(k, v)| (n, k, v)))
}

// ---------------------------------------------------------------------------
// families

const TRIANGLES: [&str; 8] = [
    "stirling1",
    "stirling2",
    "unsigned-stirling1",
    "deg-stirling1",
    "deg-unsigned-stirling1",
    "deg-stirling2",
    "partial-bell",
    "deg-partial-bell",
];

const SEQUENCES: [&str; 15] = [
    "deg-falling",
    "deg-rising",
    "harmonic",
    "hurwitz",
    "complete-bell",
    "deg-complete-bell",
    "deg-bell",
    "partially-deg-bell",
    "deg-euler",
    "deg-euler-number",
    "euler",
    "derangement",
    "deg-derangement",
    "deg-gamma",
    "deg-gamma-moment",
];

/// Families whose values are rational functions of λ.
const RATIONAL_ONLY: [&str; 3] = ["deg-derangement", "deg-gamma", "deg-gamma-moment"];

const CLASSICAL: [&str; 7] = [
    "stirling1",
    "stirling2",
    "unsigned-stirling1",
    "partial-bell",
    "complete-bell",
    "euler",
    "derangement",
];

fn unknown_family(name: &str) -> CliError {
    usage(format!(
        "unknown family {name:?}; triangles: {}; sequences: {}",
        TRIANGLES.join(", "),
        SEQUENCES.join(", ")
    ))
}

fn family_name(name: &str) -> CliResult<&'static str> {
    TRIANGLES
        .into_iter()
        .chain(SEQUENCES)
        .find(|f| *f == name)
        .ok_or_else(|| unknown_family(name))
}

struct Ctx {
    family: &'static str,
    lambda: LambdaMode,
    x: Scalar,
    xs: Option<String>,
    r: u32,
}

impl Ctx {
    fn new(args: &FamilyArgs, family: &'static str) -> CliResult<Ctx> {
        let lambda = parse_lambda(&args.lambda)?;
        if RATIONAL_ONLY.contains(&family) && lambda == LambdaMode::Symbolic {
            return Err(Error::SymbolicLambdaUnsupported(family).into());
        }
        Ok(Ctx {
            family,
            lambda,
            x: parse_x(args.x.as_deref())?,
            xs: args.xs.clone(),
            r: args.r,
        })
    }

    fn lam(&self) -> Scalar {
        self.lambda.scalar()
    }

    fn rational_lambda(&self) -> Rational {
        match &self.lambda {
            LambdaMode::Rational(r) => r.clone(),
            LambdaMode::Symbolic => unreachable!("rejected in Ctx::new"),
        }
    }

    fn lambda_label(&self) -> Option<String> {
        if CLASSICAL.contains(&self.family) {
            return None;
        }
        Some(match &self.lambda {
            LambdaMode::Symbolic => "sym".into(),
            LambdaMode::Rational(r) => r.to_string(),
        })
    }

    fn xs(&self, len: usize) -> CliResult<ArgumentVector> {
        parse_xs(self.xs.as_deref(), len)
    }

    fn triangle(&self, nmax: usize) -> CliResult<Vec<Vec<Scalar>>> {
        let lam = self.lam();
        if let Some(f) = TriangleFamily::from_name(self.family) {
            return Ok(build_triangle(f, nmax, &lam).rows().to_vec());
        }
        let xs = self.xs(nmax)?;
        match self.family {
            "partial-bell" => Ok(partial_bell_triangle(nmax, &xs)?),
            "deg-partial-bell" => Ok(partial_bell_triangle(nmax, &xs.degenerate(&lam, nmax)?)?),
            _ => Err(unknown_family(self.family)),
        }
    }

    /// `(first_index, values)` for indices up to `nmax`.
    fn sequence(&self, nmax: usize) -> CliResult<(usize, Vec<Scalar>)> {
        let lam = self.lam();
        let x = &self.x;
        let values = match self.family {
            "deg-falling" => deg_falling_table(x, &lam, nmax).values().to_vec(),
            "deg-rising" => deg_rising_table(x, &lam, nmax).values().to_vec(),
            "harmonic" => harmonic_table(self.r, nmax).values().to_vec(),
            "hurwitz" => {
                let x = x
                    .as_rational()
                    .ok_or_else(|| usage("hurwitz needs a rational --x"))?;
                hurwitz_table(self.r, x, nmax)?.values().to_vec()
            }
            "complete-bell" => complete_bell_all(nmax, &self.xs(nmax)?)?,
            "deg-complete-bell" => complete_bell_all(nmax, &self.xs(nmax)?.degenerate(&lam, nmax)?)?,
            "deg-bell" => deg_bell_numbers(nmax, &lam),
            "partially-deg-bell" => partially_deg_bell_polys(nmax, x, &lam),
            "deg-euler" => deg_euler_polys(nmax, &lam)
                .polynomials()
                .iter()
                .map(|p| p.substitute(Var::X, x))
                .collect(),
            "deg-euler-number" => {
                let t = deg_euler_polys(nmax, &lam);
                (0..=nmax).map(|n| t.number(n)).collect()
            }
            "euler" => euler_polys(nmax).iter().map(|p| p.substitute(Var::X, x)).collect(),
            "derangement" => derangements(nmax).into_iter().map(|d| Rational::from(d).into()).collect(),
            "deg-derangement" => deg_derangement(nmax, &self.rational_lambda())?
                .values()
                .iter()
                .cloned()
                .map(Scalar::from)
                .collect(),
            "deg-gamma" => {
                let l = self.rational_lambda();
                let values = (1..=nmax)
                    .map(|k| deg_gamma(k, &l).map(|g| g.value.into()))
                    .collect::<Result<Vec<Scalar>, Error>>()?;
                return Ok((1, values));
            }
            "deg-gamma-moment" => {
                let l = self.rational_lambda();
                (0..=nmax)
                    .map(|k| deg_gamma_moment(k, &l).map(Scalar::from))
                    .collect::<Result<Vec<_>, Error>>()?
            }
            _ => return Err(unknown_family(self.family)),
        };
        Ok((0, values))
    }
}

pub fn compute(args: &ComputeArgs) -> CliResult<Emission> {
    let family = family_name(&args.family.family)?;
    let ctx = Ctx::new(&args.family, family)?;
    let n = args.n.or(args.k).ok_or_else(|| usage("--n is required"))?;
    let body = if TRIANGLES.contains(&family) {
        let k = args.k.ok_or_else(|| usage("--k is required for triangle families"))?;
        if args.n.is_none() {
            return Err(usage("--n is required"));
        }
        let value = match family {
            "partial-bell" => partial_bell(n, k, &ctx.xs(n.saturating_sub(k) + 1)?)?,
            "deg-partial-bell" => deg_partial_bell(n, k, &ctx.xs(n.saturating_sub(k) + 1)?, &ctx.lam())?,
            _ => {
                if k > n {
                    return Err(Error::IndexOutOfTriangle { n, k }.into());
                }
                ctx.triangle(n)?[n][k].clone()
            }
        };
        Body::Cell { n, k: Some(k), value }
    } else {
        // gamma families are indexed by their argument; --k is accepted as an alias
        let (first, values) = ctx.sequence(n)?;
        if n < first {
            return Err(Error::NonConvergent(format!("{family} is undefined at {n}")).into());
        }
        Body::Cell {
            n,
            k: None,
            value: values[n - first].clone(),
        }
    };
    Ok(Emission {
        family: family.into(),
        lambda: ctx.lambda_label(),
        body,
    })
}

pub fn table(args: &TableArgs) -> CliResult<Emission> {
    let family = family_name(&args.family.family)?;
    let ctx = Ctx::new(&args.family, family)?;
    let body = if TRIANGLES.contains(&family) {
        Body::Triangle(ctx.triangle(args.n_max)?)
    } else {
        let (first_index, values) = ctx.sequence(args.n_max)?;
        Body::Sequence { first_index, values }
    };
    Ok(Emission {
        family: family.into(),
        lambda: ctx.lambda_label(),
        body,
    })
}

fn gf_family(name: &str, x: &Scalar, k: u32) -> CliResult<GfFamily> {
    Ok(match name {
        "deg-exponential" => GfFamily::DegExponential { x: x.clone() },
        "stirling1-kernel" => GfFamily::Stirling1Kernel { k },
        "unsigned-stirling1-kernel" => GfFamily::UnsignedStirling1Kernel { k },
        "stirling2-kernel" => GfFamily::Stirling2Kernel { k },
        "deg-stirling1-kernel" => GfFamily::DegStirling1Kernel { k },
        "deg-unsigned-stirling1-kernel" => GfFamily::DegUnsignedStirling1Kernel { k },
        "deg-stirling2-kernel" => GfFamily::DegStirling2Kernel { k },
        "deg-euler" => GfFamily::DegEuler { x: x.clone() },
        "euler" => GfFamily::Euler { x: x.clone() },
        "deg-bell" => GfFamily::DegBell,
        "partially-deg-bell" => GfFamily::PartiallyDegBell { x: x.clone() },
        "derangement" => GfFamily::Derangement,
        "deg-derangement" => GfFamily::DegDerangement,
        _ => {
            return Err(usage(format!(
                "unknown series family {name:?}; expected one of deg-exponential, stirling1-kernel, \
                 unsigned-stirling1-kernel, stirling2-kernel, deg-stirling1-kernel, \
                 deg-unsigned-stirling1-kernel, deg-stirling2-kernel, deg-euler, euler, deg-bell, \
                 partially-deg-bell, derangement, deg-derangement"
            )))
        }
    })
}

pub fn series(args: &SeriesArgs) -> CliResult<Emission> {
    let a = &args.family;
    let lambda = parse_lambda(&a.lambda)?;
    let x = parse_x(a.x.as_deref())?;
    let gf = gf_family(&a.family, &x, args.k)?;
    let s = gf_build(&gf, &lambda.scalar(), args.order)?;
    let values = if args.raw { s.coeffs().to_vec() } else { s.egf_values() };
    let lambda = gf.uses_lambda().then(|| match &lambda {
        LambdaMode::Symbolic => "sym".to_string(),
        LambdaMode::Rational(r) => r.to_string(),
    });
    Ok(Emission {
        family: a.family.clone(),
        lambda,
        body: Body::Sequence { first_index: 0, values },
    })
}

fn parse_corruption(s: &str) -> CliResult<Corruption> {
    let bad = || usage(format!("--corrupt expects family:n:k, got {s:?}"));
    let mut parts = s.split(':');
    let family = parts.next().and_then(TriangleFamily::from_name).ok_or_else(bad)?;
    let n = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    let k = parts.next().and_then(|t| t.parse().ok()).ok_or_else(bad)?;
    if parts.next().is_some() || k > n {
        return Err(bad());
    }
    Ok(Corruption { family, n, k })
}

/// Builds the suite configuration described by the `verify` flags.
pub fn suite_config(args: &VerifyArgs) -> CliResult<SuiteConfig> {
    let mut checks = Vec::new();
    let mut explicit_quadrature = false;
    for item in args.suite.split(',').map(str::trim) {
        let ids = CheckId::parse_suite(item).ok_or_else(|| usage(format!("unknown suite {item:?}")))?;
        explicit_quadrature |= item != "all" && ids.contains(&CheckId::MomentQuad);
        checks.extend(ids);
    }
    if !(args.check_quadrature || explicit_quadrature) {
        checks.retain(|&c| c != CheckId::MomentQuad);
    } else if !checks.contains(&CheckId::MomentQuad) {
        checks.push(CheckId::MomentQuad);
    }
    checks.sort();
    checks.dedup();
    let mut config = SuiteConfig {
        name: args.suite.clone(),
        checks,
        ..SuiteConfig::default()
    };
    if let Some(n) = args.n_max {
        config = config.with_nmax(n);
    }
    if let Some(list) = &args.lambda {
        let mut symbolic = false;
        let mut rationals = Vec::new();
        for item in list.split(',') {
            match parse_lambda(item)? {
                LambdaMode::Symbolic => symbolic = true,
                LambdaMode::Rational(r) => rationals.push(r),
            }
        }
        config = config.with_lambdas(symbolic, rationals);
    }
    if let Some(n) = args.n {
        config.partial_ns = vec![n];
    }
    if let Some(k) = args.truncate {
        config.truncation = k;
    }
    if let Some(c) = &args.corrupt {
        config.corruption = Some(parse_corruption(c)?);
    }
    Ok(config)
}

fn write_to(path: Option<&PathBuf>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    let config = suite_config(args)?;
    let report = run_suite(&config)?;
    write_to(args.report.as_ref(), &report.to_json(), stdout)?;
    for c in report.failures() {
        let params = serde_json::to_string(&c.params).expect("json params");
        writeln!(stderr, "FAIL {} {params}", c.id)?;
    }
    writeln!(
        stderr,
        "{}: {} passed, {} failed, {} diagnostic",
        report.suite,
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Diagnostic)
    )?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn dispatch(cli: &CliConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<i32> {
    let (emission, family) = match &cli.command {
        Command::Compute(a) => (compute(a)?, &a.family),
        Command::Table(a) => (table(a)?, &a.family),
        Command::Series(a) => (series(a)?, &a.family),
        Command::Verify(a) => return verify(a, stdout, stderr),
    };
    write_to(family.output.as_ref(), &emit(&emission, family.format), stdout)?;
    Ok(0)
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return e.exit_code();
        }
    };
    match dispatch(&cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("degen").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn compute_examples() {
        let (code, out, _) = run_text(&["compute", "--family", "deg-derangement", "--n", "2", "--lambda", "1/2"]);
        assert_eq!((code, out.as_str()), (0, "11\n"));
        let (code, _, err) = run_text(&["compute", "--family", "deg-derangement", "--lambda", "sym", "--n", "2"]);
        assert_eq!(code, 2);
        assert!(err.contains("SymbolicLambdaUnsupported"), "{err}");
        let (code, out, _) = run_text(&["compute", "--family", "deg-stirling1", "--n", "3", "--k", "1"]);
        assert_eq!((code, out.as_str()), (0, "2λ^2\n"));
        let (code, out, _) = run_text(&["compute", "--family", "deg-gamma", "--k", "2", "--lambda", "1/4"]);
        assert_eq!((code, out.as_str()), (0, "8/3\n"));
    }

    #[test]
    fn csv_rows() {
        let (code, out, _) = run_text(&[
            "table", "--family", "deg-stirling1", "--n-max", "3", "--lambda", "sym", "--format", "csv",
        ]);
        assert_eq!(code, 0);
        assert!(out.starts_with("n,k,value\n"));
        assert!(out.lines().any(|l| l == r#"3,1,["0","0","2"]"#), "{out}");
        let (_, out, _) = run_text(&["table", "--family", "derangement", "--n-max", "4", "--format", "csv"]);
        assert_eq!(out, "n,value\n0,1\n1,0\n2,1\n3,2\n4,9\n");
    }

    #[test]
    fn empty_table_is_header_only() {
        let e = Emission {
            family: "harmonic".into(),
            lambda: None,
            body: Body::Sequence {
                first_index: 0,
                values: vec![],
            },
        };
        assert_eq!(emit(&e, Format::Csv), "n,value\n");
        let e = Emission {
            body: Body::Triangle(vec![]),
            ..e
        };
        assert_eq!(emit(&e, Format::Csv), "n,k,value\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_text(&["table", "--family", "nope", "--n-max", "2"]).0, 2);
        assert_eq!(run_text(&["table", "--family", "deg-bell"]).0, 2);
        assert_eq!(run_text(&["frobnicate"]).0, 2);
        let (code, _, err) = run_text(&["compute", "--family", "deg-bell", "--n", "2", "--lambda", "0.5"]);
        assert_eq!(code, 2);
        assert!(err.contains("ParseRational"), "{err}");
    }

    #[test]
    fn verify_flags() {
        let args = VerifyArgs {
            suite: "theorem4-partial".into(),
            n_max: None,
            lambda: Some("2/7".into()),
            n: Some(1),
            truncate: Some(50),
            report: None,
            check_quadrature: false,
            corrupt: None,
        };
        let config = suite_config(&args).unwrap();
        assert_eq!(config.checks, vec![CheckId::Theorem4Partial]);
        assert_eq!(config.partial_ns, vec![1]);
        assert_eq!(config.truncation, 50);
        let all = suite_config(&VerifyArgs {
            suite: "all".into(),
            ..args
        })
        .unwrap();
        assert!(!all.checks.contains(&CheckId::MomentQuad));
        assert_eq!(
            parse_corruption("deg-stirling2:3:1").unwrap(),
            Corruption {
                family: TriangleFamily::S2Lambda,
                n: 3,
                k: 1
            }
        );
        assert!(parse_corruption("deg-stirling2:1:3").is_err());
    }
}
