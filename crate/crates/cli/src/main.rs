//! `pcfheight`: heights, PCF certification, the cubic/quadratic searches
//! and family scans from the command line.
//!
//! Exit codes: 0 success (or PCF), 1 not PCF, 2 bad input, 3 undecided,
//! 4 a strict enumeration left something undecided.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use pcfheight::enumeration::{
    enumerate_pcf_cubics, enumerate_pcf_quadratics, family_scan, write_cubic_run, write_quadratic_run,
    EnumerationConfig, Family, FamilyRow, RunFiles,
};
use pcfheight::heights::{canonical_height_report, EstimateStatus, HeightBudget, HeightReport};
use pcfheight::numerics::{parse_rational, DyadicInterval, QuadExt, Rational, DEFAULT_PRECISION};
use pcfheight::pcf::{certify_pcf, PcfVerdict};
use pcfheight::poly::{parse_poly, PolySpec};
use pcfheight::Error;

/// Like `println!`, but a closed pipe (`| head`) is not a panic.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

const EXIT_NOT_PCF: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;
const EXIT_STRICT: u8 = 4;

#[derive(Parser)]
#[command(name = "pcfheight", version, about = "Canonical heights and post-critical finiteness over Q")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Working precision in bits.
    #[arg(long, global = true, env = "PCFHEIGHT_PRECISION")]
    precision: Option<u32>,
    /// `csv` prints the candidate table for `enumerate`; elsewhere it is `text`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical height of a point: `height "z^2 - 2z" "1+sqrt(2)"`.
    Height {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        #[arg(allow_hyphen_values = true)]
        point: String,
        /// Orbit length before giving up.
        #[arg(long, default_value_t = 64)]
        iterations: usize,
        /// Print the local height at every relevant place.
        #[arg(long)]
        verbose: bool,
        /// Exact dyadic endpoints instead of decimal ± radius.
        #[arg(long)]
        exact: bool,
    },
    /// Decide whether a polynomial is post-critically finite.
    Certify {
        /// `z^3 + A z + B`.
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true, conflicts_with_all = ["quadratic", "poly"])]
        cubic: Option<Vec<String>>,
        /// `z^2 + c`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "poly")]
        quadratic: Option<String>,
        #[arg(allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, default_value_t = 64)]
        iterations: usize,
    },
    /// The complete search over monic cubics (degree 3) or `z^2 + c` (degree 2).
    Enumerate {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
        degree: u8,
        /// `key = value` file; flags given here override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n_arch: Option<usize>,
        #[arg(long)]
        n_padic: Option<usize>,
        /// Comma-separated primes for the p-adic sieve.
        #[arg(long)]
        primes: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        /// Fail (exit 4) if anything is left undecided.
        #[arg(long)]
        strict: bool,
        /// Runs are written to `<out>/run-d<degree>-<config digest>/`.
        #[arg(long, default_value = "runs")]
        out: PathBuf,
    },
    /// `h_crit / h_mc` along a one-parameter family, as CSV.
    FamilyScan {
        /// `unicritical` (z^d + c) or `superattracting` (z^d - (d c/(d-1)) z^(d-1)).
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Comma-separated parameters; may be empty.
        #[arg(long, default_value = "10,1000,1000000", allow_hyphen_values = true)]
        c_list: String,
        #[arg(long, default_value_t = 64)]
        iterations: usize,
        /// Exact dyadic endpoints.
        #[arg(long)]
        exact: bool,
    },
}

/// What went wrong, already mapped to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Undecided { .. } | Error::ComparisonUndecided => EXIT_UNDECIDED,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: String) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message,
    }
}

/// Parse errors point at the offending character.
fn parse_diagnostic(what: &str, input: &str, e: Error) -> Failure {
    match &e {
        Error::Parse { pos, msg } => {
            let caret = " ".repeat(pos.min(&input.len()) + 2);
            input_error(format!("cannot parse {what}: {msg}\n  {input}\n{caret}^"))
        }
        _ => input_error(format!("cannot parse {what}: {e}")),
    }
}

fn poly_arg(s: &str) -> Result<PolySpec, Failure> {
    parse_poly(s).map_err(|e| parse_diagnostic("polynomial", s, e))
}

fn rational_arg(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(|e| parse_diagnostic("rational", s, e))
}

fn interval(x: &DyadicInterval, exact: bool) -> String {
    if exact {
        x.to_exact_string()
    } else {
        x.to_string()
    }
}

fn budget(common: &Common, iterations: usize) -> HeightBudget {
    HeightBudget {
        max_iterations: iterations,
        precision: common.precision.unwrap_or(DEFAULT_PRECISION),
        ..HeightBudget::default()
    }
}

fn print_json(v: &serde_json::Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn height(common: &Common, poly: &str, point: &str, iterations: usize, verbose: bool, exact: bool) -> Result<u8, Failure> {
    let f = poly_arg(poly)?;
    let z: QuadExt = point.parse().map_err(|e| parse_diagnostic("point", point, e))?;
    let report = canonical_height_report(&f, &z, &budget(common, iterations))?;
    let code = if report.complete { 0 } else { EXIT_UNDECIDED };
    if common.format == Format::Json {
        print_json(&height_json(&f, &z, &report));
        return Ok(code);
    }
    let status = if report.complete { "" } else { "  (undecided: partial enclosure)" };
    out!("h_f(z) = {}{status}", interval(&report.value, exact));
    if verbose {
        out!("f = {f}\nz = {z}");
        if report.preperiodic {
            out!("preperiodic after {} iterates", report.iterations);
        }
        for l in &report.locals {
            let status = match l.status {
                EstimateStatus::Exact => "exact",
                EstimateStatus::Converged => "converged",
                EstimateStatus::Bounded => "bounded",
            };
            let place = format!("lambda_{}", l.place);
            out!("  {place:<12} {}  [{status}, {} iterations]", interval(&l.value, exact), l.iterations_used);
        }
    }
    Ok(code)
}

fn height_json(f: &PolySpec, z: &QuadExt, r: &HeightReport) -> serde_json::Value {
    json!({
        "poly": f,
        "point": z,
        "value": r.value,
        "complete": r.complete,
        "preperiodic": r.preperiodic,
        "iterations": r.iterations,
        "locals": r.locals,
    })
}

fn certify(
    common: &Common,
    cubic: Option<&[String]>,
    quadratic: Option<&str>,
    poly: Option<&str>,
    iterations: usize,
) -> Result<u8, Failure> {
    let f = match (cubic, quadratic, poly) {
        (Some([a, b]), _, _) => PolySpec::cubic(rational_arg(a)?, rational_arg(b)?),
        (_, Some(c), _) => PolySpec::quadratic(rational_arg(c)?),
        (_, _, Some(p)) => poly_arg(p)?,
        _ => return Err(input_error("certify needs --cubic A B, --quadratic c or a polynomial".into())),
    };
    let verdict = certify_pcf(&f, &budget(common, iterations))?;
    print_json(&json!({"poly": f, "verdict_label": verdict.label(), "verdict": verdict}));
    Ok(match verdict {
        PcfVerdict::Pcf { .. } => 0,
        PcfVerdict::NotPcf { .. } => EXIT_NOT_PCF,
        PcfVerdict::Undecided { .. } => EXIT_UNDECIDED,
    })
}

struct EnumerateArgs {
    degree: u8,
    config: Option<PathBuf>,
    n_arch: Option<usize>,
    n_padic: Option<usize>,
    primes: Option<String>,
    workers: Option<usize>,
    strict: bool,
    out: PathBuf,
}

fn enumeration_config(common: &Common, a: &EnumerateArgs) -> Result<EnumerationConfig, Failure> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
            text.parse::<EnumerationConfig>()?
        }
        None => EnumerationConfig::default(),
    };
    if let Some(p) = common.precision {
        cfg.precision = p;
    }
    if let Some(n) = a.n_arch {
        cfg.n_arch = n;
    }
    if let Some(n) = a.n_padic {
        cfg.n_padic = n;
    }
    if let Some(ps) = &a.primes {
        cfg.set("primes", ps)?;
    }
    if let Some(w) = a.workers {
        cfg.workers = w;
    }
    cfg.strict |= a.strict;
    cfg.validate()?;
    Ok(cfg)
}

fn strict_failure(e: Error) -> Failure {
    match e {
        Error::Undecided { .. } => Failure {
            code: EXIT_STRICT,
            message: format!("strict mode: {e}"),
        },
        e => e.into(),
    }
}

/// Echoes the summary (json) or the candidate table (csv) of a run.
fn dump(format: Format, files: &RunFiles) -> Result<bool, Failure> {
    let path = match format {
        Format::Text => return Ok(false),
        Format::Json => &files.summary,
        Format::Csv => &files.csv,
    };
    out_raw!("{}", fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?);
    Ok(true)
}

fn enumerate(common: &Common, a: EnumerateArgs) -> Result<u8, Failure> {
    let cfg = enumeration_config(common, &a)?;
    let strict = cfg.strict;
    let lift = |e: Error| if strict { strict_failure(e) } else { e.into() };
    if a.degree == 2 {
        let q = enumerate_pcf_quadratics(&cfg).map_err(lift)?;
        let files = write_quadratic_run(&q, &cfg, &a.out)?;
        let code = if q.undecided.is_empty() { 0 } else { EXIT_UNDECIDED };
        if dump(common.format, &files)? {
            return Ok(code);
        }
        out!("z^2 + c, c in {{-2, ..., 2}}");
        for r in &q.records {
            out!("  c = {:>2}  {}", r.c, r.verdict.label());
        }
        let pcf: Vec<String> = q.pcf.iter().map(|c| c.to_string()).collect();
        out!("PCF: {{{}}}", pcf.join(", "));
        out!("written to {}", files.dir.display());
        return Ok(code);
    }
    let r = enumerate_pcf_cubics(&cfg).map_err(lift)?;
    let files = write_cubic_run(&r, &a.out)?;
    let code = if r.undecided.is_empty() { 0 } else { EXIT_UNDECIDED };
    if dump(common.format, &files)? {
        return Ok(code);
    }
    let mut counts: Vec<usize> = r.stage_counts.iter().map(|s| s.survivors).collect();
    counts.dedup();
    counts.push(r.pcf.len());
    let counts: Vec<String> = counts.iter().map(usize::to_string).collect();
    out!("{} (last step adds the B -> -B twins)", counts.join(" -> "));
    for s in &r.stage_counts {
        out!("  {:<12} eliminated {:>5}  survivors {:>5}", s.stage, s.eliminated, s.survivors);
    }
    out!("PCF z^3 + A z + B ({}):", r.pcf.len());
    for p in &r.pcf {
        out!("  A = {:>5}  B = {:>5}  orbit length {}", p.a, p.b, p.verdict.orbit_len());
    }
    for p in &r.undecided {
        out!("  undecided: A = {}, B = {}", p.a, p.b);
    }
    out!("written to {}", files.dir.display());
    Ok(code)
}

fn scan(common: &Common, family: &str, degree: usize, c_list: &str, iterations: usize, exact: bool) -> Result<u8, Failure> {
    let family: Family = family.parse()?;
    let cs = c_list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(rational_arg)
        .collect::<Result<Vec<_>, _>>()?;
    let rows = family_scan(family, degree, &cs, &budget(common, iterations))?;
    if common.format == Format::Json {
        print_json(&serde_json::to_value(&rows).expect("rows serialize"));
    } else {
        out!("{}", FamilyRow::CSV_HEADER);
        for r in &rows {
            out!("{}", r.csv_line(exact));
        }
    }
    Ok(if rows.iter().any(|r| r.undecided) { EXIT_UNDECIDED } else { 0 })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let common = &cli.common;
    if let Some(p) = common.precision {
        if p < 16 {
            return Err(input_error(format!("precision {p} is below 16 bits")));
        }
    }
    match cli.command {
        Command::Height {
            poly,
            point,
            iterations,
            verbose,
            exact,
        } => height(common, &poly, &point, iterations, verbose, exact),
        Command::Certify {
            cubic,
            quadratic,
            poly,
            iterations,
        } => certify(common, cubic.as_deref(), quadratic.as_deref(), poly.as_deref(), iterations),
        Command::Enumerate {
            degree,
            config,
            n_arch,
            n_padic,
            primes,
            workers,
            strict,
            out,
        } => enumerate(
            common,
            EnumerateArgs {
                degree,
                config,
                n_arch,
                n_padic,
                primes,
                workers,
                strict,
                out,
            },
        ),
        Command::FamilyScan {
            family,
            degree,
            c_list,
            iterations,
            exact,
        } => scan(common, &family, degree, &c_list, iterations, exact),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
