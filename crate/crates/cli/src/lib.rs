//! `prym`: classes and Euler characteristics of pointed Brill-Noether loci on
//! Prym varieties from the command line.
//!
//! Problems are entered as the raw vanishing sequence `a`; the derived
//! partition is echoed back in every output format.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use prym_core::checks::{run_selfcheck, SelfcheckOptions};
use prym_core::json::option_rational;
use prym_core::operator::BetaMode;
use prym_core::prym::{
    chow_class_closed, class_result, euler_oracle, euler_theorem, problem_suite, ClassKind,
    ClassPoly, Fault, Parity, PrymProblem,
};
use prym_core::series::BetaPoly;
use prym_core::{Rational, Scalar, ThetaPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFCHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ROUTE_MISMATCH: i32 = 3;

pub const MAX_TABLE_GENUS: u32 = 10;
pub const MAX_TABLE_LENGTH: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "prym",
    version,
    about = "Exact classes and Euler characteristics of pointed Prym-Brill-Noether loci"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cohomology (β = 0), Chern character of the K-class (β = -1) or connective class.
    Class(ClassArgs),
    /// Holomorphic Euler characteristic of the structure sheaf.
    Chi(ChiArgs),
    /// χ and the cohomology class for every problem in a range.
    Table(TableArgs),
    /// Run the invariant suite.
    Selfcheck(SelfcheckArgs),
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long)]
    pub genus: i64,
    #[arg(short = 'r', long = "rank", allow_hyphen_values = true)]
    pub r: i64,
    /// Vanishing orders a_0 < ... < a_r, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        required = true
    )]
    pub vanishing: Vec<i64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Plain,
    Json,
    Latex,
}

#[derive(Debug, Args)]
pub struct ClassArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// 0, -1 or symbolic.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub beta: BetaMode,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Debug, Args)]
pub struct ChiArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Also run the Chern-character route and fail on disagreement.
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 2)]
    pub g_min: u32,
    #[arg(long, default_value_t = 6)]
    pub g_max: u32,
    #[arg(long, default_value_t = 3)]
    pub max_len: usize,
    #[arg(long)]
    pub verify: bool,
    #[arg(long, value_enum, default_value_t)]
    pub output: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InjectedFault {
    GSign,
}

#[derive(Debug, Args)]
pub struct SelfcheckArgs {
    /// Only genera up to 4 and smaller random samples.
    #[arg(long)]
    pub quick: bool,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<InjectedFault>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ResultKind {
    #[serde(rename = "cohomology")]
    Cohomology,
    #[serde(rename = "chern_character_K")]
    ChernCharacterK,
    #[serde(rename = "connective")]
    Connective,
    #[serde(rename = "euler_characteristic")]
    EulerCharacteristic,
}

impl From<ClassKind> for ResultKind {
    fn from(kind: ClassKind) -> Self {
        match kind {
            ClassKind::Cohomology => ResultKind::Cohomology,
            ClassKind::ChernCharacterK => ResultKind::ChernCharacterK,
            ClassKind::Connective => ResultKind::Connective,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemJson {
    pub g: u32,
    pub r: u32,
    pub a: Vec<u32>,
    pub lambda: Vec<u32>,
    pub parity: Parity,
    pub expected_empty: bool,
}

impl From<&PrymProblem> for ProblemJson {
    fn from(p: &PrymProblem) -> Self {
        Self {
            g: p.genus(),
            r: p.rank(),
            a: p.vanishing().to_vec(),
            lambda: p.lambda().to_vec(),
            parity: p.parity(),
            expected_empty: p.expected_empty(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultJson {
    pub kind: ResultKind,
    #[serde(with = "option_rational")]
    pub gamma: Option<Rational>,
    pub exponent: Option<u32>,
    pub theta_poly: Option<ClassPoly>,
    pub xi_poly: Option<ClassPoly>,
    #[serde(with = "option_rational")]
    pub chi: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub beta: BetaMode,
    pub normalization: String,
    pub convention_flags: Vec<String>,
    pub versions: BTreeMap<String, String>,
}

/// One computed problem, as emitted by `--output json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub problem: ProblemJson,
    pub result: ResultJson,
    pub meta: Meta,
}

fn meta(beta: BetaMode, flags: &[&str]) -> Meta {
    Meta {
        beta,
        normalization: "theta' = 2 xi".into(),
        convention_flags: flags.iter().map(|s| s.to_string()).collect(),
        versions: BTreeMap::from([
            (
                "prym-cli".to_string(),
                env!("CARGO_PKG_VERSION").to_string(),
            ),
            ("prym-core".to_string(), prym_core::VERSION.to_string()),
        ]),
    }
}

/// A request the CLI could not honor; rendered as one line on stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Self {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }
}

pub fn parse_problem(args: &ProblemArgs) -> Result<PrymProblem, Failure> {
    PrymProblem::new(args.genus, args.r, &args.vanishing).map_err(Failure::invalid)
}

pub fn class_report(problem: &PrymProblem, beta: BetaMode) -> Report {
    let result = class_result(problem, beta);
    let xi = result.xi_poly();
    let flags: Vec<&str> = result.convention_flags.clone();
    Report {
        problem: problem.into(),
        result: ResultJson {
            kind: result.kind.into(),
            gamma: result.gamma,
            exponent: result.exponent,
            theta_poly: Some(result.theta_poly),
            xi_poly: Some(xi),
            chi: None,
        },
        meta: meta(beta, &flags),
    }
}

/// χ by the summation formula; with `verify`, cross-checked against the
/// Chern-character route.
pub fn chi_report(problem: &PrymProblem, verify: bool) -> Result<Report, Failure> {
    let chi = euler_theorem(problem);
    let mut flags = vec!["parity_sign_cancelled"];
    if verify {
        let oracle = euler_oracle(problem);
        if oracle != chi {
            return Err(Failure {
                code: EXIT_ROUTE_MISMATCH,
                message: format!(
                    "route mismatch for g={} a={:?}: summation formula {chi}, Chern character {oracle}",
                    problem.genus(),
                    problem.vanishing()
                ),
            });
        }
        flags.push("verified_by_chern_character");
    }
    Ok(Report {
        problem: problem.into(),
        result: ResultJson {
            kind: ResultKind::EulerCharacteristic,
            gamma: Some(chow_class_closed(problem.lambda())),
            exponent: Some(problem.size()),
            theta_poly: None,
            xi_poly: None,
            chi: Some(chi),
        },
        meta: meta(BetaMode::MinusOne, &flags),
    })
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn describe(p: &ProblemJson) -> String {
    format!(
        "g={} r={} a=({}) lambda=({}) parity={} dim={}{}",
        p.g,
        p.r,
        join(&p.a),
        join(&p.lambda),
        p.parity.symbol(),
        p.g - 1,
        if p.expected_empty {
            " expected_empty"
        } else {
            ""
        }
    )
}

fn coeff_list<C: ToString>(coeffs: &[C]) -> String {
    let parts: Vec<String> = coeffs.iter().map(C::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn poly_list(poly: &ClassPoly) -> String {
    match poly {
        ClassPoly::Rational(p) => coeff_list(p.coeffs()),
        ClassPoly::Beta(p) => coeff_list(p.coeffs()),
    }
}

pub fn render_plain(report: &Report) -> String {
    let mut out = String::new();
    let r = &report.result;
    writeln!(out, "problem  {}", describe(&report.problem)).unwrap();
    if let Some(chi) = &r.chi {
        writeln!(out, "chi      {chi}").unwrap();
        return out;
    }
    writeln!(out, "kind     {}", kind_label(r.kind)).unwrap();
    writeln!(out, "beta     {}", report.meta.beta).unwrap();
    if let (Some(gamma), Some(e)) = (&r.gamma, r.exponent) {
        writeln!(out, "gamma    {gamma}").unwrap();
        writeln!(out, "exponent {e}").unwrap();
    }
    if let Some(p) = &r.theta_poly {
        writeln!(out, "theta'   {}", poly_list(p)).unwrap();
    }
    if let Some(p) = &r.xi_poly {
        writeln!(out, "xi       {}", poly_list(p)).unwrap();
    }
    if report
        .meta
        .convention_flags
        .iter()
        .any(|f| f == "engine_convention")
    {
        writeln!(out, "note     symbolic beta follows the engine convention").unwrap();
    }
    out
}

fn kind_label(kind: ResultKind) -> &'static str {
    match kind {
        ResultKind::Cohomology => "cohomology",
        ResultKind::ChernCharacterK => "chern_character_K",
        ResultKind::Connective => "connective",
        ResultKind::EulerCharacteristic => "euler_characteristic",
    }
}

/// `\frac{p}{q}` with the sign pulled out; integers stay plain.
pub fn latex_rational(q: &Rational) -> String {
    let sign = if q < &Rational::zero() { "-" } else { "" };
    let (n, d) = (q.numer().magnitude(), q.denom().magnitude());
    if d.is_one() {
        format!("{sign}{n}")
    } else {
        format!("{sign}\\frac{{{n}}}{{{d}}}")
    }
}

fn latex_beta(p: &BetaPoly) -> String {
    let mut out = String::new();
    for (k, c) in p.terms() {
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        let body = match (k, mag.is_one()) {
            (0, _) => latex_rational(&mag),
            (_, true) => beta_power(k),
            (_, false) => format!("{}{}", latex_rational(&mag), beta_power(k)),
        };
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn beta_power(k: u32) -> String {
    if k == 1 {
        "\\beta".into()
    } else {
        format!("\\beta^{{{k}}}")
    }
}

fn xi_power(e: usize) -> String {
    format!("(2\\xi)^{{{e}}}")
}

/// `γ (2ξ)^e`, the form used for cohomology classes.
pub fn latex_monomial(gamma: &Rational, e: u32) -> String {
    if gamma.is_zero() {
        return "0".into();
    }
    if e == 0 {
        return latex_rational(gamma);
    }
    let coeff = match latex_rational(gamma).as_str() {
        "1" => String::new(),
        "-1" => "-".into(),
        s => s.to_string(),
    };
    format!("{coeff}{}", xi_power(e as usize))
}

fn latex_theta_poly(p: &ThetaPoly) -> String {
    latex_terms(p.coeffs(), |c| {
        let neg = c < &Rational::zero();
        (
            neg,
            latex_rational(&if neg { -c.clone() } else { c.clone() }),
            c.abs_is_one(),
        )
    })
}

trait AbsOne {
    fn abs_is_one(&self) -> bool;
}

impl AbsOne for Rational {
    fn abs_is_one(&self) -> bool {
        self.is_one() || (-self.clone()).is_one()
    }
}

fn latex_terms<C: Scalar>(coeffs: &[C], render: impl Fn(&C) -> (bool, String, bool)) -> String {
    let mut out = String::new();
    for (e, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (neg, body, unit) = render(c);
        let term = match (e, unit) {
            (0, _) => body,
            (_, true) => xi_power(e),
            (_, false) => format!("{body}{}", xi_power(e)),
        };
        out.push_str(match (out.is_empty(), neg) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn render_latex(report: &Report) -> String {
    let r = &report.result;
    if let Some(chi) = &r.chi {
        return format!("{}\n", latex_rational(chi));
    }
    let body = match (&r.gamma, r.exponent, &r.theta_poly) {
        (Some(gamma), Some(e), Some(ClassPoly::Rational(p))) if !p.is_zero() => {
            latex_monomial(gamma, e)
        }
        (_, _, Some(ClassPoly::Rational(p))) => latex_theta_poly(p),
        (_, _, Some(ClassPoly::Beta(p))) => latex_terms(p.coeffs(), |c| {
            if c.terms().count() == 1 {
                let (k, x) = c.terms().next().expect("one term");
                let neg = x < &Rational::zero();
                let mag = BetaPoly::term(if neg { -x.clone() } else { x.clone() }, k);
                (neg, latex_beta(&mag), mag.is_one())
            } else {
                (false, format!("\\left({}\\right)", latex_beta(c)), false)
            }
        }),
        _ => "0".into(),
    };
    format!("{body}\n")
}

fn render(report: &Report, format: OutputFormat) -> String {
    match format {
        OutputFormat::Plain => render_plain(report),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Latex => render_latex(report),
    }
}

pub fn table_reports(args: &TableArgs) -> Result<Vec<Report>, Failure> {
    if args.g_min < 2 || args.g_min > args.g_max {
        return Err(Failure::invalid(format!(
            "table genus range must satisfy 2 <= g-min <= g-max, got {}..{}",
            args.g_min, args.g_max
        )));
    }
    if args.g_max > MAX_TABLE_GENUS {
        return Err(Failure::invalid(format!(
            "g-max exceeds {MAX_TABLE_GENUS} (g-max = {})",
            args.g_max
        )));
    }
    if args.max_len > MAX_TABLE_LENGTH {
        return Err(Failure::invalid(format!(
            "max-len exceeds {MAX_TABLE_LENGTH} (max-len = {})",
            args.max_len
        )));
    }
    problem_suite(args.g_min..=args.g_max, args.max_len)
        .par_iter()
        .map(|p| chi_report(p, args.verify))
        .collect()
}

fn render_table(reports: &[Report], format: OutputFormat) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Plain => {
            writeln!(
                out,
                "{:>3} {:<18} {:<14} {:>12} {:>6}",
                "g", "a", "lambda", "gamma", "chi"
            )
            .unwrap();
            for r in reports {
                writeln!(
                    out,
                    "{:>3} {:<18} {:<14} {:>12} {:>6}",
                    r.problem.g,
                    format!("({})", join(&r.problem.a)),
                    format!("({})", join(&r.problem.lambda)),
                    r.result
                        .gamma
                        .as_ref()
                        .expect("chi reports carry gamma")
                        .to_string(),
                    r.result
                        .chi
                        .as_ref()
                        .expect("chi reports carry chi")
                        .to_string()
                )
                .unwrap();
            }
        }
        OutputFormat::Json => {
            out = serde_json::to_string_pretty(reports).expect("reports serialize");
            out.push('\n');
        }
        OutputFormat::Latex => {
            out.push_str("\\begin{tabular}{rllll}\n");
            out.push_str("$g$ & $a$ & $\\lambda$ & class & $\\chi$ \\\\\n\\hline\n");
            for r in reports {
                let gamma = r.result.gamma.as_ref().expect("chi reports carry gamma");
                writeln!(
                    out,
                    "{} & $({})$ & $({})$ & ${}$ & ${}$ \\\\",
                    r.problem.g,
                    join(&r.problem.a),
                    join(&r.problem.lambda),
                    latex_monomial(gamma, r.result.exponent.unwrap_or(0)),
                    latex_rational(r.result.chi.as_ref().expect("chi reports carry chi"))
                )
                .unwrap();
            }
            out.push_str("\\end{tabular}\n");
        }
    }
    out
}

/// Executes a parsed command, returning its standard output and exit code.
pub fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    let text = match &cli.command {
        Command::Class(args) => {
            let problem = parse_problem(&args.problem)?;
            render(&class_report(&problem, args.beta), args.output)
        }
        Command::Chi(args) => {
            let problem = parse_problem(&args.problem)?;
            render(&chi_report(&problem, args.verify)?, args.output)
        }
        Command::Table(args) => render_table(&table_reports(args)?, args.output),
        Command::Selfcheck(args) => {
            let reports = run_selfcheck(SelfcheckOptions {
                quick: args.quick,
                fault: args
                    .inject_fault
                    .map(|InjectedFault::GSign| Fault::GCoeffSignFlip),
            });
            let mut text = String::new();
            for r in &reports {
                writeln!(text, "{r}").unwrap();
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            if failed == 0 {
                writeln!(text, "selfcheck: PASS ({} checks)", reports.len()).unwrap();
            } else {
                writeln!(
                    text,
                    "selfcheck: FAIL ({failed} of {} checks)",
                    reports.len()
                )
                .unwrap();
            }
            let code = if failed == 0 {
                EXIT_OK
            } else {
                EXIT_SELFCHECK_FAILED
            };
            return Ok((text, code));
        }
    };
    Ok((text, EXIT_OK))
}

/// Reads `PRYM_THREADS` (0 or unset means one thread per core).
pub fn thread_count(var: Option<&str>) -> Result<usize, Failure> {
    match var.map(str::trim) {
        None | Some("") => Ok(0),
        Some(s) => s.parse().map_err(|_| {
            Failure::invalid(format!(
                "PRYM_THREADS must be a nonnegative integer, got {s:?}"
            ))
        }),
    }
}

/// Full entry point: parses `args`, runs on a pool of `threads` workers and
/// reports diagnostics on `err`.
pub fn run<I, T>(args: I, threads: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let outcome = thread_count(threads).and_then(|n| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::invalid(format!("cannot start worker pool: {e}")))?;
        pool.install(|| execute(&cli))
    });
    match outcome {
        Ok((text, code)) => match out.write_all(text.as_bytes()) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write output: {e}");
                EXIT_SELFCHECK_FAILED
            }
        },
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
