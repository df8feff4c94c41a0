//! Command-line surface: analyze, sweep, verify, render, reproduce.
//!
//! Rationals are written `num/den` or as plain integers; decimal floats are
//! rejected so boundary values stay exact. Every flag can also come from a
//! `--config` file of `key=value` lines, with explicit flags winning.
//!
//! Exit codes: 0 success, 1 invalid input, 2 resource limit, 3 reproduction
//! mismatch. Failures print a machine-readable JSON object on stderr.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::algebra::{fmt_rational, parse_rational, rat, QuadraticPoly, Rational};
use crate::connectivity::{
    check_disconnection_bound, check_gap_criterion, decide_with, sweep, BoundVerdict,
    ConnectivityReport, DecideOptions, GapCriterion, Verdict,
};
use crate::error::{Error, Result};
use crate::neighbors::{DigitSystem, LatticePoint};
use crate::radix::{self, RadixExpansion};
use crate::render::{default_depth, enumerate_points, pgm_bytes, rasterize, RenderConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID_INPUT: i32 = 1;
pub const EXIT_RESOURCE_LIMIT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "tilecon",
    about = "Exact connectedness decisions for planar self-affine sets with collinear digits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide connectedness and print a JSON report
    Analyze(AnalyzeArgs),
    /// Decide D = {0, 1, b} over sampled b values; CSV output
    Sweep(SweepArgs),
    /// Evaluate a radix expansion and compare against a target point
    Verify(VerifyArgs),
    /// Enumerate the attractor and write a PGM image
    Render(RenderArgs),
    /// Run a canned verification table and report pass/fail per row
    Reproduce(ReproduceArgs),
}

#[derive(Args, Debug, Default)]
struct AnalyzeArgs {
    #[arg(short, long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(short, long, allow_hyphen_values = true)]
    q: Option<i64>,
    /// Digit coefficients, e.g. 0,1,8/5
    #[arg(long, allow_hyphen_values = true)]
    digits: Option<String>,
    /// Terms summed explicitly in the tail bounds
    #[arg(short, long)]
    n: Option<usize>,
    #[arg(long)]
    state_limit: Option<usize>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct SweepArgs {
    #[arg(short, long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(short, long, allow_hyphen_values = true)]
    q: Option<i64>,
    #[arg(long)]
    b_from: Option<String>,
    #[arg(long)]
    b_to: Option<String>,
    #[arg(long)]
    step: Option<String>,
    /// Explicit comma-separated b samples (overrides the range)
    #[arg(long, allow_hyphen_values = true)]
    b_values: Option<String>,
    #[arg(short, long)]
    n: Option<usize>,
    #[arg(long)]
    state_limit: Option<usize>,
    /// Worker threads for the sweep
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct VerifyArgs {
    #[arg(short, long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(short, long, allow_hyphen_values = true)]
    q: Option<i64>,
    /// Expansion string, e.g. "0.(-2,-3)[3,-3,0]"
    #[arg(long, allow_hyphen_values = true)]
    expansion: Option<String>,
    /// Target point "gamma,delta"
    #[arg(long, allow_hyphen_values = true)]
    target: Option<String>,
    /// Digit coefficients; when given, fractional digits must come from D - D
    #[arg(long, allow_hyphen_values = true)]
    digits: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct RenderArgs {
    #[arg(short, long, allow_hyphen_values = true)]
    p: Option<i64>,
    #[arg(short, long, allow_hyphen_values = true)]
    q: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    digits: Option<String>,
    /// Expansion depth; default: smallest N with |D|^N >= 1e5
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    width: Option<u32>,
    #[arg(long)]
    height: Option<u32>,
    /// Bounding-box margin fraction
    #[arg(long)]
    margin: Option<f64>,
    /// Basis vector "x,y" embedding the coordinate plane
    #[arg(long, allow_hyphen_values = true)]
    basis: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReproduceArgs {
    /// One of: thm1_3, thm1_4, prop1_2, sec5
    table: String,
}

/// Parsed `key=value` configuration file. Keys match the long flag names
/// with dashes replaced by underscores.
struct ConfigFile {
    values: HashMap<String, String>,
}

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<Self> {
        let mut values = HashMap::new();
        if let Some(path) = path {
            let text = fs::read_to_string(path)?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let (key, value) = line.split_once('=').ok_or_else(|| {
                    Error::Parse(format!(
                        "config line {} is not key=value: {line:?}",
                        lineno + 1
                    ))
                })?;
                values.insert(
                    key.trim().replace('-', "_").to_string(),
                    value.trim().to_string(),
                );
            }
        }
        Ok(Self { values })
    }

    fn fill<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|_| Error::Parse(format!("config key {key} has bad value {raw:?}"))),
        }
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::InvalidInput(format!("missing required {what}")))
}

fn parse_digit_list(csv: &str) -> Result<Vec<Rational>> {
    csv.split(',').map(parse_rational).collect()
}

fn parse_point(text: &str) -> Result<LatticePoint> {
    let (g, d) = text
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("target {text:?} is not gamma,delta")))?;
    Ok(LatticePoint::new(parse_rational(g)?, parse_rational(d)?))
}

// --- JSON report schema (version 1) ---

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ReportJson {
    pub schema: u32,
    pub input: InputJson,
    pub verdict: String,
    pub e_graph: EGraphJson,
    pub is_tile: Option<bool>,
    pub p_zero_verdict: Option<String>,
    pub bounds: BoundsJson,
    pub certificates: CertificatesJson,
    pub states: usize,
    pub wall_ms: u64,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct InputJson {
    pub p: i64,
    pub q: i64,
    pub digits: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct EGraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct BoundsJson {
    pub alpha: String,
    pub beta: String,
    pub terms_used: usize,
    pub exact: bool,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct CertificatesJson {
    pub edges: Vec<EdgeCertJson>,
    pub non_edges: Vec<NonEdgeJson>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct EdgeCertJson {
    pub pair: [usize; 2],
    pub target: [String; 2],
    pub witness: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct NonEdgeJson {
    pub pair: [usize; 2],
    pub states_explored: usize,
}

impl From<&ConnectivityReport> for ReportJson {
    fn from(r: &ConnectivityReport) -> Self {
        ReportJson {
            schema: 1,
            input: InputJson {
                p: r.system.poly().p(),
                q: r.system.poly().q(),
                digits: r.system.digits().iter().map(fmt_rational).collect(),
            },
            verdict: r.verdict.to_string(),
            e_graph: EGraphJson {
                vertices: r.e_graph.vertices.iter().map(fmt_rational).collect(),
                edges: r.e_graph.edges.iter().map(|&(i, j)| [i, j]).collect(),
            },
            is_tile: r.is_tile,
            p_zero_verdict: r.p_zero_verdict.map(|v| v.to_string()),
            bounds: BoundsJson {
                alpha: fmt_rational(&r.bounds.alpha_bound),
                beta: fmt_rational(&r.bounds.beta_bound),
                terms_used: r.bounds.terms_used,
                exact: r.bounds.exact,
            },
            certificates: CertificatesJson {
                edges: r
                    .edge_certificates
                    .iter()
                    .map(|c| EdgeCertJson {
                        pair: [c.pair.0, c.pair.1],
                        target: [fmt_rational(&c.target.gamma), fmt_rational(&c.target.delta)],
                        witness: c.witness.to_string(),
                    })
                    .collect(),
                non_edges: r
                    .non_edge_refutations
                    .iter()
                    .map(|nr| NonEdgeJson {
                        pair: [nr.pair.0, nr.pair.1],
                        states_explored: nr.states_explored,
                    })
                    .collect(),
            },
            states: r.states,
            wall_ms: r.wall_ms,
        }
    }
}

pub fn report_to_json(report: &ConnectivityReport) -> String {
    let json: ReportJson = report.into();
    serde_json::to_string_pretty(&json).expect("report serialization cannot fail")
}

/// Format sweep results as CSV with a header row.
pub fn sweep_to_csv(items: &[crate::connectivity::SweepItem]) -> String {
    let mut out = String::from("b,numerator,denominator,verdict,states,ms\n");
    for item in items {
        let b = fmt_rational(&item.b);
        let (num, den) = (item.b.numer().to_string(), item.b.denom().to_string());
        match &item.outcome {
            Ok(summary) => {
                out.push_str(&format!(
                    "{b},{num},{den},{},{},{}\n",
                    summary.verdict, summary.states, summary.wall_ms
                ));
            }
            Err(_) => {
                out.push_str(&format!("{b},{num},{den},error,0,0\n"));
            }
        }
    }
    out
}

// --- command implementations ---

fn build_system(p: i64, q: i64, digits: Vec<Rational>) -> Result<DigitSystem> {
    let poly = QuadraticPoly::new(p, q)?;
    DigitSystem::new(poly, digits)
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<()> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let p = require(cfg.fill(args.p, "p")?, "-p")?;
    let q = require(cfg.fill(args.q, "q")?, "-q")?;
    let digits_csv = require(cfg.fill(args.digits, "digits")?, "--digits")?;
    let opts = DecideOptions {
        bound_terms: cfg
            .fill(args.n, "n")?
            .unwrap_or(crate::coords::DEFAULT_BOUND_TERMS),
        state_limit: cfg
            .fill(args.state_limit, "state_limit")?
            .unwrap_or(crate::neighbors::DEFAULT_STATE_LIMIT),
    };
    let out = cfg.fill(args.out, "out")?;

    let system = build_system(p, q, parse_digit_list(&digits_csv)?)?;
    let report = decide_with(&system, &opts)?;
    let text = report_to_json(&report);
    emit(out.as_deref(), &text)
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => {
            fs::write(path, text)?;
        }
        None if text.ends_with('\n') => {
            print!("{text}");
        }
        None => {
            println!("{text}");
        }
    }
    Ok(())
}

fn range_samples(from: &Rational, to: &Rational, step: &Rational) -> Result<Vec<Rational>> {
    use num_traits::Signed;
    if !step.is_positive() {
        return Err(Error::InvalidInput("--step must be positive".into()));
    }
    if to < from {
        return Err(Error::InvalidInput("--b-to must be >= --b-from".into()));
    }
    let mut values = Vec::new();
    let mut current = from.clone();
    while &current <= to {
        values.push(current.clone());
        current += step;
    }
    Ok(values)
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let p = require(cfg.fill(args.p, "p")?, "-p")?;
    let q = require(cfg.fill(args.q, "q")?, "-q")?;
    let opts = DecideOptions {
        bound_terms: cfg
            .fill(args.n, "n")?
            .unwrap_or(crate::coords::DEFAULT_BOUND_TERMS),
        state_limit: cfg
            .fill(args.state_limit, "state_limit")?
            .unwrap_or(crate::neighbors::DEFAULT_STATE_LIMIT),
    };
    let jobs = cfg.fill(args.jobs, "jobs")?.unwrap_or(1);
    let out = cfg.fill(args.out, "out")?;

    let b_values = match cfg.fill(args.b_values, "b_values")? {
        Some(csv) => parse_digit_list(&csv)?,
        None => {
            let from = parse_rational(&require(cfg.fill(args.b_from, "b_from")?, "--b-from")?)?;
            let to = parse_rational(&require(cfg.fill(args.b_to, "b_to")?, "--b-to")?)?;
            let step = parse_rational(&require(cfg.fill(args.step, "step")?, "--step")?)?;
            range_samples(&from, &to, &step)?
        }
    };
    for b in &b_values {
        if *b <= rat(1) {
            return Err(Error::InvalidInput(format!(
                "b must exceed 1, got {}",
                fmt_rational(b)
            )));
        }
    }

    let poly = QuadraticPoly::new(p, q)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    let items = pool.install(|| sweep(&poly, &b_values, &opts));
    // surface per-item failures on stderr without aborting the sweep
    for item in &items {
        if let Err(msg) = &item.outcome {
            eprintln!("# b = {}: {msg}", fmt_rational(&item.b));
        }
    }
    emit(out.as_deref(), &sweep_to_csv(&items))
}

fn cmd_verify(args: VerifyArgs) -> Result<()> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let p = require(cfg.fill(args.p, "p")?, "-p")?;
    let q = require(cfg.fill(args.q, "q")?, "-q")?;
    let expansion_text = require(cfg.fill(args.expansion, "expansion")?, "--expansion")?;
    let target_text = require(cfg.fill(args.target, "target")?, "--target")?;
    let digits = cfg.fill(args.digits, "digits")?;

    let poly = QuadraticPoly::new(p, q)?;
    let expansion: RadixExpansion = expansion_text.parse()?;
    let target = parse_point(&target_text)?;
    let value = radix::eval(&expansion, &poly);

    let verified = match digits {
        Some(csv) => {
            let system = build_system(p, q, parse_digit_list(&csv)?)?;
            radix::verify(&expansion, &target, &poly, &system.delta_digits())
        }
        None => value == target,
    };

    #[derive(Serialize)]
    struct VerifyJson {
        schema: u32,
        verified: bool,
        value: [String; 2],
        target: [String; 2],
    }
    let json = VerifyJson {
        schema: 1,
        verified,
        value: [fmt_rational(&value.gamma), fmt_rational(&value.delta)],
        target: [fmt_rational(&target.gamma), fmt_rational(&target.delta)],
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&json).expect("serialization cannot fail")
    );
    Ok(())
}

fn cmd_render(args: RenderArgs) -> Result<()> {
    let cfg = ConfigFile::load(args.config.as_deref())?;
    let p = require(cfg.fill(args.p, "p")?, "-p")?;
    let q = require(cfg.fill(args.q, "q")?, "-q")?;
    let digits_csv = require(cfg.fill(args.digits, "digits")?, "--digits")?;
    let out = require(cfg.fill(args.out, "out")?, "--out")?;

    let system = build_system(p, q, parse_digit_list(&digits_csv)?)?;
    let depth = cfg
        .fill(args.depth, "depth")?
        .unwrap_or_else(|| default_depth(system.digits().len()));
    let basis = match cfg.fill(args.basis, "basis")? {
        Some(text) => {
            let pt = parse_point(&text)?;
            (pt.gamma, pt.delta)
        }
        None => (rat(1), rat(0)),
    };
    let config = RenderConfig {
        depth,
        width: cfg.fill(args.width, "width")?.unwrap_or(800),
        height: cfg.fill(args.height, "height")?.unwrap_or(800),
        basis_vector: basis,
        margin: cfg.fill(args.margin, "margin")?.unwrap_or(0.05),
    };

    let cloud = enumerate_points(&system, depth)?;
    let image = rasterize(&cloud, &config)?;
    fs::write(&out, pgm_bytes(&image))?;
    Ok(())
}

// --- reproduction tables ---

struct TableRow {
    label: String,
    expected: String,
    got: String,
}

impl TableRow {
    fn passed(&self) -> bool {
        self.expected == self.got
    }
}

fn print_table(name: &str, rows: &[TableRow]) -> Result<()> {
    let mut failures = 0;
    for row in rows {
        let status = if row.passed() { "PASS" } else { "FAIL" };
        if !row.passed() {
            failures += 1;
        }
        println!(
            "{status}  {name}  {}  expected={}  got={}",
            row.label, row.expected, row.got
        );
    }
    println!(
        "{name}: {}/{} rows match",
        rows.len() - failures,
        rows.len()
    );
    if failures > 0 {
        Err(Error::InvalidInput(format!(
            "{failures} rows of {name} mismatched"
        )))
    } else {
        Ok(())
    }
}

const TEN_POLYNOMIALS: [(i64, i64); 10] = [
    (0, 3),
    (0, -3),
    (1, 3),
    (-1, 3),
    (2, 3),
    (-2, 3),
    (3, 3),
    (-3, 3),
    (1, -3),
    (-1, -3),
];

fn expected_integer_table(p: i64, q: i64, m: i64) -> Verdict {
    match m {
        2 => Verdict::Connected,
        3 => match (p.abs(), q) {
            (2, 3) | (3, 3) | (1, -3) => Verdict::Connected,
            _ => Verdict::Disconnected,
        },
        _ => Verdict::Disconnected,
    }
}

fn decide_verdict(p: i64, q: i64, digits: Vec<Rational>) -> Result<Verdict> {
    let system = build_system(p, q, digits)?;
    Ok(decide_with(&system, &DecideOptions::default())?.verdict)
}

fn reproduce_integer_table() -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    for (p, q) in TEN_POLYNOMIALS {
        for m in 2..=6i64 {
            let got = decide_verdict(p, q, vec![rat(0), rat(1), rat(m)])?;
            rows.push(TableRow {
                label: format!("p={p} q={q} m={m}"),
                expected: expected_integer_table(p, q, m).to_string(),
                got: got.to_string(),
            });
        }
    }
    Ok(rows)
}

fn reproduce_interval_table() -> Result<Vec<TableRow>> {
    let cases = [
        ("13/10", Verdict::Disconnected),
        ("8/5", Verdict::Connected),
        ("2", Verdict::Connected),
        ("8/3", Verdict::Connected),
        ("9/2", Verdict::Disconnected),
    ];
    let mut rows = Vec::new();
    for (b_text, expected) in cases {
        let b = parse_rational(b_text)?;
        let got = decide_verdict(-1, -3, vec![rat(0), rat(1), b])?;
        rows.push(TableRow {
            label: format!("b={b_text}"),
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }
    Ok(rows)
}

/// Three samples inside each proven disconnection region of the four
/// three-digit families; the decision procedure must agree everywhere.
fn reproduce_bound_table() -> Result<Vec<TableRow>> {
    let samples: [(i64, i64, [&str; 6]); 4] = [
        (1, 3, ["67/25", "3", "4", "67/42", "3/2", "7/5"]),
        (2, 3, ["37/10", "4", "5", "37/27", "13/10", "5/4"]),
        (3, 3, ["33/10", "7/2", "4", "33/23", "7/5", "13/10"]),
        (1, -3, ["4", "9/2", "5", "13/10", "5/4", "6/5"]),
    ];
    let mut rows = Vec::new();
    for (p, q, bs) in samples {
        let poly = QuadraticPoly::new(p, q)?;
        for b_text in bs {
            let b = parse_rational(b_text)?;
            let bound = check_disconnection_bound(&poly, &b)?;
            let got = decide_verdict(p, q, vec![rat(0), rat(1), b])?;
            let agreed = bound == BoundVerdict::DisconnectedByBound && got == Verdict::Disconnected;
            rows.push(TableRow {
                label: format!("p={p} q={q} b={b_text}"),
                expected: "bound+automaton agree: disconnected".into(),
                got: if agreed {
                    "bound+automaton agree: disconnected".into()
                } else {
                    format!("bound={bound:?} decide={got}")
                },
            });
        }
    }
    Ok(rows)
}

fn reproduce_gap_table() -> Result<Vec<TableRow>> {
    let mut rows = Vec::new();
    let examples: [(i64, i64, &[i64], &str); 2] = [
        (5, 6, &[0, 1, 2, 4, 6, 8], "plus-q certificates"),
        (4, -6, &[0, 1, 3, 5, 7, 9], "minus-q certificates"),
    ];
    for (p, q, digits, family) in examples {
        let poly = QuadraticPoly::new(p, q)?;
        let got_verdict = decide_verdict(p, q, digits.iter().map(|&d| rat(d)).collect())?;
        let criterion = check_gap_criterion(&poly, digits);
        let criterion_text = match &criterion {
            GapCriterion::ConnectedPlusQ(c) => {
                format!("plus-q certificates ({} verified)", c.len())
            }
            GapCriterion::ConnectedMinusQ(c) => {
                format!("minus-q certificates ({} verified)", c.len())
            }
            GapCriterion::Inconclusive(r) => format!("inconclusive: {r:?}"),
        };
        rows.push(TableRow {
            label: format!("p={p} q={q} digits={digits:?} verdict"),
            expected: "connected".into(),
            got: got_verdict.to_string(),
        });
        rows.push(TableRow {
            label: format!("p={p} q={q} digits={digits:?} criterion"),
            expected: format!("{family} (3 verified)"),
            got: criterion_text,
        });
    }
    Ok(rows)
}

fn cmd_reproduce(args: ReproduceArgs) -> Result<()> {
    let rows = match args.table.as_str() {
        "thm1_3" => reproduce_integer_table()?,
        "thm1_4" => reproduce_bound_table()?,
        "prop1_2" => reproduce_interval_table()?,
        "sec5" => reproduce_gap_table()?,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown table {other:?}; expected thm1_3, thm1_4, prop1_2, or sec5"
            )))
        }
    };
    match print_table(&args.table, &rows) {
        Ok(()) => Ok(()),
        Err(e) => Err(Error::Mismatch(e.to_string())),
    }
}

// --- dispatch ---

fn error_json(err: &Error) -> String {
    let kind = match err {
        Error::StateLimit { .. } => "resource-limit",
        Error::Mismatch(_) => "mismatch",
        Error::Io(_) => "io",
        Error::NoContraction { .. } => "internal",
        _ => "invalid-input",
    };
    serde_json::json!({ "error": { "kind": kind, "message": err.to_string() } }).to_string()
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::StateLimit { .. } => EXIT_RESOURCE_LIMIT,
        Error::Mismatch(_) => EXIT_MISMATCH,
        _ => EXIT_INVALID_INPUT,
    }
}

/// Run the CLI on the given argument vector, returning the process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with its own formatting
            let code = if e.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Render(args) => cmd_render(args),
        Command::Reproduce(args) => cmd_reproduce(args),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(err) => {
            let mut stderr = std::io::stderr();
            let _ = writeln!(stderr, "{}", error_json(&err));
            exit_code_for(&err)
        }
    }
}
