//! Command-line front end: parsing, certificate checking, certificate search
//! and corpus verification.
//!
//! Every command writes a report whose first line is
//! `VERDICT <accepted|rejected|unknown>`, followed by indented detail lines.
//! Timing is kept out of the report and goes to stderr.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use polyterm::corpus;
use polyterm::interp::criteria::difference_poly;
use polyterm::interp::{
    format_certificate, parse_certificate, CheckReport, Certificate, Checked, Interp, InterpError, Overall, Site,
};
use polyterm::numeric::{DomainKind, Rat, Scalar};
use polyterm::poly::Var;
use polyterm::positivity::Verdict;
use polyterm::prover::{
    exhaustion_report, search_direct, search_incremental, IncrementalOutcome, Outcome, ProverError, SearchConfig,
};
use polyterm::trs::{format_trs, parse_trs, Trs, TrsError};

/// Class of a command's result; fixes the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Certificate accepted or found.
    Accepted,
    /// Certificate rejected, or none within the bounds.
    Rejected,
    /// Undecided condition or exhausted budget.
    Unknown,
    /// Usage, I/O or input format error.
    Error,
    /// Help, listings and other output without a verdict.
    Info,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Accepted | Status::Info => 0,
            Status::Rejected => 1,
            Status::Unknown => 2,
            Status::Error => 3,
        }
    }

    fn of(o: Overall) -> Status {
        match o {
            Overall::Accepted => Status::Accepted,
            Overall::Rejected => Status::Rejected,
            Overall::Unknown => Status::Unknown,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Accepted => "accepted",
            Status::Rejected => "rejected",
            Status::Unknown | Status::Error | Status::Info => "unknown",
        }
    }
}

/// Everything a run produced.
#[derive(Debug, Clone)]
pub struct CliReport {
    /// The arguments as given, program name first.
    pub command: Vec<String>,
    pub status: Status,
    pub stdout: String,
    pub stderr: String,
    pub elapsed: Duration,
}

impl CliReport {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Trs { path: PathBuf, source: TrsError },
    #[error("{path}: {source}")]
    Cert { path: PathBuf, source: polyterm::interp::cert::CertError },
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error(transparent)]
    Prover(#[from] ProverError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "polyterm", version, about = "Polynomial interpretations for term rewriting termination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a rewrite system and print it back.
    Parse { file: PathBuf },
    /// Verify a direct or rule-removal certificate.
    Check {
        #[arg(long)]
        trs: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        /// Check against these rules only (1-based, comma separated).
        #[arg(long, value_delimiter = ',')]
        rules: Vec<usize>,
    },
    /// Search for a certificate within bounded coefficient grids.
    Prove(ProveArgs),
    /// The bundled example systems and certificates.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Debug, Subcommand)]
enum CorpusAction {
    /// Check every bundled certificate against its expected verdict.
    Verify,
    /// List the bundled systems.
    List,
    /// Print a bundled file.
    Show { name: String },
}

#[derive(Debug, Args)]
struct ProveArgs {
    #[arg(long)]
    trs: PathBuf,
    /// N, Q or R.
    #[arg(long)]
    domain: DomainKind,
    /// Search for a rule-removal proof.
    #[arg(long)]
    incremental: bool,
    #[arg(long, default_value_t = 2)]
    max_degree: u32,
    /// Per-symbol degree limits, e.g. `f=2,h=1`.
    #[arg(long, value_delimiter = ',', value_parser = parse_degree)]
    degree: Vec<(String, u32)>,
    /// Largest absolute coefficient numerator.
    #[arg(long, default_value_t = 2)]
    max_coeff: i64,
    /// Coefficient denominators over Q and R.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    denoms: Vec<i64>,
    /// Margins to try over Q and R, in order.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    delta: Vec<Rat>,
    /// Radicand for coefficients `a + b*sqrt(d)` over R.
    #[arg(long)]
    sqrt: Option<u64>,
    /// Time limit in seconds.
    #[arg(long)]
    budget: Option<f64>,
    /// Cap on visited partial assignments.
    #[arg(long)]
    max_nodes: Option<u64>,
    /// Cap on the number of removal steps.
    #[arg(long, default_value_t = 4)]
    max_steps: usize,
    /// Write the certificate here instead of printing it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Enumerate the whole space and count certificates.
    #[arg(long)]
    exhaust: bool,
    /// Disable pruning (same results, slower).
    #[arg(long)]
    no_prune: bool,
}

fn parse_degree(s: &str) -> Result<(String, u32), String> {
    let (f, d) = s.split_once('=').ok_or_else(|| format!("expected SYMBOL=DEGREE, got `{s}`"))?;
    let d = d.trim().parse().map_err(|_| format!("bad degree in `{s}`"))?;
    Ok((f.trim().to_string(), d))
}

/// Runs one command line, program name first.
pub fn run_cli<I, T>(argv: I) -> CliReport
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let command = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let (status, stdout, stderr) = match Cli::try_parse_from(&args) {
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (Status::Info, e.render().to_string(), String::new()),
            _ => (Status::Error, String::new(), e.render().to_string()),
        },
        Ok(cli) => match dispatch(cli.command) {
            Ok((status, out)) => (status, out, String::new()),
            Err(e) => (Status::Error, String::new(), format!("error: {e}\n")),
        },
    };
    CliReport { command, status, stdout, stderr, elapsed: start.elapsed() }
}

fn dispatch(command: Command) -> Result<(Status, String), CliError> {
    match command {
        Command::Parse { file } => parse_cmd(&file),
        Command::Check { trs, cert, rules } => check_cmd(&trs, &cert, &rules),
        Command::Prove(args) => prove_cmd(&args),
        Command::Corpus { action } => corpus_cmd(action),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn load_trs(path: &Path) -> Result<Trs, CliError> {
    parse_trs(&read(path)?).map_err(|source| CliError::Trs { path: path.to_path_buf(), source })
}

fn verdict_line(status: Status) -> String {
    format!("VERDICT {}\n", status.label())
}

fn parse_cmd(file: &Path) -> Result<(Status, String), CliError> {
    let trs = load_trs(file)?;
    let mut out = verdict_line(Status::Accepted);
    let sig: Vec<String> = trs.signature().iter().map(|f| format!("{}/{}", f.name, f.arity)).collect();
    writeln!(out, "  RULES {}", trs.len()).unwrap();
    writeln!(out, "  SIGNATURE {}", sig.join(" ")).unwrap();
    writeln!(out, "{}", format_trs(&trs)).unwrap();
    Ok((Status::Accepted, out))
}

fn restrict(trs: &Trs, rules: &[usize]) -> Result<Trs, CliError> {
    if rules.is_empty() {
        return Ok(trs.clone());
    }
    if let Some(&bad) = rules.iter().find(|&&i| i == 0 || i > trs.len()) {
        return Err(CliError::Usage(format!("rule {bad} out of range 1..={}", trs.len())));
    }
    let keep: BTreeSet<usize> = rules.iter().map(|i| i - 1).collect();
    let drop: BTreeSet<usize> = (0..trs.len()).filter(|i| !keep.contains(i)).collect();
    Ok(trs.without(&drop))
}

fn check_cmd(trs_path: &Path, cert_path: &Path, rules: &[usize]) -> Result<(Status, String), CliError> {
    let trs = restrict(&load_trs(trs_path)?, rules)?;
    let cert = parse_certificate(&read(cert_path)?)
        .map_err(|source| CliError::Cert { path: cert_path.to_path_buf(), source })?;
    let checked = cert.check(&trs)?;
    let status = Status::of(checked.overall());
    let mut out = verdict_line(status);
    match (&cert, &checked) {
        (Certificate::Direct(interp), Checked::Direct(report)) => render_report(&mut out, interp, report, "  "),
        (Certificate::Incremental(proof), Checked::Incremental(report)) => {
            for (step, sr) in proof.steps.iter().zip(&report.steps) {
                let removed: Vec<String> = sr.removed.iter().map(usize::to_string).collect();
                let how = if sr.direct { " DIRECT" } else { "" };
                writeln!(out, "  STEP {} REMOVE {}{how}", sr.step, removed.join(" ")).unwrap();
                render_report(&mut out, &step.interp, &sr.report, "    ");
            }
            writeln!(out, "  REMAINING {}", report.remaining.len()).unwrap();
        }
        _ => unreachable!("check returns the report kind of its certificate"),
    }
    if let Some(site) = checked.failure_site() {
        writeln!(out, "  SITE {site}").unwrap();
    }
    Ok((status, out))
}

fn render_report(out: &mut String, interp: &Interp, report: &CheckReport, indent: &str) {
    writeln!(out, "{indent}{}", report.domain).unwrap();
    for s in &report.symbols {
        let poly = interp.get(&s.name).map(|si| si.poly.to_string()).unwrap_or_default();
        writeln!(out, "{indent}SYMBOL {} = {poly}", s.name).unwrap();
        writeln!(out, "{indent}  well-defined {}", s.well_defined.label()).unwrap();
        for (i, v) in s.strict.iter().enumerate() {
            writeln!(out, "{indent}  strict-monotone {} {}", i + 1, v.label()).unwrap();
        }
        for (i, v) in s.weak.iter().flatten().enumerate() {
            writeln!(out, "{indent}  weak-monotone {} {}", i + 1, v.label()).unwrap();
        }
    }
    for r in &report.rules {
        for c in r.strict.iter().chain(&r.weak) {
            writeln!(out, "{indent}RULE {} {} {}", r.index, c.kind.label(), c.verdict.label()).unwrap();
        }
    }
    for (site, verdict) in report.conditions() {
        if verdict.is_proved() {
            continue;
        }
        writeln!(out, "{indent}FAIL {site}").unwrap();
        let detail = format!("{indent}  ");
        match &site {
            Site::WellDefined { symbol } => {
                if let Some(si) = interp.get(symbol) {
                    writeln!(out, "{detail}{} >= 0", si.poly).unwrap();
                }
            }
            Site::Monotone { symbol, arg, kind } => {
                if let Some(si) = interp.get(symbol) {
                    let x = polyterm::interp::param(*arg);
                    let diff = difference_poly(&si.poly, &x, &report.domain, *kind);
                    writeln!(out, "{detail}{diff} >= 0").unwrap();
                }
            }
            Site::Rule { index, kind } => {
                if let Some(r) = report.rule(*index) {
                    writeln!(out, "{detail}{}", r.rule).unwrap();
                    if let Some(c) = r.strict.iter().chain(&r.weak).find(|c| c.kind == *kind) {
                        writeln!(out, "{detail}{}", c.inequality()).unwrap();
                    }
                }
            }
        }
        match verdict {
            Verdict::Disproved { witness, value } => {
                writeln!(out, "{detail}witness {} value {value}", render_point(witness)).unwrap();
            }
            _ => writeln!(out, "{detail}undecided").unwrap(),
        }
    }
}

fn render_point(point: &BTreeMap<Var, Scalar>) -> String {
    if point.is_empty() {
        return "(none)".to_string();
    }
    point.iter().map(|(v, s)| format!("{v}={s}")).collect::<Vec<_>>().join(" ")
}

fn search_config(a: &ProveArgs) -> SearchConfig {
    let mut cfg = SearchConfig {
        max_degree: a.max_degree,
        degrees: a.degree.iter().cloned().collect(),
        max_coeff: a.max_coeff,
        denominators: a.denoms.clone(),
        deltas: a.delta.clone(),
        sqrt: a.sqrt,
        time_limit: a.budget.map(Duration::from_secs_f64),
        max_steps: a.max_steps,
        prune: !a.no_prune,
        ..SearchConfig::default()
    };
    if let Some(n) = a.max_nodes {
        cfg.max_nodes = n;
    }
    cfg
}

fn prove_cmd(a: &ProveArgs) -> Result<(Status, String), CliError> {
    if a.budget.is_some_and(|b| !(b.is_finite() && b > 0.0)) {
        return Err(CliError::Usage("--budget must be a positive number of seconds".into()));
    }
    let trs = load_trs(&a.trs)?;
    let cfg = search_config(a);
    let bounds = cfg.describe(a.domain);
    if a.exhaust {
        let report = exhaustion_report(&trs, a.domain, &cfg, a.incremental)?;
        let status = if report.certificates > 0 {
            Status::Accepted
        } else if report.is_exhaustive() {
            Status::Rejected
        } else {
            Status::Unknown
        };
        let mut out = verdict_line(status);
        for line in report.to_string().lines() {
            writeln!(out, "  {line}").unwrap();
        }
        if let Some(i) = &report.example {
            writeln!(out, "  FIRST").unwrap();
            out.push_str(&format_certificate(&Certificate::Direct(i.clone())));
            out.push('\n');
        }
        return Ok((status, out));
    }
    let (status, detail, cert) = if a.incremental {
        match search_incremental(&trs, a.domain, &cfg)? {
            IncrementalOutcome::Found(p) => {
                let d = format!("FOUND {} STEPS", p.steps.len());
                (Status::Accepted, d, Some(Certificate::Incremental(p)))
            }
            IncrementalOutcome::Stuck { steps, residual } => (
                Status::Rejected,
                format!("STUCK after {} steps with {} rules left", steps.len(), residual.len()),
                None,
            ),
            IncrementalOutcome::StepLimit { steps, residual } => (
                Status::Rejected,
                format!("STEP-LIMIT after {} steps with {} rules left", steps.len(), residual.len()),
                None,
            ),
            IncrementalOutcome::BudgetExhausted { steps } => {
                (Status::Unknown, format!("BUDGET exhausted after {} steps", steps.len()), None)
            }
        }
    } else {
        match search_direct(&trs, a.domain, &cfg)? {
            Outcome::Found(i) => (Status::Accepted, "FOUND".to_string(), Some(Certificate::Direct(i))),
            Outcome::SpaceExhausted => (Status::Rejected, "NONE within the bounds".to_string(), None),
            Outcome::BudgetExhausted => (Status::Unknown, "BUDGET exhausted".to_string(), None),
        }
    };
    let mut out = verdict_line(status);
    writeln!(out, "  SEARCH {bounds}").unwrap();
    writeln!(out, "  {detail}").unwrap();
    if let Some(cert) = cert {
        let text = format_certificate(&cert);
        match &a.out {
            Some(path) => {
                std::fs::write(path, &text).map_err(|source| CliError::Write { path: path.clone(), source })?;
                writeln!(out, "  WROTE {}", path.display()).unwrap();
            }
            None => {
                out.push_str(&text);
                if !text.ends_with('\n') {
                    out.push('\n');
                }
            }
        }
    }
    Ok((status, out))
}

fn corpus_cmd(action: CorpusAction) -> Result<(Status, String), CliError> {
    match action {
        CorpusAction::Verify => {
            let summary = corpus::verify_all();
            let status = if summary.all_passed() { Status::Accepted } else { Status::Rejected };
            let mut out = verdict_line(status);
            for line in summary.to_string().lines() {
                writeln!(out, "  {line}").unwrap();
            }
            Ok((status, out))
        }
        CorpusAction::List => {
            let mut out = String::new();
            for e in corpus::load_corpus() {
                let certs: Vec<&str> = e.certificates.iter().map(|c| c.file).collect();
                writeln!(out, "{} {} RULES {} CERTS {}", e.id, e.file, e.trs.len(), certs.join(" ")).unwrap();
            }
            Ok((Status::Info, out))
        }
        CorpusAction::Show { name } => match corpus::file(&name) {
            Some(text) => Ok((Status::Info, text.to_string())),
            None => Err(CliError::Usage(format!("no bundled file named `{name}`"))),
        },
    }
}
