//! Command-line front end.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::lab::{
    lemma_simple_report, scan_composites, scan_primes, write_report, ExperimentConfig, ExperimentReport, ReportFormat,
    ReportKind, Subject, ThresholdFn,
};
use crate::order::{integer_order_mod_n, matrix_order_mod_n};
use crate::quad::{field_data, kummer_degree_interval, Sl2Matrix};

/// Default prime-scan limit.
pub const DEFAULT_PRIME_LIMIT: u64 = 1_000_000;
/// Default composite-scan limit.
pub const DEFAULT_COMPOSITE_LIMIT: u64 = 100_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;

/// Subject used when neither the flags nor a config file name one.
pub fn default_subject() -> Subject {
    Subject::Matrix(Sl2Matrix::try_from([[2, 1], [1, 1]]).expect("unimodular"))
}

#[derive(Debug, Parser)]
#[command(name = "unit-order-lab", version, about = "Orders of integers and SL2(Z) matrices modulo primes and composites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiplicative order of an integer modulo n.
    Order {
        #[arg(long, allow_hyphen_values = true)]
        base: i64,
        #[arg(long)]
        modulus: u64,
    },
    /// Order of a matrix modulo n.
    MatrixOrder {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        modulus: u64,
    },
    /// Order record for every prime up to the limit.
    ScanPrimes(ScanArgs),
    /// Order record for every N up to the limit.
    ScanComposites(ScanArgs),
    /// Density of n | i_p next to the predicted interval.
    Chebotarev(ScanArgs),
    /// Bad primes and the sums beta(z).
    BadPrimes(ScanArgs),
    /// Primes of small order against M = prod det(A^n - I).
    LemmaSimple {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long)]
        y: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Field, unit and degree data for a matrix.
    FieldInfo {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, value_delimiter = ',')]
        n_list: Option<Vec<u64>>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct MatrixArgs {
    /// Matrix as "a,b;c,d".
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<Sl2Matrix>,
    /// Companion matrix [[t,-1],[1,0]].
    #[arg(long, allow_hyphen_values = true)]
    trace: Option<i64>,
}

impl MatrixArgs {
    fn resolve(&self) -> Option<Sl2Matrix> {
        self.matrix.or(self.trace.map(Sl2Matrix::companion))
    }

    fn require(&self) -> Result<Sl2Matrix> {
        let m = self.resolve().ok_or_else(|| Error::invalid("a matrix is required: pass --matrix a,b;c,d or --trace t"))?;
        m.require_hyperbolic()?;
        Ok(m)
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value = "csv")]
    format: String,
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false, id = "subject")]
struct SubjectArgs {
    /// Matrix as "a,b;c,d".
    #[arg(long, allow_hyphen_values = true)]
    matrix: Option<Sl2Matrix>,
    /// Companion matrix [[t,-1],[1,0]].
    #[arg(long, allow_hyphen_values = true)]
    trace: Option<i64>,
    /// Integer base instead of a matrix.
    #[arg(long, allow_hyphen_values = true)]
    base: Option<i64>,
}

impl SubjectArgs {
    fn resolve(&self) -> Option<Subject> {
        if let Some(m) = self.matrix {
            Some(Subject::Matrix(m))
        } else if let Some(t) = self.trace {
            Some(Subject::Matrix(Sl2Matrix::companion(t)))
        } else {
            self.base.map(Subject::Base)
        }
    }
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[command(flatten)]
    subject: SubjectArgs,
    #[arg(long)]
    limit: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// log, loglog or pow:alpha with alpha in (0, 0.1].
    #[arg(long = "f")]
    threshold: Option<ThresholdFn>,
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    z_list: Option<Vec<u64>>,
    /// Worker threads; defaults to available parallelism.
    #[arg(long, env = "UNIT_ORDER_LAB_THREADS")]
    threads: Option<usize>,
    #[arg(long)]
    checkpoint_every: Option<u64>,
    /// Raise the default range cap.
    #[arg(long)]
    max_limit: Option<u64>,
    /// JSON config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Progress file for resuming an interrupted scan.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Stop after this many seconds and emit a partial report.
    #[arg(long)]
    time_budget: Option<f64>,
    #[command(flatten)]
    out: OutputArgs,
}

/// Contents of a config file. Every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub subject: Option<Subject>,
    pub limit: Option<u64>,
    pub f: Option<ThresholdFn>,
    pub epsilon: Option<f64>,
    pub n_list: Option<Vec<u64>>,
    pub z_list: Option<Vec<u64>>,
    pub checkpoint_every: Option<u64>,
    pub max_limit: Option<u64>,
    pub threads: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub time_budget_secs: Option<f64>,
}

impl ConfigFile {
    fn apply(self, config: &mut ExperimentConfig) {
        if let Some(v) = self.subject {
            config.subject = v;
        }
        if let Some(v) = self.limit {
            config.limit = v;
        }
        if let Some(v) = self.f {
            config.threshold = v;
        }
        if let Some(v) = self.epsilon {
            config.epsilon = v;
        }
        if let Some(v) = self.n_list {
            config.n_list = v;
        }
        if let Some(v) = self.z_list {
            config.z_list = v;
        }
        if let Some(v) = self.checkpoint_every {
            config.checkpoint_every = v;
        }
        if self.max_limit.is_some() {
            config.max_limit = self.max_limit;
        }
        if let Some(v) = self.threads {
            config.run.workers = v;
        }
        if self.checkpoint.is_some() {
            config.run.checkpoint_path = self.checkpoint;
        }
        if self.time_budget_secs.is_some() {
            config.run.time_budget_secs = self.time_budget_secs;
        }
    }
}

/// Reads a JSON config file.
pub fn read_config_file(path: &Path) -> Result<ConfigFile> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|e| {
        let line = text.lines().nth(e.line().saturating_sub(1)).unwrap_or("").trim();
        Error::Config { path: path.to_path_buf(), message: format!("{e}; near `{line}`") }
    })
}

/// Config file values over the defaults (default subject, prime-scan limit).
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let mut config = ExperimentConfig::new(default_subject(), DEFAULT_PRIME_LIMIT);
    read_config_file(path)?.apply(&mut config);
    Ok(config)
}

impl ScanArgs {
    fn config(&self, default_limit: u64) -> Result<ExperimentConfig> {
        let mut config = ExperimentConfig::new(default_subject(), default_limit);
        if let Some(path) = &self.config {
            read_config_file(path)?.apply(&mut config);
        }
        if let Some(s) = self.subject.resolve() {
            config.subject = s;
        }
        if let Some(v) = self.limit {
            config.limit = v;
        }
        if let Some(v) = self.epsilon {
            config.epsilon = v;
        }
        if let Some(v) = self.threshold {
            config.threshold = v;
        }
        if let Some(v) = &self.n_list {
            config.n_list = v.clone();
        }
        if let Some(v) = &self.z_list {
            config.z_list = v.clone();
        }
        if let Some(v) = self.checkpoint_every {
            config.checkpoint_every = v;
        }
        if self.max_limit.is_some() {
            config.max_limit = self.max_limit;
        }
        if let Some(v) = self.threads {
            config.run.workers = v;
        }
        if self.checkpoint.is_some() {
            config.run.checkpoint_path = self.checkpoint.clone();
        }
        if self.time_budget.is_some() {
            config.run.time_budget_secs = self.time_budget;
        }
        Ok(config)
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_) | Error::Config { .. } => EXIT_INVALID,
        Error::ResourceLimit { .. }
        | Error::Overflow(_)
        | Error::IncompleteFactorization { .. }
        | Error::Io { .. }
        | Error::Partial { .. } => EXIT_RESOURCE,
    }
}

fn emit(report: &ExperimentReport, out: &OutputArgs, stdout: &mut dyn Write) -> Result<()> {
    let format: ReportFormat = out.format.parse()?;
    match &out.output {
        Some(path) => crate::lab::emit_report(report, format, path),
        None => write_report(report, format, &mut *stdout).map_err(|source| Error::Io { path: "<stdout>".into(), source }),
    }
}

fn run_scan(
    args: &ScanArgs,
    default_limit: u64,
    kind: ReportKind,
    scan: fn(&ExperimentConfig) -> Result<ExperimentReport>,
    stdout: &mut dyn Write,
) -> Result<()> {
    let config = args.config(default_limit)?;
    if kind == ReportKind::Chebotarev && config.subject.matrix().is_none() {
        return Err(Error::invalid("chebotarev needs a matrix subject (--matrix or --trace)"));
    }
    // validate the output format before any computation
    args.out.format.parse::<ReportFormat>()?;
    match scan(&config) {
        Ok(report) => emit(&report.with_kind(kind), &args.out, stdout),
        Err(Error::Partial { report, reason }) => {
            let report = report.with_kind(kind);
            emit(&report, &args.out, stdout)?;
            Err(Error::Partial { report: Box::new(report), reason })
        }
        Err(e) => Err(e),
    }
}

fn field_info(matrix: &Sl2Matrix, n_list: &[u64], out: &OutputArgs, stdout: &mut dyn Write) -> Result<()> {
    let fd = field_data(matrix)?;
    let degrees = n_list.iter().map(|&n| kummer_degree_interval(n, &fd)).collect::<Result<Vec<_>>>()?;
    let format: ReportFormat = out.format.parse()?;
    let mut text = Vec::new();
    match format {
        ReportFormat::Json => {
            let value = serde_json::json!({ "field": fd, "degrees": degrees });
            serde_json::to_writer_pretty(&mut text, &value).expect("in-memory write");
            text.push(b'\n');
        }
        ReportFormat::Csv => {
            let w = &mut text;
            let io = |e| Error::Io { path: "<buffer>".into(), source: e };
            writeln!(w, "matrix,{matrix}").map_err(io)?;
            writeln!(w, "trace,{}", fd.trace).map_err(io)?;
            writeln!(w, "disc,{}", fd.disc).map_err(io)?;
            writeln!(w, "field_disc,{}", fd.field_disc).map_err(io)?;
            writeln!(w, "conductor,{}", fd.conductor).map_err(io)?;
            writeln!(w, "fundamental_unit,{}", fd.fundamental_unit).map_err(io)?;
            writeln!(w, "unit_norm,{}", fd.unit_norm).map_err(io)?;
            writeln!(w, "power_index,{}", fd.power_index).map_err(io)?;
            writeln!(w, "d_a,{}", fd.d_a).map_err(io)?;
            for d in &degrees {
                writeln!(w, "degree_n{},{},{}", d.n, d.lower, d.upper).map_err(io)?;
            }
        }
    }
    match &out.output {
        Some(path) => fs::write(path, &text).map_err(|source| Error::Io { path: path.clone(), source }),
        None => stdout.write_all(&text).map_err(|source| Error::Io { path: "<stdout>".into(), source }),
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Order { base, modulus } => {
            let ord = integer_order_mod_n(base, modulus)?;
            writeln!(stdout, "{ord}").map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
        Command::MatrixOrder { matrix, modulus } => {
            let m = matrix.require()?;
            let ord = matrix_order_mod_n(&m, modulus, &field_data(&m)?)?.ord;
            writeln!(stdout, "{ord}").map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
        Command::ScanPrimes(args) => run_scan(&args, DEFAULT_PRIME_LIMIT, ReportKind::PrimeScan, scan_primes, stdout),
        Command::ScanComposites(args) => {
            run_scan(&args, DEFAULT_COMPOSITE_LIMIT, ReportKind::CompositeScan, scan_composites, stdout)
        }
        Command::Chebotarev(args) => run_scan(&args, DEFAULT_PRIME_LIMIT, ReportKind::Chebotarev, scan_primes, stdout),
        Command::BadPrimes(args) => run_scan(&args, DEFAULT_PRIME_LIMIT, ReportKind::BadPrimes, scan_primes, stdout),
        Command::LemmaSimple { matrix, y, out } => {
            let m = matrix.resolve().unwrap_or(*default_subject().matrix().expect("matrix subject"));
            out.format.parse::<ReportFormat>()?;
            let config = ExperimentConfig::new(Subject::Matrix(m), crate::lab::CENSUS_PRIME_BOUND);
            emit(&lemma_simple_report(&config, y)?, &out, stdout)
        }
        Command::FieldInfo { matrix, n_list, out } => {
            let n_list = n_list.unwrap_or_else(|| vec![2, 3, 4, 5]);
            field_info(&matrix.require()?, &n_list, &out, stdout)
        }
    }
}

/// Runs one invocation with explicit output streams and returns the exit
/// code: 0 on success, 1 on invalid input, 2 on resource limits and
/// partial results.
pub fn run(argv: &[String], stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    return EXIT_OK;
                }
                _ => EXIT_INVALID,
            };
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Runs one invocation against the process streams.
pub fn parse_and_dispatch(argv: &[String]) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let code = run(argv, &mut out, &mut stderr.lock());
    let _ = out.flush();
    code
}
