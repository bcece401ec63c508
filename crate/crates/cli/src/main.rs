//! `betaens`: sample the matrix models, run the validation suites, evaluate
//! closed forms and bin samples into histograms.
//!
//! Exit codes: 0 success, 1 validation or numerical failure, 2 usage,
//! 3 input/output.

mod config;
mod format;

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use beta_ensembles::distributions::dirichlet_moment;
use beta_ensembles::ensembles::{expected_charpoly, partition_circular, sample, selberg_value, EnsembleKind, EnsembleSpec};
use beta_ensembles::hist::{default_range, extract, histogram, write_histogram_csv, Statistic};
use beta_ensembles::io::{read_batch, write_batch, OutputFormat};
use beta_ensembles::validate::{run_suite, Report, Suite, Tolerances, ValidateOptions};
use beta_ensembles::Error;
use clap::{Args, Parser, Subcommand};

use config::{CommandName, RunConfig};

/// Default directory for sample files when `--out` is not given.
const OUT_DIR_ENV: &str = "BETAENS_OUT_DIR";

#[derive(Parser, Debug)]
#[command(name = "betaens", version, about = "Sparse matrix models for circular and Jacobi beta-ensembles")]
struct Cli {
    /// Log progress to standard error.
    #[arg(short, long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Draw eigenvalue configurations from a matrix model.
    Sample(SampleArgs),
    /// Run a validation suite and emit a JSON report.
    Validate(ValidateArgs),
    /// Print a closed-form quantity.
    Eval {
        #[command(subcommand)]
        what: EvalCmd,
    },
    /// Histogram a statistic of a sample file.
    Hist(HistArgs),
    /// Execute a `sample` or `validate` run described by a TOML file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct SampleArgs {
    /// circular | jacobi
    #[arg(value_parser = parse_kind)]
    kind: EnsembleKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    beta: f64,
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    stream_id: u64,
    /// Include the Verblunsky coefficients of each draw.
    #[arg(long)]
    emit_alphas: bool,
    /// Output file; defaults to a name derived from the parameters inside
    /// `$BETAENS_OUT_DIR` (or the current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv | jsonl
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: OutputFormat,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// identities | ensembles | integrals | jacobians | all
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    /// Ensembles suite: only the n = 2 rejection comparisons.
    #[arg(long)]
    fast: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override, `key=value`; repeatable.
    #[arg(long = "tol", value_parser = parse_tol)]
    tol: Vec<(String, f64)>,
    /// Report path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum EvalCmd {
    /// Z_{n,β} = Γ(βn/2+1)/Γ(β/2+1)^n.
    #[command(allow_negative_numbers = true)]
    Partition {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: f64,
    },
    /// Selberg integral S_n(x, y, z) over [0,1]^n.
    #[command(allow_negative_numbers = true)]
    Selberg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: f64,
        #[arg(long)]
        y: f64,
        #[arg(long)]
        z: f64,
    },
    /// Expected characteristic polynomial of the Jacobi model.
    #[command(allow_negative_numbers = true)]
    Charpoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        beta: f64,
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
    /// E ∏ μ_j^{p_j} for μ uniform on the simplex.
    #[command(allow_negative_numbers = true)]
    Dirichlet {
        /// Comma-separated exponents.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
    },
}

#[derive(Args, Debug)]
#[command(allow_negative_numbers = true)]
struct HistArgs {
    /// Sample file written by `sample` (csv or jsonl).
    input: PathBuf,
    /// angle | gap | eigenvalue
    #[arg(long, default_value = "eigenvalue", value_parser = parse_stat)]
    stat: Statistic,
    #[arg(long, default_value_t = 50)]
    bins: usize,
    #[arg(long)]
    lo: Option<f64>,
    #[arg(long)]
    hi: Option<f64>,
    /// CSV path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<EnsembleKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}
fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}
fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}
fn parse_stat(s: &str) -> Result<Statistic, String> {
    s.parse().map_err(|e: Error| e.to_string())
}
fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected key=value, got `{s}`"))?;
    let v: f64 = v.parse().map_err(|_| format!("tolerance `{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

enum Failure {
    Validation,
    Usage(String),
    Io(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Self::Validation | Self::Numerical(_) => 1,
            Self::Usage(_) => 2,
            Self::Io(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain { name, value, constraint } => {
                Self::Usage(format!("invalid value {value} for --{}: requires {constraint}", name.replace('_', "-")))
            }
            Error::Io(_) | Error::Format(_) => Self::Io(e.to_string()),
            other => Self::Numerical(other.to_string()),
        }
    }
}

fn io_fail(path: &Path, e: io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| io_fail(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| io_fail(path, e))
}

fn default_sample_path(kind: EnsembleKind, spec: &EnsembleSpec, format: OutputFormat) -> PathBuf {
    let dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    let ext = match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Jsonl => "jsonl",
    };
    dir.join(format!("{}_n{}_seed{}_stream{}.{ext}", kind.as_str(), spec.n, spec.seed, spec.stream_id))
}

fn cmd_sample(cfg: &RunConfig) -> Result<(), Failure> {
    let kind = cfg.kind.ok_or_else(|| Failure::Usage("sample needs an ensemble kind".into()))?;
    let spec = EnsembleSpec {
        n: cfg.n,
        beta: cfg.beta,
        a: cfg.a,
        b: cfg.b,
        seed: cfg.seed,
        stream_id: cfg.stream_id,
    };
    spec.validate(kind)?;
    if cfg.count == 0 {
        return Err(Failure::Usage("--count must be at least 1".into()));
    }
    let path = cfg.out.clone().unwrap_or_else(|| default_sample_path(kind, &spec, cfg.format));
    let t = Instant::now();
    let batch = sample(kind, &spec, cfg.count)?;
    let secs = t.elapsed().as_secs_f64();
    let mut w = create(&path)?;
    write_batch(&batch, cfg.format, cfg.emit_alphas, &mut w)?;
    w.flush().map_err(|e| io_fail(&path, e))?;
    println!(
        "sampled {} draws, {} n={} beta={} in {:.3}s ({:.0} draws/s) -> {}",
        cfg.count,
        kind.as_str(),
        cfg.n,
        cfg.beta,
        secs,
        cfg.count as f64 / secs.max(1e-9),
        path.display()
    );
    Ok(())
}

fn print_table(report: &Report) {
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(4);
    eprintln!("{:<width$}  {:>12}  {:>10}  result", "check", "measured", "tolerance");
    for c in &report.checks {
        eprintln!(
            "{:<width$}  {:>12.3e}  {:>10.1e}  {}",
            c.name,
            c.measured,
            c.tolerance,
            if c.pass { "pass" } else { "FAIL" }
        );
        if let Some(d) = &c.detail {
            eprintln!("{:<width$}  error: {d}", "");
        }
    }
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    eprintln!("{} checks, {} failed", report.checks.len(), failed);
}

fn cmd_validate(cfg: &RunConfig) -> Result<(), Failure> {
    let suite: Suite = cfg
        .suite
        .as_deref()
        .ok_or_else(|| Failure::Usage("validate needs a suite".into()))?
        .parse()
        .map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let mut tolerances = Tolerances::default();
    for (k, v) in &cfg.tolerances {
        tolerances.set(k, *v).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let opts = ValidateOptions {
        fast: cfg.fast,
        seed: cfg.seed,
        tolerances,
    };
    let report = run_suite(suite, &opts);
    print_table(&report);
    let json = serde_json::to_string_pretty(&report).expect("report serialises");
    match &cfg.out {
        Some(path) => {
            let mut w = create(path)?;
            writeln!(w, "{json}").and_then(|_| w.flush()).map_err(|e| io_fail(path, e))?;
        }
        None => println!("{json}"),
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Validation)
    }
}

fn cmd_eval(what: EvalCmd) -> Result<(), Failure> {
    let text = match what {
        EvalCmd::Partition { n, beta } => format::g15(partition_circular(n, beta)?),
        EvalCmd::Selberg { n, x, y, z } => format::g15(selberg_value(n, x, y, z)?),
        EvalCmd::Charpoly { n, beta, a, b } => format::polynomial(&expected_charpoly(n, beta, a, b)?),
        EvalCmd::Dirichlet { p } => format::g15(dirichlet_moment(&p)?),
    };
    println!("{text}");
    Ok(())
}

fn cmd_hist(args: HistArgs) -> Result<(), Failure> {
    let file = File::open(&args.input).map_err(|e| io_fail(&args.input, e))?;
    let batch = read_batch(BufReader::new(file)).map_err(|e| Failure::Io(format!("{}: {e}", args.input.display())))?;
    let values = extract(&batch, args.stat).map_err(|e| Failure::Usage(e.to_string()))?;
    let (lo0, hi0) = default_range(&batch, args.stat, &values);
    let (lo, hi) = (args.lo.unwrap_or(lo0), args.hi.unwrap_or(hi0));
    let bins = histogram(&values, args.bins, lo, hi).map_err(|e| Failure::Usage(e.to_string()))?;
    match &args.out {
        Some(path) => {
            let mut w = create(path)?;
            write_histogram_csv(&bins, &mut w)?;
        }
        None => write_histogram_csv(&bins, &mut io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_run(path: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_fail(path, e))?;
    let cfg = RunConfig::from_toml(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    log::info!("running config:\n{}", cfg.to_toml());
    match cfg.command {
        CommandName::Sample => cmd_sample(&cfg),
        CommandName::Validate => cmd_validate(&cfg),
    }
}

fn dispatch(cmd: Cmd) -> Result<(), Failure> {
    match cmd {
        Cmd::Sample(a) => cmd_sample(&RunConfig {
            command: CommandName::Sample,
            kind: Some(a.kind),
            n: a.n,
            beta: a.beta,
            a: a.a,
            b: a.b,
            seed: a.seed,
            stream_id: a.stream_id,
            count: a.count,
            out: a.out,
            format: a.format,
            emit_alphas: a.emit_alphas,
            tolerances: Default::default(),
            suite: None,
            fast: false,
        }),
        Cmd::Validate(a) => cmd_validate(&RunConfig {
            command: CommandName::Validate,
            kind: None,
            n: 2,
            beta: 2.0,
            a: 0.0,
            b: 0.0,
            seed: a.seed.unwrap_or_else(|| ValidateOptions::default().seed),
            stream_id: 0,
            count: 0,
            out: a.out,
            format: OutputFormat::Csv,
            emit_alphas: false,
            tolerances: a.tol.into_iter().collect(),
            suite: Some(a.suite.as_str().to_string()),
            fast: a.fast,
        }),
        Cmd::Eval { what } => cmd_eval(what),
        Cmd::Hist(a) => cmd_hist(a),
        Cmd::Run { config } => cmd_run(&config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    env_logger::Builder::new()
        .filter_level(if cli.verbose { log::LevelFilter::Info } else { log::LevelFilter::Warn })
        .parse_default_env()
        .init();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Validation => eprintln!("validation failed"),
                Failure::Usage(m) => eprintln!("error: {m}"),
                Failure::Io(m) => eprintln!("i/o error: {m}"),
                Failure::Numerical(m) => eprintln!("numerical failure: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
