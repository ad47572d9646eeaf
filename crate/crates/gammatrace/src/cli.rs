use std::collections::hash_map::RandomState;
use std::fs::File;
use std::hash::BuildHasher;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gammatrace_core::clifford::build_rep;
use gammatrace_core::solver::{general_algorithm_with, minimal_algorithm_with, SolverError};
use gammatrace_core::verify::{pseudoscalar_ratio_with, MasterFormulaCheck, VerifyError, MAX_VERIFY_N};
use gammatrace_core::{AlphaTable, ComplexRational, SamplerConfig, Signature, SignatureKind};
use serde::Serialize;

use crate::bench::{self, BenchConfig, Method};
use crate::cache;
use crate::emit::{self, FormulaFormat, TableFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// `--seed`: a number, or `random` to draw one from the OS.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    Fixed(u64),
    Random,
}

impl FromStr for Seed {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "random" {
            return Ok(Self::Random);
        }
        s.parse()
            .map(Self::Fixed)
            .map_err(|_| format!("expected an unsigned integer or `random`, got {s:?}"))
    }
}

impl Seed {
    fn resolve(self) -> u64 {
        match self {
            Self::Fixed(s) => s,
            Self::Random => RandomState::new().hash_one(Instant::now()),
        }
    }
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(_) => Err(format!("expected a positive integer, got {s:?}")),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    General,
    Minimal,
}

#[derive(Debug, Parser)]
#[command(
    name = "gammatrace",
    version,
    about = "Exact trace coefficients for symmetrized products of Dirac Γ_ab matrices"
)]
pub struct Cli {
    /// Seed for random tensors, or `random`.
    #[arg(long, global = true, default_value = "1")]
    pub seed: Seed,
    /// `minkowski`, `euclidean`, or an explicit pattern such as `-+++`.
    #[arg(long, global = true, default_value = "minkowski", allow_hyphen_values = true)]
    pub signature: SignatureKind,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory holding the elementary-coefficient cache.
    #[arg(long, global = true, env = cache::ENV_VAR)]
    pub cache_dir: Option<PathBuf>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the α coefficients for every partition of n.
    Alpha(AlphaArgs),
    /// Print the trace formula for n with its coefficients filled in.
    Formula(SolveArgs),
    /// Compare the formula with brute-force Gamma-matrix traces.
    Verify(VerifyArgs),
    /// Dump the Gamma matrices used for a dimension and signature.
    Gamma(GammaArgs),
    /// Ratio of the chirality-weighted trace to the ε contraction.
    Pseudoscalar(PseudoscalarArgs),
    /// Time both algorithms for n = 1..max-n (CSV).
    Bench(BenchArgs),
    /// Inspect or clear the coefficient cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_parser = positive)]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Minimal)]
    pub method: MethodArg,
    /// Spacetime dimension (general: default 2n; minimal: default 2).
    #[arg(long)]
    pub d: Option<usize>,
    /// Largest n accepted by the general algorithm.
    #[arg(long, default_value_t = 7)]
    pub general_limit: u64,
    /// Random entries are drawn from [-R, R].
    #[arg(long, default_value_t = 9)]
    pub entry_range: u32,
    /// Redraws allowed after a singular system.
    #[arg(long, default_value_t = 16)]
    pub max_resamples: u32,
    /// Neither read nor write the cache.
    #[arg(long)]
    pub no_cache: bool,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Print the tables for every n up to the given one.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX_VERIFY_N as u64))]
    pub n: u64,
    #[arg(long, default_value_t = 3)]
    pub trials: usize,
    /// Add wall-clock time per trial to each report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    /// Dimension; taken from the signature pattern when omitted.
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PseudoscalarArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..=MAX_VERIFY_N as u64))]
    pub n: u64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 7)]
    pub max_n: usize,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::General, MethodArg::Minimal])]
    pub methods: Vec<MethodArg>,
    #[arg(long, default_value_t = 7)]
    pub general_max_n: usize,
    #[arg(long, default_value_t = 30)]
    pub minimal_max_n: usize,
    /// Seconds; a method that exceeds this stops at that n.
    #[arg(long, default_value_t = 600.0)]
    pub time_limit: f64,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Show where the cache lives and what it holds.
    Inspect,
    /// Delete the cache file.
    Clear,
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Failed(anyhow::Error),
    Mismatch { failed: usize, total: usize },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => EXIT_USAGE,
            Self::Failed(_) => EXIT_FAILURE,
            Self::Mismatch { .. } => EXIT_MISMATCH,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => f.write_str(m),
            Self::Failed(e) => write!(f, "{e:#}"),
            Self::Mismatch { failed, total } => write!(f, "{failed} of {total} trials did not match"),
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Self::Failed(e.into())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parse `args` (program name first), run the command, and return the
/// process exit code. Errors go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    seed: u64,
}

impl Ctx<'_> {
    fn output(&self) -> Result<Box<dyn Write>, Failure> {
        Ok(match &self.cli.out {
            Some(path) => {
                let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                Box::new(BufWriter::new(file))
            }
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        let mut out = self.output()?;
        out.write_all(text.as_bytes())?;
        out.flush()?;
        Ok(())
    }

    fn cache_path(&self) -> Option<PathBuf> {
        self.cli
            .cache_dir
            .clone()
            .or_else(cache::default_dir)
            .map(|d| cache::file_in(&d))
    }

    fn sampler(&self, args: &SolveArgs) -> SamplerConfig {
        SamplerConfig {
            seed: self.seed,
            entry_range: args.entry_range,
            max_resamples: args.max_resamples,
        }
    }

    fn signature(&self, d: usize) -> Result<Signature, Failure> {
        self.cli.signature.for_dim(d).map_err(|e| usage(e.to_string()))
    }

    fn format_or(&self, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
        let f = self.cli.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            let names: Vec<_> = allowed
                .iter()
                .map(|a| a.to_possible_value().unwrap().get_name().to_owned())
                .collect();
            Err(usage(format!(
                "--format {} is not available here (choose from {})",
                f.to_possible_value().unwrap().get_name(),
                names.join(", ")
            )))
        }
    }
}

fn execute(cli: &Cli) -> Result<(), Failure> {
    let seed = cli.seed.resolve();
    if cli.seed == Seed::Random {
        eprintln!("seed: {seed}");
    }
    let ctx = Ctx { cli, seed };
    match &cli.command {
        Command::Alpha(args) => cmd_alpha(&ctx, args),
        Command::Formula(args) => cmd_formula(&ctx, args),
        Command::Verify(args) => cmd_verify(&ctx, args),
        Command::Gamma(args) => cmd_gamma(&ctx, args),
        Command::Pseudoscalar(args) => cmd_pseudoscalar(&ctx, args),
        Command::Bench(args) => cmd_bench(&ctx, args),
        Command::Cache { action } => cmd_cache(&ctx, action),
    }
}

fn solver_failure(e: SolverError) -> Failure {
    Failure::Failed(anyhow!(e))
}

/// Tables for `1..=n` (only the last one when `all` is false).
fn solve_tables(ctx: &Ctx, args: &SolveArgs, all: bool) -> Result<Vec<AlphaTable>, Failure> {
    let n = args.n as usize;
    match args.method {
        MethodArg::General => {
            if args.n > args.general_limit {
                return Err(usage(format!(
                    "general method is limited to n <= {} (raise --general-limit to override)",
                    args.general_limit
                )));
            }
            let cfg = ctx.sampler(args);
            let range = if all { 1..=n } else { n..=n };
            range
                .map(|k| {
                    let sig = ctx.signature(args.d.unwrap_or(2 * k))?;
                    general_algorithm_with(k, &cfg, &sig).map_err(solver_failure)
                })
                .collect()
        }
        MethodArg::Minimal => {
            let d = args.d.unwrap_or(2);
            let sig = ctx.signature(d)?;
            if d < 2 {
                return Err(usage("minimal method needs d >= 2"));
            }
            let use_cache = !args.no_cache && sig == Signature::minkowski(2);
            let elementary = if use_cache {
                cache::elementary_through(ctx.cache_path().as_deref(), n)?
            } else {
                minimal_algorithm_with(n, &sig).map_err(solver_failure)?.elementary
            };
            let range = if all { 1..=n } else { n..=n };
            range
                .map(|k| AlphaTable::from_elementary(k, &elementary).map_err(solver_failure))
                .collect()
        }
    }
}

fn cmd_alpha(ctx: &Ctx, args: &AlphaArgs) -> Result<(), Failure> {
    let format = match ctx.format_or(Format::Text, &[Format::Text, Format::Csv, Format::Json])? {
        Format::Csv => TableFormat::Csv,
        Format::Json => TableFormat::Json,
        _ => TableFormat::Text,
    };
    let tables = solve_tables(ctx, &args.solve, args.all)?;
    let text = if args.all {
        emit::render_alpha_tables(&tables, format)
    } else {
        emit::render_alpha_table(&tables[0], format)
    };
    ctx.emit(&text)
}

fn cmd_formula(ctx: &Ctx, args: &SolveArgs) -> Result<(), Failure> {
    let format = match ctx.format_or(Format::Text, &[Format::Text, Format::Latex, Format::Json])? {
        Format::Latex => FormulaFormat::Latex,
        Format::Json => FormulaFormat::Json,
        _ => FormulaFormat::Text,
    };
    let tables = solve_tables(ctx, args, false)?;
    ctx.emit(&emit::render_formula(&tables[0], format))
}

#[derive(Serialize)]
struct ReportJson {
    n: usize,
    d: usize,
    signature: String,
    seed: u64,
    trial: usize,
    lhs: String,
    rhs: String,
    matched: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_seconds: Option<f64>,
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Result<(), Failure> {
    ctx.format_or(Format::Json, &[Format::Json])?;
    let n = args.n as usize;
    ctx.signature(2 * n)?;
    let cfg = SamplerConfig::with_seed(ctx.seed);
    let check = MasterFormulaCheck::new(n, &cfg, &ctx.cli.signature).map_err(|e| match e {
        VerifyError::Solver(s) => solver_failure(s),
        other => Failure::Failed(anyhow!(other)),
    })?;
    let mut out = ctx.output()?;
    let mut failed = 0;
    for trial in 0..args.trials {
        let start = Instant::now();
        let mut report = check.trial(trial).map_err(|e| anyhow!(e))?;
        report.elapsed = Some(start.elapsed());
        if !report.matched {
            failed += 1;
        }
        let json = ReportJson {
            n: report.n,
            d: report.d,
            signature: report.signature.to_string(),
            seed: ctx.seed,
            trial: report.trial,
            lhs: report.lhs.to_string(),
            rhs: report.rhs.to_string(),
            matched: report.matched,
            elapsed_seconds: report
                .elapsed
                .filter(|_| args.timing)
                .map(|d: Duration| d.as_secs_f64()),
        };
        serde_json::to_writer(&mut out, &json)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    if failed > 0 {
        return Err(Failure::Mismatch {
            failed,
            total: args.trials,
        });
    }
    Ok(())
}

#[derive(Serialize)]
struct GammaJson {
    d: usize,
    eta: Vec<i8>,
    m: usize,
    /// `gammas[a][row][col] = [re, im]`.
    gammas: Vec<Vec<Vec<[String; 2]>>>,
}

fn cmd_gamma(ctx: &Ctx, args: &GammaArgs) -> Result<(), Failure> {
    ctx.format_or(Format::Json, &[Format::Json])?;
    let d = match (args.d, &ctx.cli.signature) {
        (Some(d), _) => d,
        (None, SignatureKind::Explicit(sig)) => sig.dim(),
        (None, _) => return Err(usage("gamma needs --d unless --signature is an explicit pattern")),
    };
    if d == 0 {
        return Err(usage("d must be at least 1"));
    }
    let sig = ctx.signature(d)?;
    let rep = build_rep(&sig)?;
    let gammas = rep
        .gammas()
        .iter()
        .map(|g| {
            (0..g.rows())
                .map(|r| g.row(r).iter().map(|z| [z.re.to_string(), z.im.to_string()]).collect())
                .collect()
        })
        .collect();
    let doc = GammaJson {
        d,
        eta: sig.entries().to_vec(),
        m: rep.m(),
        gammas,
    };
    let mut text = serde_json::to_string(&doc)?;
    text.push('\n');
    ctx.emit(&text)
}

#[derive(Serialize)]
struct ComplexJson {
    re: String,
    im: String,
}

#[derive(Serialize)]
struct PseudoscalarJson {
    n: usize,
    d: usize,
    signature: String,
    seed: u64,
    trials: usize,
    ratio: ComplexJson,
}

fn cmd_pseudoscalar(ctx: &Ctx, args: &PseudoscalarArgs) -> Result<(), Failure> {
    let format = ctx.format_or(Format::Json, &[Format::Json, Format::Text])?;
    let n = args.n as usize;
    let sig = ctx.signature(2 * n)?;
    let cfg = SamplerConfig::with_seed(ctx.seed);
    let ratio: ComplexRational =
        pseudoscalar_ratio_with(n, args.trials, &cfg, &ctx.cli.signature).map_err(|e| match e {
            VerifyError::InconsistentRatio { .. } => Failure::Mismatch {
                failed: 1,
                total: args.trials,
            },
            other => Failure::Failed(anyhow!(other)),
        })?;
    let text = match format {
        Format::Text => format!("{ratio}\n"),
        _ => {
            let doc = PseudoscalarJson {
                n,
                d: 2 * n,
                signature: sig.to_string(),
                seed: ctx.seed,
                trials: args.trials,
                ratio: ComplexJson {
                    re: ratio.re.to_string(),
                    im: ratio.im.to_string(),
                },
            };
            let mut s = serde_json::to_string(&doc)?;
            s.push('\n');
            s
        }
    };
    ctx.emit(&text)
}

fn cmd_bench(ctx: &Ctx, args: &BenchArgs) -> Result<(), Failure> {
    ctx.format_or(Format::Csv, &[Format::Csv])?;
    if args.methods.is_empty() {
        return Err(usage("--methods must name at least one method"));
    }
    if !(args.time_limit.is_finite() && args.time_limit > 0.0) {
        return Err(usage("--time-limit must be a positive number of seconds"));
    }
    let mut methods: Vec<Method> = args
        .methods
        .iter()
        .map(|m| match m {
            MethodArg::General => Method::General,
            MethodArg::Minimal => Method::Minimal,
        })
        .collect();
    methods.sort();
    methods.dedup();
    let cfg = BenchConfig {
        max_n: args.max_n,
        methods,
        sampler: SamplerConfig::with_seed(ctx.seed),
        time_limit: Duration::from_secs_f64(args.time_limit),
        general_max_n: args.general_max_n,
        minimal_max_n: args.minimal_max_n,
    };
    let mut writer = csv::Writer::from_writer(ctx.output()?);
    writer.write_record(bench::csv_header(&cfg.methods))?;
    writer.flush()?;
    bench::run(&cfg, |row| {
        writer.write_record(bench::csv_record(row))?;
        writer.flush()
    })?;
    Ok(())
}

#[derive(Serialize)]
struct CacheJson {
    path: String,
    status: &'static str,
    elementary: Vec<String>,
}

fn cmd_cache(ctx: &Ctx, action: &CacheAction) -> Result<(), Failure> {
    let path = ctx.cache_path().ok_or_else(|| {
        usage(format!(
            "no cache directory: pass --cache-dir or set {}",
            cache::ENV_VAR
        ))
    })?;
    match action {
        CacheAction::Inspect => {
            let format = ctx.format_or(Format::Text, &[Format::Text, Format::Json])?;
            let loaded = cache::load(&path)?;
            ctx.emit(&render_inspect(&path, loaded.as_ref(), format))
        }
        CacheAction::Clear => {
            ctx.format_or(Format::Text, &[Format::Text])?;
            let removed = cache::clear(&path)?;
            let verb = if removed { "removed" } else { "nothing to remove at" };
            ctx.emit(&format!("{verb} {}\n", path.display()))
        }
    }
}

fn render_inspect(path: &Path, loaded: Option<&gammatrace_core::ElementarySequence>, format: Format) -> String {
    let values: Vec<String> = loaded.map_or_else(Vec::new, |s| s.as_slice().iter().map(|a| a.to_string()).collect());
    let status = if loaded.is_some() { "warm" } else { "cold" };
    match format {
        Format::Json => {
            let doc = CacheJson {
                path: path.display().to_string(),
                status,
                elementary: values,
            };
            let mut s = serde_json::to_string(&doc).expect("serializable");
            s.push('\n');
            s
        }
        _ => {
            let mut s = format!(
                "path: {}\nstatus: {status}\nentries: {}\n",
                path.display(),
                values.len()
            );
            for (j, v) in values.iter().enumerate() {
                s.push_str(&format!("{}\t{v}\n", j + 1));
            }
            s
        }
    }
}
