//! Command-line front end: `select` runs tuning selection on a CSV dataset,
//! `simulate` runs a benchmark scenario.
//!
//! Results go to standard output (or `--output`); progress and diagnostics go
//! to standard error. Every output starts with `#` lines echoing the full
//! effective configuration.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, DVector};

use crate::model::{center_data, log_grid, Dataset, FitOptions, PenaltyKind, PenaltySpec, DEFAULT_SCAD_A};
use crate::seed::derive_seed;
use crate::selection::{
    final_model_from_fit, kfold_cv_select, ols_noise_variance, pass_score, Criterion, CriterionScore, PassResult,
    PathSummary,
};
use crate::simbench::{
    render_table, scenario_for, simulate, summarize, write_replicate_csv, write_summary_csv, TrueModel,
    DEFAULT_CV_FOLDS,
};

/// Environment variable that fixes the worker thread count.
pub const THREADS_ENV: &str = "PASSREG_THREADS";

const PASS_STREAM: u64 = 1;
const CV_STREAM: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Table,
}

impl OutputFormat {
    fn label(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Table => "table",
        }
    }
}

/// `lambda_k = 10^(min + (max - min) k / (count - 1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min_exponent: f64,
    pub max_exponent: f64,
    pub count: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            min_exponent: -2.0,
            max_exponent: 2.0,
            count: 100,
        }
    }
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        log_grid(self.min_exponent, self.max_exponent, self.count)
    }

    fn describe(&self) -> String {
        format!("10^[{}, {}] x {}", self.min_exponent, self.max_exponent, self.count)
    }
}

/// Response column given by header name or zero-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnRef {
    Name(String),
    Index(usize),
}

impl FromStr for ColumnRef {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.parse() {
            Ok(i) => ColumnRef::Index(i),
            Err(_) => ColumnRef::Name(s.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    Select {
        input: PathBuf,
        response: ColumnRef,
    },
    Simulate {
        scenario: Option<String>,
        n: Option<usize>,
        replicates: Option<usize>,
        beta: Option<Vec<f64>>,
        rho: f64,
        sigma: f64,
        replicate_output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub penalties: Vec<PenaltyKind>,
    pub scad_a: f64,
    pub criteria: Vec<Criterion>,
    pub grid: GridSpec,
    pub b: usize,
    pub cv_folds: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Parser)]
#[command(name = "passreg", version, about = "Penalized regression with PASS tuning selection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Select lambda on a CSV dataset and report the refitted model.
    Select(SelectArgs),
    /// Run a Monte Carlo benchmark scenario.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct Common {
    /// Comma-separated criteria: pass, bic, cp, cv, gcv, or all.
    #[arg(long, value_delimiter = ',')]
    criterion: Vec<String>,
    /// Smallest grid exponent.
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    min_exponent: f64,
    /// Largest grid exponent.
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    max_exponent: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 100)]
    grid_count: usize,
    /// Number of PASS half splits.
    #[arg(long, default_value_t = 20)]
    b: usize,
    /// Folds for k-fold CV.
    #[arg(long, default_value_t = DEFAULT_CV_FOLDS)]
    folds: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// SCAD shape parameter.
    #[arg(long, default_value_t = DEFAULT_SCAD_A)]
    scad_a: f64,
    /// Write results here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Args)]
struct SelectArgs {
    /// CSV file with one header row.
    #[arg(long, short)]
    input: PathBuf,
    /// Response column: header name or zero-based index.
    #[arg(long, short)]
    response: String,
    /// Comma-separated penalties: lasso, alasso, scad, or all.
    #[arg(long, value_delimiter = ',', default_value = "scad")]
    penalty: Vec<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct SimulateArgs {
    /// Preset (I-40, II.2, III-200, ...) or family (I, III) combined with --n.
    #[arg(long)]
    scenario: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    replicates: Option<usize>,
    /// Custom true coefficients, comma-separated (instead of --scenario).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    beta: Option<Vec<f64>>,
    /// AR(1) correlation of the custom design.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    rho: f64,
    /// Noise standard deviation of the custom model.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Comma-separated penalties.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    penalty: Vec<String>,
    /// Also write per-replicate records to this CSV file.
    #[arg(long)]
    replicate_output: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

fn usage(kind: ErrorKind, msg: impl std::fmt::Display) -> clap::Error {
    Cli::command().error(kind, msg)
}

fn parse_list<T>(flag: &str, items: &[String], all: &[T]) -> Result<Vec<T>, clap::Error>
where
    T: FromStr<Err = crate::Error> + Copy + PartialEq,
{
    let mut out = Vec::new();
    for s in items {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            out.extend_from_slice(all);
            continue;
        }
        let v = s
            .parse::<T>()
            .map_err(|e| usage(ErrorKind::InvalidValue, format!("--{flag}: {e}")))?;
        out.push(v);
    }
    let mut uniq = Vec::new();
    for v in out {
        if !uniq.contains(&v) {
            uniq.push(v);
        }
    }
    Ok(uniq)
}

fn common_config(c: &Common) -> Result<(Vec<Criterion>, GridSpec), clap::Error> {
    let criteria = if c.criterion.is_empty() {
        vec![Criterion::Pass]
    } else {
        parse_list("criterion", &c.criterion, &Criterion::ALL)?
    };
    if !(c.min_exponent.is_finite() && c.max_exponent.is_finite()) {
        return Err(usage(ErrorKind::ValueValidation, "--min-exponent/--max-exponent must be finite"));
    }
    if c.grid_count == 0 {
        return Err(usage(ErrorKind::ValueValidation, "--grid-count must be >= 1"));
    }
    if c.grid_count > 1 && c.min_exponent >= c.max_exponent {
        return Err(usage(
            ErrorKind::ValueValidation,
            "--min-exponent must be smaller than --max-exponent",
        ));
    }
    if c.b == 0 {
        return Err(usage(ErrorKind::ValueValidation, "--b must be >= 1"));
    }
    if !(c.scad_a > 2.0) {
        return Err(usage(ErrorKind::ValueValidation, "--scad-a must be > 2"));
    }
    Ok((
        criteria,
        GridSpec {
            min_exponent: c.min_exponent,
            max_exponent: c.max_exponent,
            count: c.grid_count,
        },
    ))
}

/// Parses and validates a full argument vector (program name first).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    match cli.command {
        Command::Select(a) => {
            let (criteria, grid) = common_config(&a.common)?;
            Ok(RunConfig {
                mode: Mode::Select {
                    input: a.input,
                    response: a.response.parse().expect("infallible"),
                },
                penalties: parse_list("penalty", &a.penalty, &PenaltyKind::ALL)?,
                scad_a: a.common.scad_a,
                criteria,
                grid,
                b: a.common.b,
                cv_folds: a.common.folds,
                seed: a.common.seed,
                output: a.common.output,
                format: a.common.format,
            })
        }
        Command::Simulate(a) => {
            let (criteria, grid) = common_config(&a.common)?;
            if a.scenario.is_none() && a.beta.is_none() {
                return Err(usage(
                    ErrorKind::MissingRequiredArgument,
                    "simulate needs --scenario or --beta",
                ));
            }
            if a.scenario.is_some() && a.beta.is_some() {
                return Err(usage(ErrorKind::ArgumentConflict, "--scenario and --beta are exclusive"));
            }
            if a.replicates == Some(0) {
                return Err(usage(ErrorKind::ValueValidation, "--replicates must be >= 1"));
            }
            Ok(RunConfig {
                mode: Mode::Simulate {
                    scenario: a.scenario,
                    n: a.n,
                    replicates: a.replicates,
                    beta: a.beta,
                    rho: a.rho,
                    sigma: a.sigma,
                    replicate_output: a.replicate_output,
                },
                penalties: parse_list("penalty", &a.penalty, &PenaltyKind::ALL)?,
                scad_a: a.common.scad_a,
                criteria,
                grid,
                b: a.common.b,
                cv_folds: a.common.folds,
                seed: a.common.seed,
                output: a.common.output,
                format: a.common.format,
            })
        }
    }
}

/// Builds the global thread pool from `PASSREG_THREADS` when it is set.
pub fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .with_context(|| format!("{THREADS_ENV}='{v}' is not a thread count"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// A parsed input table: predictor names, the design and the response.
#[derive(Debug, Clone)]
pub struct InputTable {
    pub names: Vec<String>,
    pub response: String,
    pub data: Dataset,
}

pub fn read_input<R: Read>(r: R, response: &ColumnRef) -> anyhow::Result<InputTable> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(r);
    let headers: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let ycol = match response {
        ColumnRef::Name(name) => headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| anyhow!("response column '{name}' not found in header {headers:?}"))?,
        ColumnRef::Index(i) if *i < headers.len() => *i,
        ColumnRef::Index(i) => bail!("response index {i} out of range ({} columns)", headers.len()),
    };
    if headers.len() < 2 {
        bail!("need the response and at least one predictor column");
    }
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.with_context(|| format!("data row {}", k + 1))?;
        if rec.len() != headers.len() {
            bail!("data row {}: expected {} fields, found {}", k + 1, headers.len(), rec.len());
        }
        let mut row = Vec::with_capacity(rec.len());
        for (j, field) in rec.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| anyhow!("data row {}: column '{}': cannot parse '{field}'", k + 1, headers[j]))?;
            if !v.is_finite() {
                bail!("data row {}: column '{}': non-finite value '{field}'", k + 1, headers[j]);
            }
            row.push(v);
        }
        rows.push(row);
    }
    let n = rows.len();
    if n < 4 {
        bail!("need at least 4 data rows, found {n}");
    }
    let preds: Vec<usize> = (0..headers.len()).filter(|&j| j != ycol).collect();
    let x = DMatrix::from_fn(n, preds.len(), |i, j| rows[i][preds[j]]);
    let y = DVector::from_fn(n, |i, _| rows[i][ycol]);
    for (j, &col) in preds.iter().enumerate() {
        let c = x.column(j);
        if c.iter().all(|&v| v == c[0]) {
            bail!("column '{}' is constant and cannot be standardized", headers[col]);
        }
    }
    Ok(InputTable {
        names: preds.iter().map(|&j| headers[j].clone()).collect(),
        response: headers[ycol].clone(),
        data: Dataset::new(x, y)?,
    })
}

fn penalty_spec(kind: PenaltyKind, scad_a: f64) -> crate::Result<PenaltySpec> {
    match kind {
        PenaltyKind::Scad => PenaltySpec::scad_with_a(scad_a),
        k => Ok(PenaltySpec::from_kind(k)),
    }
}

fn labels<T: std::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

/// One criterion's selection on one penalty, with everything that is printed.
struct Selection {
    criterion: Criterion,
    penalty: PenaltyKind,
    score: CriterionScore,
    pass: Option<PassResult>,
    support: Vec<usize>,
    coefficients: Vec<f64>,
    intercept: f64,
}

fn select_header(cfg: &RunConfig, input: &Path, table: &InputTable) -> Vec<String> {
    vec![
        format!(
            "passreg select input={} response={} n={} p={}",
            input.display(),
            table.response,
            table.data.n(),
            table.data.p()
        ),
        format!(
            "penalty={} scad_a={} criterion={} grid={} b={} folds={} seed={}",
            labels(&cfg.penalties),
            cfg.scad_a,
            labels(&cfg.criteria),
            cfg.grid.describe(),
            cfg.b,
            cfg.cv_folds,
            cfg.seed
        ),
        "data are centered; coefficients are on the centered scale, intercept recovers the raw scale".into(),
    ]
}

fn run_selections(cfg: &RunConfig, table: &InputTable) -> anyhow::Result<Vec<Selection>> {
    let (data, centering) = center_data(&table.data)?;
    let grid = cfg.grid.values();
    let opts = FitOptions::default();
    let name_of = |e: crate::Error| match e {
        crate::Error::ConstantColumn(j) => anyhow!("column '{}' is constant and cannot be standardized", table.names[j]),
        e => e.into(),
    };
    let mut out = Vec::new();
    for &kind in &cfg.penalties {
        let penalty = penalty_spec(kind, cfg.scad_a)?;
        let path = PathSummary::compute(&data, &penalty, &grid, &opts).map_err(name_of)?;
        for &criterion in &cfg.criteria {
            let mut pass = None;
            let score = match criterion {
                Criterion::Pass => {
                    let r = pass_score(&data, &penalty, &grid, cfg.b, &opts, derive_seed(cfg.seed, PASS_STREAM))
                        .map_err(name_of)?;
                    let s = CriterionScore::from(&r);
                    pass = Some(r);
                    s
                }
                Criterion::Bic => path.bic()?,
                Criterion::Cp => path.cp(ols_noise_variance(&data)?)?,
                Criterion::Gcv => path.gcv()?,
                Criterion::Cv => kfold_cv_select(
                    &data,
                    &penalty,
                    &grid,
                    cfg.cv_folds,
                    &opts,
                    derive_seed(cfg.seed, CV_STREAM),
                )
                .map_err(name_of)?,
            };
            let fm = final_model_from_fit(&data, path.fits[score.index_hat].clone(), opts.zero_tol)
                .with_context(|| format!("{criterion}/{kind}: refit on the selected support"))?;
            out.push(Selection {
                criterion,
                penalty: kind,
                support: fm.support.indices().to_vec(),
                intercept: centering.intercept(&fm.refit.beta),
                coefficients: fm.refit.beta,
                score,
                pass,
            });
        }
    }
    Ok(out)
}

fn select_csv(sel: &[Selection], names: &[String], header: &[String]) -> anyhow::Result<String> {
    let mut buf = Vec::new();
    for h in header {
        writeln!(buf, "# {h}")?;
    }
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(["criterion", "penalty", "section", "key", "lambda", "value"])?;
        for s in sel {
            let (c, p) = (s.criterion.label(), s.penalty.label());
            let lam = s.score.lambda_hat.to_string();
            w.write_record([c, p, "selected", "lambda_hat", &lam, &s.score.value[s.score.index_hat].to_string()])?;
            w.write_record([c, p, "coefficient", "(intercept)", &lam, &s.intercept.to_string()])?;
            for &j in &s.support {
                w.write_record([c, p, "coefficient", &names[j], &lam, &s.coefficients[j].to_string()])?;
            }
            for (k, (l, v)) in s.score.grid.iter().zip(&s.score.value).enumerate() {
                w.write_record([c, p, "trace", &k.to_string(), &l.to_string(), &v.to_string()])?;
            }
            if let Some(r) = &s.pass {
                for (k, l) in r.grid.iter().enumerate() {
                    w.write_record([c, p, "kappa_sum", &k.to_string(), &l.to_string(), &r.kappa_sum[k].to_string()])?;
                    w.write_record([c, p, "cv_sum", &k.to_string(), &l.to_string(), &r.cv_sum[k].to_string()])?;
                }
            }
        }
        w.flush()?;
    }
    Ok(String::from_utf8(buf)?)
}

fn select_table(sel: &[Selection], names: &[String], header: &[String]) -> String {
    let mut s = String::new();
    for h in header {
        let _ = writeln!(s, "# {h}");
    }
    let width = names.iter().map(String::len).max().unwrap_or(0).max(11);
    for r in sel {
        let _ = writeln!(s, "\n== {} / {} ==", r.criterion, r.penalty);
        let _ = writeln!(
            s,
            "lambda_hat  {:.6}  (grid index {}, criterion value {:.6})",
            r.score.lambda_hat, r.score.index_hat, r.score.value[r.score.index_hat]
        );
        let support: Vec<&str> = r.support.iter().map(|&j| names[j].as_str()).collect();
        let _ = writeln!(s, "support     {{{}}}", support.join(", "));
        let _ = writeln!(s, "OLS refit on the support:");
        let _ = writeln!(s, "  {:<width$}  {:>12.6}", "(intercept)", r.intercept);
        for &j in &r.support {
            let _ = writeln!(s, "  {:<width$}  {:>12.6}", names[j], r.coefficients[j]);
        }
        let _ = writeln!(s, "trace:");
        match &r.pass {
            Some(p) => {
                let _ = writeln!(s, "  {:>12}  {:>12}  {:>12}  {:>12}", "lambda", "kappa_sum", "cv_sum", "PASS");
                for k in 0..p.grid.len() {
                    let _ = writeln!(
                        s,
                        "  {:>12.6}  {:>12.4}  {:>12.6}  {:>12.6}",
                        p.grid[k], p.kappa_sum[k], p.cv_sum[k], p.score[k]
                    );
                }
            }
            None => {
                let _ = writeln!(s, "  {:>12}  {:>12}", "lambda", r.criterion.label());
                for (l, v) in r.score.grid.iter().zip(&r.score.value) {
                    let _ = writeln!(s, "  {l:>12.6}  {v:>12.6}");
                }
            }
        }
    }
    s
}

/// Runs `select`, writing results to `out` and progress to `err`.
pub fn run_select(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<()> {
    let Mode::Select { input, response } = &cfg.mode else {
        bail!("run_select needs a select configuration");
    };
    let file = File::open(input).with_context(|| format!("cannot open {}", input.display()))?;
    let table = read_input(file, response).with_context(|| format!("reading {}", input.display()))?;
    writeln!(err, "read {} rows x {} predictors from {}", table.data.n(), table.data.p(), input.display())?;
    let sel = run_selections(cfg, &table)?;
    let header = select_header(cfg, input, &table);
    let text = match cfg.format {
        OutputFormat::Csv => select_csv(&sel, &table.names, &header)?,
        OutputFormat::Table => select_table(&sel, &table.names, &header),
    };
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn scenario_config(cfg: &RunConfig) -> anyhow::Result<(crate::simbench::ScenarioConfig, Option<PathBuf>)> {
    let Mode::Simulate {
        scenario,
        n,
        replicates,
        beta,
        rho,
        sigma,
        replicate_output,
    } = &cfg.mode
    else {
        bail!("run_simulate needs a simulate configuration");
    };
    let mut sc = match (scenario, beta) {
        (Some(name), _) => scenario_for(name, *n)?,
        (None, Some(beta)) => {
            let model = TrueModel::new(beta.clone(), *rho, *sigma)?;
            crate::simbench::ScenarioConfig::new("custom", model, n.unwrap_or(100))
        }
        (None, None) => bail!("simulate needs --scenario or --beta"),
    };
    if let Some(r) = replicates {
        sc.replicates = *r;
    }
    sc.grid = cfg.grid.values();
    sc.b = cfg.b;
    sc.cv_folds = cfg.cv_folds;
    sc.penalties = cfg.penalties.clone();
    sc.criteria = cfg.criteria.clone();
    sc.master_seed = cfg.seed;
    sc.validate()?;
    Ok((sc, replicate_output.clone()))
}

fn simulate_header(cfg: &RunConfig, sc: &crate::simbench::ScenarioConfig) -> Vec<String> {
    let beta: Vec<String> = sc.true_model.beta().iter().map(|b| b.to_string()).collect();
    vec![
        format!(
            "passreg simulate scenario={} n={} p={} beta=({}) rho={} sigma={}",
            sc.name,
            sc.n,
            sc.p(),
            beta.join(","),
            sc.true_model.rho(),
            sc.true_model.sigma()
        ),
        format!(
            "replicates={} penalty={} criterion={} grid={} b={} folds={} seed={} tol={} max_iter={} zero_tol={} format={}",
            sc.replicates,
            labels(&sc.penalties),
            labels(&sc.criteria),
            cfg.grid.describe(),
            sc.b,
            sc.cv_folds,
            sc.master_seed,
            sc.opts.tol,
            sc.opts.max_iter,
            sc.opts.zero_tol,
            cfg.format.label()
        ),
    ]
}

/// Runs `simulate`. Returns whether every cell completed.
pub fn run_simulate(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<bool> {
    let (sc, replicate_output) = scenario_config(cfg)?;
    let header = simulate_header(cfg, &sc);
    writeln!(err, "running {} ({} replicates)", sc.name, sc.replicates)?;
    let start = Instant::now();
    let results = simulate(&sc)?;
    writeln!(err, "finished in {:.1}s", start.elapsed().as_secs_f64())?;
    for r in &results {
        for c in &r.cells {
            if let Err(e) = &c.outcome {
                writeln!(err, "replicate {} {}/{} failed: {e}", r.replicate, c.criterion, c.penalty)?;
            }
        }
    }
    let table = summarize(&sc, &results);
    match cfg.format {
        OutputFormat::Csv => write_summary_csv(&mut *out, &table, &header)?,
        OutputFormat::Table => {
            for h in &header {
                writeln!(out, "# {h}")?;
            }
            out.write_all(render_table(&table).as_bytes())?;
        }
    }
    out.flush()?;
    if let Some(path) = replicate_output {
        let f = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
        write_replicate_csv(BufWriter::new(f), &sc.name, &results, &header)?;
    }
    let failed = table.failed_cells();
    if failed > 0 {
        writeln!(err, "{failed} cell(s) had failed replicates")?;
    }
    Ok(failed == 0)
}

/// Runs a parsed configuration against the process streams. Returns the exit
/// status: 0 on success, 1 on error or when any simulation cell failed.
pub fn run(cfg: &RunConfig) -> i32 {
    let stderr = io::stderr();
    let mut err = stderr.lock();
    let result = (|| -> anyhow::Result<bool> {
        let mut out: Box<dyn Write> = match &cfg.output {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
            )),
            None => Box::new(io::stdout().lock()),
        };
        match cfg.mode {
            Mode::Select { .. } => run_select(cfg, &mut out, &mut err).map(|_| true),
            Mode::Simulate { .. } => run_simulate(cfg, &mut out, &mut err),
        }
    })();
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}
