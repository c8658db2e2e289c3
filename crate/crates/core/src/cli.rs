//! Command-line harness: data generation, learning, evaluation, experiments,
//! verification and arrangement inspection.
//!
//! Configuration is a TOML file with `[task]`, `[data]` and `[run]` tables
//! (see [`ExperimentConfig`]); command-line flags override file values.
//!
//! Exit codes: 0 success, 1 I/O or internal failure, 2 configuration error,
//! 3 resource cap, 4 verification failure.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arrangement::{self, ArrangementOptions};
use crate::concepts::{misclassified, Domain, GridSpec, HypothesisExpr, LabeledSample};
use crate::datagen::{self, Distribution, TargetConcept};
use crate::error::{Error, Result};
use crate::formats;
use crate::learners::{self, ConceptClass, LearnOptions, TaskSpec};
use crate::oracles::{self, Fault};
use crate::rng::{label, SeedPath};
use crate::selectors::DEFAULT_TRIPLE_CAP;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// CSV columns written by `experiment`.
pub const CSV_COLUMNS: [&str; 11] =
    ["seed", "n", "epsilon", "delta", "alpha", "k", "d", "train_error", "heldout_error", "wall_time", "iterations"];

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parameter(_) | Error::Kind(_) | Error::Parse(_) => EXIT_CONFIG,
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Io { .. } | Error::Unsatisfiable(_) | Error::Internal(_) => EXIT_IO,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TaskSection {
    pub class: ConceptClass,
    pub k: usize,
    /// Grid resolution, or the number of variables for Boolean classes.
    pub d: u32,
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub delta: f64,
}

impl Default for TaskSection {
    fn default() -> Self {
        TaskSection { class: ConceptClass::Conj, k: 2, d: 8, alpha: 0.1, beta: 0.1, epsilon: 1.0, delta: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum AutoTag {
    Auto,
}

/// Training-set size: a fixed count or `"auto"` for the sample-size formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SampleSize {
    Fixed(usize),
    #[serde(with = "auto_tag")]
    Auto,
}

mod auto_tag {
    use super::AutoTag;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        AutoTag::Auto.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        AutoTag::deserialize(d).map(|_| ())
    }
}

impl std::str::FromStr for SampleSize {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "auto" {
            return Ok(SampleSize::Auto);
        }
        s.parse().map(SampleSize::Fixed).map_err(|_| format!("expected a count or `auto`, got `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DataSection {
    pub distribution: Distribution,
    pub n: SampleSize,
    /// Upper bound applied to `n = "auto"`.
    pub n_cap: Option<usize>,
    /// Selection slack for `n = "auto"`; defaults to the class formula.
    pub lambda: Option<f64>,
    pub vc_constant: f64,
    /// Grid-coverage range for random polygon targets.
    pub coverage: [f64; 2],
    /// Fixed target file; random per trial when absent.
    pub target: Option<PathBuf>,
}

impl Default for DataSection {
    fn default() -> Self {
        DataSection {
            distribution: Distribution::UniformGrid,
            n: SampleSize::Auto,
            n_cap: None,
            lambda: None,
            vc_constant: 1.0,
            coverage: [0.2, 0.5],
            target: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub seed: u64,
    pub trials: usize,
    /// Explicit trial seeds; `seed, seed + 1, ...` when absent.
    pub seeds: Option<Vec<u64>>,
    pub holdout: usize,
    pub triple_cap: u64,
    /// Wall-clock budget for an experiment; no new trial starts past it.
    pub time_budget_secs: Option<f64>,
    pub jobs: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            seed: 0,
            trials: 1,
            seeds: None,
            holdout: 100_000,
            triple_cap: DEFAULT_TRIPLE_CAP,
            time_budget_secs: None,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub task: TaskSection,
    pub data: DataSection,
    pub run: RunSection,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parameter(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serialises")
    }

    /// SHA-256 of the canonical TOML form, hex encoded.
    pub fn hash(&self) -> String {
        hex(&Sha256::digest(self.to_toml().as_bytes()))
    }

    pub fn validate(&self) -> Result<()> {
        let r = &self.run;
        if r.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        if r.holdout == 0 || r.triple_cap == 0 || r.jobs == 0 {
            return Err(Error::param("holdout, triple_cap and jobs must be positive"));
        }
        if r.time_budget_secs.is_some_and(|t| !(t > 0.0)) {
            return Err(Error::param("time_budget_secs must be positive"));
        }
        if let Some(s) = &r.seeds {
            if s.len() != r.trials {
                return Err(Error::param(format!("{} seeds listed for {} trials", s.len(), r.trials)));
            }
        }
        if self.data.n_cap == Some(0) {
            return Err(Error::param("n_cap must be positive"));
        }
        let [lo, hi] = self.data.coverage;
        if !(0.0..=1.0).contains(&lo) || !(lo..=1.0).contains(&hi) {
            return Err(Error::param("coverage must be a range inside [0, 1]"));
        }
        self.task_spec().map(|_| ())
    }

    pub fn task_spec(&self) -> Result<TaskSpec> {
        let t = &self.task;
        TaskSpec::new(t.class, t.k, t.d, t.alpha, t.beta, t.epsilon, t.delta)
    }

    pub fn trial_seeds(&self) -> Vec<u64> {
        self.run.seeds.clone().unwrap_or_else(|| (0..self.run.trials as u64).map(|i| self.run.seed + i).collect())
    }

    pub fn grid(&self) -> Result<Option<GridSpec>> {
        if self.task.class.is_geometric() {
            GridSpec::new(self.task.d).map(Some)
        } else {
            Ok(None)
        }
    }

    pub fn sample_size(&self) -> Result<usize> {
        match self.data.n {
            SampleSize::Fixed(n) => Ok(n),
            SampleSize::Auto => {
                let spec = self.task_spec()?;
                let lambda = self.data.lambda.unwrap_or_else(|| spec.auto_lambda());
                let n = learners::required_sample_size(&spec, lambda, self.data.vc_constant)?;
                Ok(self.data.n_cap.map_or(n, |c| n.min(c)))
            }
        }
    }

    fn metadata(&self, seed: Option<u64>) -> Value {
        json!({ "version": env!("CARGO_PKG_VERSION"), "seed": seed, "config_hash": self.hash() })
    }
}

/// Writes to stdout, treating a closed pipe as success.
fn print_stdout(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.write_all(b"\n")).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::io("<stdout>", e)),
        _ => Ok(()),
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Target for one trial: the configured file, or a random one.
pub fn trial_target(cfg: &ExperimentConfig, seed: SeedPath) -> Result<TargetConcept> {
    if let Some(path) = &cfg.data.target {
        return read_target(path);
    }
    let t = &cfg.task;
    let mut rng = seed.child(label::TARGET, 0).rng();
    let [lo, hi] = cfg.data.coverage;
    match t.class {
        ConceptClass::Conj => datagen::random_conjunction(t.d as usize, t.k, &mut rng),
        ConceptClass::Disj => datagen::random_disjunction(t.d as usize, t.k, &mut rng),
        ConceptClass::ConvexKgon => datagen::random_convex_polygon(GridSpec::new(t.d)?, t.k, lo, hi, &mut rng),
        ConceptClass::KUnionGon => datagen::random_triangle(GridSpec::new(t.d)?, lo, hi, &mut rng),
    }
}

/// Training sample of size `n` for one trial.
pub fn trial_sample(cfg: &ExperimentConfig, target: &TargetConcept, n: usize, seed: SeedPath) -> Result<LabeledSample> {
    let mut rng = seed.child(label::DATA, 0).rng();
    match target {
        TargetConcept::Conj { vars, .. } | TargetConcept::Disj { vars, .. } => {
            datagen::label_rows(datagen::sample_bool_rows(n, *vars, &mut rng), target)
        }
        TargetConcept::Polygons { .. } => {
            let grid = target.grid().expect("polygon target has a grid");
            if grid.d() != cfg.task.d {
                return Err(Error::param(format!("target grid d = {} but task d = {}", grid.d(), cfg.task.d)));
            }
            let pts = datagen::sample_distribution(cfg.data.distribution, n, grid, Some(target), &mut rng)?;
            datagen::label_points(pts, target)
        }
    }
}

pub fn read_target(path: &Path) -> Result<TargetConcept> {
    let v = read_json(path)?;
    let body = v.get("target").cloned().unwrap_or(v);
    serde_json::from_value(body).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v).expect("json serialises");
    text.push('\n');
    formats::write_text(path, &text)
}

pub fn read_hypothesis(path: &Path) -> Result<HypothesisExpr> {
    let v = read_json(path)?;
    formats::hypothesis_from_json(v.get("hypothesis").unwrap_or(&v))
}

#[derive(Debug, Parser)]
#[command(name = "dpgeom", version, about = "Differentially private set-cover learners on grids and Boolean cubes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw a target and a labeled sample.
    GenData(GenDataArgs),
    /// Run a private learner on a sample file.
    Learn(LearnArgs),
    /// Training error of a hypothesis on a sample file.
    Eval(EvalArgs),
    /// Repeated trials written as CSV.
    Experiment(ExperimentArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
    /// Faces, vertices, areas and masks of a sample's dual arrangement as JSON.
    ArrangementDump(DumpArgs),
}

fn parse_class(s: &str) -> std::result::Result<ConceptClass, String> {
    serde_json::from_value(Value::String(s.to_string()))
        .map_err(|_| format!("unknown class `{s}`; expected conj, disj, convex-kgon or k-union-gon"))
}

fn parse_range(s: &str) -> std::result::Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [lo, hi] => Ok([
            lo.trim().parse().map_err(|e| format!("{lo}: {e}"))?,
            hi.trim().parse().map_err(|e| format!("{hi}: {e}"))?,
        ]),
        _ => Err("expected `lo,hi`".into()),
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct ConfigFlags {
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_parser = parse_class)]
    pub class: Option<ConceptClass>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Sample size or `auto`.
    #[arg(long)]
    pub n: Option<SampleSize>,
    #[arg(long)]
    pub n_cap: Option<usize>,
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Coverage range `lo,hi` for random polygon targets.
    #[arg(long, value_parser = parse_range)]
    pub coverage: Option<[f64; 2]>,
    /// Fixed target file.
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Comma-separated trial seeds.
    #[arg(long, value_delimiter = ',')]
    pub seeds: Option<Vec<u64>>,
    #[arg(long)]
    pub holdout: Option<usize>,
    #[arg(long)]
    pub triple_cap: Option<u64>,
    #[arg(long)]
    pub time_budget_secs: Option<f64>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl ConfigFlags {
    pub fn resolve(&self) -> Result<ExperimentConfig> {
        let mut c = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        macro_rules! set {
            ($($flag:ident => $($field:ident).+),* $(,)?) => {
                $(if let Some(v) = &self.$flag { c.$($field).+ = v.clone(); })*
            };
        }
        set!(class => task.class, k => task.k, d => task.d, alpha => task.alpha, beta => task.beta,
            epsilon => task.epsilon, delta => task.delta, n => data.n, seed => run.seed, trials => run.trials,
            holdout => run.holdout, triple_cap => run.triple_cap, jobs => run.jobs);
        if self.n_cap.is_some() {
            c.data.n_cap = self.n_cap;
        }
        if self.lambda.is_some() {
            c.data.lambda = self.lambda;
        }
        if let Some(c2) = self.coverage {
            c.data.coverage = c2;
        }
        if self.target.is_some() {
            c.data.target = self.target.clone();
        }
        if self.time_budget_secs.is_some() {
            c.run.time_budget_secs = self.time_budget_secs;
        }
        if let Some(s) = &self.seeds {
            c.run.trials = s.len();
            c.run.seeds = Some(s.clone());
        }
        c.validate()?;
        Ok(c)
    }
}

#[derive(Debug, Args)]
pub struct GenDataArgs {
    #[command(flatten)]
    pub cfg: ConfigFlags,
    /// Sample output (JSONL).
    #[arg(long)]
    pub out: PathBuf,
    /// Target output; defaults to `<out>.target.json`.
    #[arg(long)]
    pub target_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LearnArgs {
    #[command(flatten)]
    pub cfg: ConfigFlags,
    #[arg(long)]
    pub sample: PathBuf,
    /// Hypothesis output (JSON).
    #[arg(long)]
    pub out: PathBuf,
    /// Trace output, or `off`; defaults to `<out>.trace.json`.
    #[arg(long)]
    pub trace: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub hypothesis: PathBuf,
    #[arg(long)]
    pub sample: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[command(flatten)]
    pub cfg: ConfigFlags,
    /// CSV output.
    #[arg(long)]
    pub out: PathBuf,
    /// Append to an existing CSV, skipping seeds it already holds.
    #[arg(long)]
    pub resume: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run (arrangement, selectors, privacy-ratio, em-pmf); all by default.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<String>,
    /// Report output; printed to stdout either way.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[arg(long)]
    pub sample: PathBuf,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run(cmd: Command) -> Result<i32> {
    match cmd {
        Command::GenData(a) => gen_data(&a),
        Command::Learn(a) => learn(&a),
        Command::Eval(a) => eval(&a),
        Command::Experiment(a) => experiment(&a),
        Command::Verify(a) => verify(&a),
        Command::ArrangementDump(a) => dump(&a),
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn gen_data(a: &GenDataArgs) -> Result<i32> {
    let cfg = a.cfg.resolve()?;
    let seed = SeedPath::root(cfg.run.seed);
    let target = trial_target(&cfg, seed)?;
    let n = cfg.sample_size()?;
    let s = trial_sample(&cfg, &target, n, seed)?;
    let meta = cfg.metadata(Some(cfg.run.seed));
    formats::write_text(&a.out, &formats::sample_to_jsonl_with_meta(&s, Some(&meta)))?;
    let target_out = a.target_out.clone().unwrap_or_else(|| with_suffix(&a.out, ".target.json"));
    write_json(&target_out, &json!({ "meta": meta, "target": target }))?;
    Ok(EXIT_OK)
}

fn learn(a: &LearnArgs) -> Result<i32> {
    let s = formats::read_sample(&a.sample)?;
    let mut flags = a.cfg.clone();
    if flags.config.is_none() && flags.d.is_none() {
        flags.d = Some(match s.domain() {
            Domain::Grid(g) => g.d(),
            Domain::Bool { vars } => u32::try_from(vars).map_err(|_| Error::param("too many variables"))?,
        });
    }
    let cfg = flags.resolve()?;
    let spec = cfg.task_spec()?;
    let opts = LearnOptions { triple_cap: cfg.run.triple_cap };
    let (h, trace) = learners::learn_with(&spec, &s, SeedPath::root(cfg.run.seed), opts)?;
    let meta = cfg.metadata(Some(cfg.run.seed));
    write_json(&a.out, &json!({ "meta": meta, "hypothesis": formats::hypothesis_to_json(&h) }))?;
    match a.trace.as_deref() {
        Some("off") => {}
        other => {
            let path = other.map_or_else(|| with_suffix(&a.out, ".trace.json"), PathBuf::from);
            write_json(&path, &json!({ "meta": meta, "trace": trace }))?;
        }
    }
    Ok(EXIT_OK)
}

fn eval(a: &EvalArgs) -> Result<i32> {
    let h = read_hypothesis(&a.hypothesis)?;
    let s = formats::read_sample(&a.sample)?;
    let wrong = misclassified(&h, &s)?;
    let rate = if s.is_empty() { 0.0 } else { wrong as f64 / s.len() as f64 };
    print_stdout(&json!({ "n": s.len(), "errors": wrong, "error": rate }).to_string())?;
    Ok(EXIT_OK)
}

/// One experiment row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub seed: u64,
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
    pub alpha: f64,
    pub k: usize,
    pub d: u32,
    pub train_error: f64,
    pub heldout_error: f64,
    pub wall_time: f64,
    pub iterations: usize,
}

impl TrialResult {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.3},{}",
            self.seed,
            self.n,
            self.epsilon,
            self.delta,
            self.alpha,
            self.k,
            self.d,
            self.train_error,
            self.heldout_error,
            self.wall_time,
            self.iterations
        )
    }
}

/// Runs one trial; all randomness derives from `seed`.
pub fn run_trial(cfg: &ExperimentConfig, seed: u64) -> Result<TrialResult> {
    let start = Instant::now();
    let spec = cfg.task_spec()?;
    let root = SeedPath::root(seed);
    let target = trial_target(cfg, root)?;
    let n = cfg.sample_size()?;
    let s = trial_sample(cfg, &target, n, root)?;
    let opts = LearnOptions { triple_cap: cfg.run.triple_cap };
    let (h, trace) = learners::learn_with(&spec, &s, root.child(label::TRIAL, 0), opts)?;
    let train_error = if s.is_empty() { 0.0 } else { misclassified(&h, &s)? as f64 / s.len() as f64 };
    let mut rng = root.child(label::HOLDOUT, 0).rng();
    let heldout_error = learners::holdout_error(&h, &target, cfg.data.distribution, cfg.run.holdout, &mut rng)?;
    Ok(TrialResult {
        seed,
        n,
        epsilon: cfg.task.epsilon,
        delta: cfg.task.delta,
        alpha: cfg.task.alpha,
        k: cfg.task.k,
        d: cfg.task.d,
        train_error,
        heldout_error,
        wall_time: start.elapsed().as_secs_f64(),
        iterations: trace.iterations.len(),
    })
}

fn completed_seeds(path: &Path) -> Result<BTreeSet<u64>> {
    let f = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = BTreeSet::new();
    for line in BufReader::new(f).lines() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.starts_with('#') || line.starts_with("seed") || line.trim().is_empty() {
            continue;
        }
        let first = line.split(',').next().unwrap_or_default();
        out.insert(first.parse().map_err(|_| Error::Parse(format!("{}: bad row `{line}`", path.display())))?);
    }
    Ok(out)
}

fn experiment(a: &ExperimentArgs) -> Result<i32> {
    let cfg = a.cfg.resolve()?;
    let io = |e| Error::io(&a.out, e);
    let resume = a.resume && a.out.exists();
    let done = if resume { completed_seeds(&a.out)? } else { BTreeSet::new() };
    let mut file = fs::OpenOptions::new().create(true).append(resume).write(true).truncate(!resume).open(&a.out).map_err(io)?;
    if !resume {
        writeln!(file, "# version: {}", env!("CARGO_PKG_VERSION")).map_err(io)?;
        writeln!(file, "# seed: {}", cfg.run.seed).map_err(io)?;
        writeln!(file, "# config_hash: {}", cfg.hash()).map_err(io)?;
        writeln!(file, "{}", CSV_COLUMNS.join(",")).map_err(io)?;
        file.flush().map_err(io)?;
    }
    let pending: Vec<u64> = cfg.trial_seeds().into_iter().filter(|s| !done.contains(s)).collect();
    let start = Instant::now();
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel::<(u64, Result<TrialResult>)>();
    let mut first_error: Option<Error> = None;
    std::thread::scope(|scope| -> Result<()> {
        for _ in 0..cfg.run.jobs.min(pending.len().max(1)) {
            let tx = tx.clone();
            let (cfg, pending, next, stop) = (&cfg, &pending, &next, &stop);
            scope.spawn(move || loop {
                if stop.load(Ordering::SeqCst) {
                    break;
                }
                let i = next.fetch_add(1, Ordering::SeqCst);
                let Some(&seed) = pending.get(i) else { break };
                if cfg.run.time_budget_secs.is_some_and(|b| start.elapsed().as_secs_f64() > b) {
                    let _ = tx.send((seed, Err(Error::Resource("experiment time budget exhausted".into()))));
                    break;
                }
                if tx.send((seed, run_trial(cfg, seed))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for (seed, r) in rx {
            match r {
                Ok(row) => writeln!(file, "{}", row.csv_row()).map_err(io)?,
                Err(e) => {
                    writeln!(file, "# seed {seed} failed: {e}").map_err(io)?;
                    stop.store(true, Ordering::SeqCst);
                    first_error.get_or_insert(e);
                }
            }
            file.flush().map_err(io)?;
        }
        Ok(())
    })?;
    match first_error {
        Some(e) => Err(e),
        None => Ok(EXIT_OK),
    }
}

fn verify(a: &VerifyArgs) -> Result<i32> {
    let fault = if a.inject_fault { Fault::MaskOffByOne } else { Fault::None };
    let reports = oracles::run_suites(&a.suite, fault)?;
    let v = serde_json::to_value(&reports).expect("reports serialise");
    print_stdout(&serde_json::to_string_pretty(&v).expect("json serialises"))?;
    if let Some(p) = &a.out {
        write_json(p, &json!({ "meta": { "version": env!("CARGO_PKG_VERSION") }, "reports": v }))?;
    }
    Ok(if reports.iter().all(|r| r.pass) { EXIT_OK } else { EXIT_VERIFY })
}

/// Mask as hex, most significant word first; bit `i` is example `i`.
fn mask_hex(words: &[u64]) -> String {
    words.iter().rev().map(|w| format!("{w:016x}")).collect()
}

/// JSON description of a sample's dual arrangement.
pub fn arrangement_json(s: &LabeledSample) -> Result<Value> {
    let grid = s.domain().grid().ok_or_else(|| Error::Kind("arrangements need a grid sample".into()))?;
    let arr = arrangement::build_arrangement_with(s, grid, ArrangementOptions { with_masks: true })?;
    let faces: Vec<Value> = arr
        .faces()
        .map(|f| {
            let area = f.area();
            json!({
                "index": f.index(),
                "vertices": f.vertices().map(|v| json!([[v.an, v.den], [v.bn, v.den]])).collect::<Vec<_>>(),
                "area": formats::rational_json(&area),
                "negatives_below": f.negatives_below(),
                "positives_below": f.positives_below(),
                "mask": mask_hex(f.mask_words().expect("masks requested")),
            })
        })
        .collect();
    Ok(json!({
        "d": grid.d(),
        "lines": arr.lines().len(),
        "box_half_width": grid.box_half_width().to_string(),
        "faces": faces,
    }))
}

fn dump(a: &DumpArgs) -> Result<i32> {
    let bytes = fs::read(&a.sample).map_err(|e| Error::io(&a.sample, e))?;
    let s = formats::sample_from_reader(bytes.as_slice())?;
    let mut v = arrangement_json(&s)?;
    v["meta"] = json!({ "version": env!("CARGO_PKG_VERSION"), "seed": null, "config_hash": hex(&Sha256::digest(&bytes)) });
    match &a.out {
        Some(p) => write_json(p, &v)?,
        None => print_stdout(&serde_json::to_string_pretty(&v).expect("json serialises"))?,
    }
    Ok(EXIT_OK)
}
