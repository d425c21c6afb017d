//! The `prove`, `generate`, `mine`, `train` and `eval` subcommands.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use log::{info, warn};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use synthprove_core::mlp::{DEFAULT_WEIGHT_SCALE, LEARNING_RATE_GRID};
use synthprove_core::{
    clause_weight_cost, derive_seed, feature_schema_hash, make_problem, mine_problem, mlp_train, propose_theorem,
    CostFunction, LearnedCost, MiningConfig, ParentRef, Problem, ProposerConfig, Saturator, Status, SyntheticTheorem,
    TrainConfig, TrainHistory, TrainingExample, Validation, WalkStep,
};

use crate::clock::StdClock;
use crate::config::{self, pick, FileConfig, DEFAULT_MAX_CLAUSES, DEFAULT_TIMEOUT_SECS};
use crate::formats::{self, DatasetMeta, DATASET_VERSION};
use crate::report::{status_name, RunReport, RunRow};
use crate::tptp::{load_problem, proof_trace, write_problem};

#[derive(Debug, Parser)]
#[command(name = "synthprove", version, about = "Resolution prover that learns clause selection from synthetic theorems")]
pub struct Cli {
    /// Settings file with `key = value` lines; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// More log output (repeat for debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prove one CNF problem.
    Prove(ProveArgs),
    /// Propose synthetic theorems from an axiom set.
    Generate(GenerateArgs),
    /// Prove a directory of problems and record training examples.
    Mine(MineArgs),
    /// Train the clause scorer on a mined dataset.
    Train(TrainArgs),
    /// Compare cost functions on a directory of problems.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Stop after this many generated clauses [default: 50000].
    #[arg(long)]
    pub max_clauses: Option<usize>,
    /// Wall-clock limit per problem; 0 disables it [default: 30].
    #[arg(long)]
    pub timeout_secs: Option<f64>,
    /// Stop after this many clause selections.
    #[arg(long)]
    pub max_steps: Option<u64>,
    /// Age picks to cost picks, e.g. `1:5` [default: 1:5].
    #[arg(long)]
    pub age_cost_ratio: Option<String>,
}

struct Limits {
    max_clauses: usize,
    timeout_secs: f64,
    budget: synthprove_core::Budget,
    ratio: synthprove_core::AgeCostRatio,
}

impl BudgetArgs {
    fn resolve(&self, file: &FileConfig) -> anyhow::Result<Limits> {
        let max_clauses = pick(self.max_clauses, &file.max_clauses, DEFAULT_MAX_CLAUSES);
        let timeout_secs = pick(self.timeout_secs, &file.timeout_secs, DEFAULT_TIMEOUT_SECS);
        let max_steps = self.max_steps.or(file.max_steps);
        let ratio = config::parse_ratio(&pick(self.age_cost_ratio.clone(), &file.age_cost_ratio, "1:5".into()))?;
        Ok(Limits { max_clauses, timeout_secs, budget: config::budget(max_clauses, timeout_secs, max_steps)?, ratio })
    }
}

#[derive(Debug, Args)]
pub struct ProveArgs {
    pub problem: PathBuf,
    /// `weight` or `model` [default: weight].
    #[arg(long)]
    pub cost: Option<String>,
    /// Model file for `--cost model`.
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Divisor of the clause weight in the learned cost [default: 16].
    #[arg(long)]
    pub weight_scale: Option<f64>,
    /// Print the derivation of the empty clause.
    #[arg(long)]
    pub proof: bool,
    /// Directory that `include` directives are resolved against.
    #[arg(long)]
    pub axiom_root: Option<PathBuf>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// CNF file holding the axiom set.
    pub axioms: PathBuf,
    #[arg(long)]
    pub count: usize,
    /// Inferences per walk [default: 10].
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
    /// Resolution partners after the first step: `axioms` or `all` [default: all].
    #[arg(long)]
    pub linear_parents: Option<String>,
    /// Leave out inferences heavier than this [default: 60].
    #[arg(long)]
    pub max_weight: Option<usize>,
    /// Walk restarts before giving up on a theorem [default: 20].
    #[arg(long)]
    pub max_restarts: Option<usize>,
    #[arg(long)]
    pub axiom_root: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    /// Directory of `.p` problems.
    pub dir: PathBuf,
    /// Dataset file (JSON lines); metadata goes next to it.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub axiom_root: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    pub dataset: PathBuf,
    /// Model file to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Per-epoch CSV of every grid run.
    #[arg(long)]
    pub history: Option<PathBuf>,
    /// `full` (5 rates × 5 seeds) or `desk` (3 rates × 2 seeds) [default: full].
    #[arg(long)]
    pub grid: Option<String>,
    /// Train only at these rates (comma separated) instead of the grid rates.
    #[arg(long, value_delimiter = ',')]
    pub learning_rate: Vec<f64>,
    /// Seeds per learning rate; overrides the grid's count.
    #[arg(long)]
    pub seeds: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub batch_size: Option<usize>,
    #[arg(long)]
    pub max_epochs: Option<usize>,
    #[arg(long)]
    pub patience: Option<usize>,
    /// Share of theorems held out for validation [default: 0.1].
    #[arg(long)]
    pub validation_fraction: Option<f64>,
    /// Use this dataset for validation instead of a split.
    #[arg(long)]
    pub validation: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Directory of `.p` problems.
    pub dir: PathBuf,
    /// `weight` or `model:PATH`; repeat to compare [default: weight].
    #[arg(long)]
    pub cost: Vec<String>,
    #[arg(long)]
    pub weight_scale: Option<f64>,
    /// Per-problem results.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub axiom_root: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub budget: BudgetArgs,
}

/// Parses the command line, runs it, and returns the process exit code.
pub fn run(cli: Cli) -> anyhow::Result<i32> {
    let file = match &cli.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Command::Prove(a) => prove(&a, &file),
        Command::Generate(a) => generate(&a, &file).map(|_| 0),
        Command::Mine(a) => mine(&a, &file).map(|_| 0),
        Command::Train(a) => train(&a, &file).map(|_| 0),
        Command::Eval(a) => eval(&a, &file).map(|_| 0),
    }
}

fn pool(jobs: Option<usize>, file: &FileConfig) -> anyhow::Result<rayon::ThreadPool> {
    let jobs = pick(jobs, &file.jobs, 0);
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().context("starting worker threads")
}

#[derive(Clone)]
enum CostSpec {
    Weight,
    Model { path: PathBuf, cost: Arc<LearnedCost> },
}

impl CostSpec {
    fn load_model(path: &Path, scale: f64) -> anyhow::Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            bail!("--weight-scale must be positive");
        }
        let model = formats::load_model(path)?;
        let cost = LearnedCost::new(model, scale).map_err(|e| anyhow!("{}: {e}", path.display()))?;
        Ok(CostSpec::Model { path: path.to_path_buf(), cost: Arc::new(cost) })
    }

    fn parse(spec: &str, scale: f64) -> anyhow::Result<Self> {
        match spec.split_once(':') {
            None if spec == "weight" => Ok(CostSpec::Weight),
            Some(("model", path)) if !path.is_empty() => Self::load_model(Path::new(path), scale),
            _ => bail!("cost must be `weight` or `model:PATH`, got `{spec}`"),
        }
    }

    fn label(&self) -> String {
        match self {
            CostSpec::Weight => "weight".into(),
            CostSpec::Model { path, .. } => format!("model:{}", path.display()),
        }
    }
}

fn prove_one(problem: &Problem, cost: &CostSpec, limits: &Limits) -> synthprove_core::SaturationRun {
    let weight = clause_weight_cost();
    let cost: &dyn CostFunction = match cost {
        CostSpec::Weight => &weight,
        CostSpec::Model { cost, .. } => cost.as_ref(),
    };
    let clock = StdClock::start();
    Saturator::new(cost).ratio(limits.ratio).budget(limits.budget).clock(&clock).run(&problem.clauses())
}

fn szs_status(s: Status) -> &'static str {
    match s {
        Status::RefutationFound => "Unsatisfiable",
        Status::Saturated => "Satisfiable",
        Status::BudgetExhausted => "GaveUp",
    }
}

/// Exit code 0 when refuted and 1 otherwise.
pub fn prove(args: &ProveArgs, file: &FileConfig) -> anyhow::Result<i32> {
    let limits = args.budget.resolve(file)?;
    let scale = pick(args.weight_scale, &file.weight_scale, DEFAULT_WEIGHT_SCALE);
    let cost = match pick(args.cost.clone(), &file.cost, "weight".into()).as_str() {
        "weight" => CostSpec::Weight,
        "model" => {
            let path = args.model.clone().or_else(|| file.model.clone()).ok_or_else(|| anyhow!("--cost model needs --model PATH"))?;
            CostSpec::load_model(&path, scale)?
        }
        other => bail!("--cost must be `weight` or `model`, got `{other}`"),
    };
    let root = args.axiom_root.clone().or_else(|| file.axiom_root.clone());
    let problem = load_problem(&args.problem, root.as_deref())?;
    let run = prove_one(&problem, &cost, &limits);
    let r = &run.result;
    let mut out = std::io::stdout().lock();
    writeln!(out, "% SZS status {} for {}", szs_status(r.status), problem.name)?;
    writeln!(out, "% status: {}", status_name(r.status))?;
    writeln!(
        out,
        "% generated: {}  processed: {}  selections: {}  seconds: {:.3}",
        r.stats.generated_count, r.stats.processed_count, r.stats.steps, r.stats.elapsed_secs
    )?;
    if args.proof && r.status == Status::RefutationFound {
        writeln!(out, "% SZS output start CNFRefutation for {}", problem.name)?;
        write!(out, "{}", proof_trace(&r.proof_clauses, &run.log, &problem.signature))?;
        writeln!(out, "% SZS output end CNFRefutation for {}", problem.name)?;
    }
    Ok(if r.status == Status::RefutationFound { 0 } else { 1 })
}

fn parent_name(p: &ParentRef) -> String {
    match *p {
        ParentRef::Axiom(k) => format!("ax{k}"),
        ParentRef::Walk(k) => format!("w{}", k + 1),
    }
}

fn walk_lines(walk: &[WalkStep], problem: &Problem) -> Vec<String> {
    walk.iter()
        .enumerate()
        .map(|(i, s)| {
            let rule = match s.rule {
                synthprove_core::InferenceRule::Resolution { .. } => "resolution",
                synthprove_core::InferenceRule::Factoring { .. } => "factoring",
            };
            let parents: Vec<String> = s.parents.iter().map(parent_name).collect();
            format!("  w{} = {rule}({}): {}", i + 1, parents.join(","), s.clause.display(&problem.signature))
        })
        .collect()
}

pub struct GenerateSummary {
    pub written: usize,
    pub failed: usize,
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "axioms".into())
}

pub fn generate(args: &GenerateArgs, file: &FileConfig) -> anyhow::Result<GenerateSummary> {
    let steps = pick(args.steps, &file.steps, 10);
    if steps == 0 {
        bail!("--steps must be at least 1");
    }
    let seed = pick(args.seed, &file.seed, 0);
    let defaults = ProposerConfig::default();
    let cfg = ProposerConfig {
        steps,
        max_restarts: pick(args.max_restarts, &file.max_restarts, defaults.max_restarts),
        max_weight: pick(args.max_weight, &file.max_weight, defaults.max_weight),
        linear_parents: config::parse_linear_parents(&pick(args.linear_parents.clone(), &file.linear_parents, "all".into()))?,
        reject_axiom_subsumed: defaults.reject_axiom_subsumed,
    };
    let root = args.axiom_root.clone().or_else(|| file.axiom_root.clone());
    let source = load_problem(&args.axioms, root.as_deref())?;
    if !source.negated_conjecture.is_empty() {
        warn!("{}: ignoring {} negated conjecture clause(s)", args.axioms.display(), source.negated_conjecture.len());
    }
    let axiom_set = stem(&args.axioms);
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;

    let results: Vec<_> = pool(args.jobs, file)?.install(|| {
        (0..args.count)
            .into_par_iter()
            .map(|i| propose_theorem(&source.axioms, &cfg, derive_seed(seed, i as u64)))
            .collect()
    });

    let mut manifest = String::new();
    let mut summary = GenerateSummary { written: 0, failed: 0 };
    for (i, result) in results.into_iter().enumerate() {
        let theorem_seed = derive_seed(seed, i as u64);
        let row = match result {
            Ok(t) => {
                let name = format!("{axiom_set}_{seed}_{i}");
                let file_name = format!("{name}.p");
                let text = theorem_file(&t, &source, &name, &axiom_set, seed, i);
                let path = args.out.join(&file_name);
                fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
                summary.written += 1;
                json!({
                    "index": i,
                    "file": file_name,
                    "axiom_set": axiom_set,
                    "seed": seed,
                    "theorem_seed": theorem_seed,
                    "steps": t.steps,
                    "restarts": t.restarts,
                    "conjecture": t.conjecture.display(&source.signature).to_string(),
                    "conjecture_weight": t.conjecture.weight(),
                })
            }
            Err(e) => {
                warn!("theorem {i}: {e}");
                summary.failed += 1;
                json!({
                    "index": i,
                    "axiom_set": axiom_set,
                    "seed": seed,
                    "theorem_seed": theorem_seed,
                    "error": e.to_string(),
                })
            }
        };
        manifest.push_str(&row.to_string());
        manifest.push('\n');
    }
    let manifest_path = args.out.join("manifest.jsonl");
    fs::write(&manifest_path, manifest).with_context(|| format!("writing {}", manifest_path.display()))?;
    println!(
        "wrote {}/{} theorems to {} ({} failed)",
        summary.written,
        args.count,
        args.out.display(),
        summary.failed
    );
    if summary.written == 0 && args.count > 0 {
        bail!("no theorem could be generated from {}", args.axioms.display());
    }
    Ok(summary)
}

fn theorem_file(t: &SyntheticTheorem, source: &Problem, name: &str, axiom_set: &str, seed: u64, index: usize) -> String {
    let problem = make_problem(t, &source.signature, name);
    let mut header = vec![
        format!("synthetic theorem {name}"),
        format!("axiom set {axiom_set}, seed {seed}, index {index}, theorem seed {}", t.seed),
        format!("steps {}, restarts {}", t.steps, t.restarts),
        format!("conjecture: {}", t.conjecture.display(&problem.signature)),
        "walk:".into(),
    ];
    header.extend(walk_lines(&t.walk, &problem));
    write_problem(&problem, &header)
}

/// `.p` files of a directory in name order.
pub fn problem_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "p"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no problems found in {}", dir.display());
    }
    Ok(files)
}

fn load_all(files: &[PathBuf], root: Option<&Path>) -> Vec<Problem> {
    files
        .iter()
        .filter_map(|f| match load_problem(f, root) {
            Ok(p) => Some(p),
            Err(e) => {
                warn!("skipping {e}");
                None
            }
        })
        .collect()
}

fn manifest_axiom_set(dir: &Path) -> Option<String> {
    let text = fs::read_to_string(dir.join("manifest.jsonl")).ok()?;
    let row: serde_json::Value = serde_json::from_str(text.lines().next()?).ok()?;
    row.get("axiom_set")?.as_str().map(str::to_string)
}

pub struct MineSummary {
    pub meta: DatasetMeta,
}

pub fn mine(args: &MineArgs, file: &FileConfig) -> anyhow::Result<MineSummary> {
    let limits = args.budget.resolve(file)?;
    let seed = pick(args.seed, &file.seed, 0);
    let root = args.axiom_root.clone().or_else(|| file.axiom_root.clone());
    let files = problem_files(&args.dir)?;
    let problems = load_all(&files, root.as_deref());
    if problems.is_empty() {
        bail!("no problems found in {}", args.dir.display());
    }
    let cfg = MiningConfig { budget: limits.budget, ratio: limits.ratio, seed };
    let mined: Vec<_> = pool(args.jobs, file)?.install(|| {
        problems
            .par_iter()
            .enumerate()
            .map(|(i, p)| {
                let clock = StdClock::start();
                mine_problem(p, i as u64, &cfg, Some(&clock))
            })
            .collect()
    });
    let proved = mined.iter().filter(|m| m.status == Status::RefutationFound).count();
    let examples: Vec<TrainingExample> = mined.iter().flat_map(|m| m.examples.iter().cloned()).collect();
    let positives = examples.iter().filter(|e| e.label == 1).count();
    let meta = DatasetMeta {
        version: DATASET_VERSION,
        seed,
        axiom_set: manifest_axiom_set(&args.dir).unwrap_or_else(|| stem(&args.dir)),
        max_clauses: Some(limits.max_clauses),
        timeout_secs: (limits.timeout_secs > 0.0).then_some(limits.timeout_secs),
        age_cost_ratio: config::ratio_string(limits.ratio),
        problems: problems.len(),
        proved,
        examples: examples.len(),
        positives,
        negatives: examples.len() - positives,
        feature_schema_hash: feature_schema_hash(),
    };
    formats::write_dataset(&args.out, &examples)?;
    formats::write_json(&formats::meta_path(&args.out), &meta)?;
    println!(
        "proved {}/{} problems ({:.1}%), {} examples ({} positive, {} negative)",
        proved,
        problems.len(),
        100.0 * proved as f64 / problems.len() as f64,
        meta.examples,
        meta.positives,
        meta.negatives
    );
    Ok(MineSummary { meta })
}

/// Splits examples by theorem so no theorem sits on both sides.
pub fn split_by_theorem(
    examples: &[TrainingExample],
    fraction: f64,
    seed: u64,
) -> anyhow::Result<(Vec<TrainingExample>, Vec<TrainingExample>)> {
    if !(fraction > 0.0 && fraction < 1.0) {
        bail!("--validation-fraction must lie strictly between 0 and 1");
    }
    let mut ids: Vec<&str> = Vec::new();
    for e in examples {
        if ids.last() != Some(&e.theorem_id.as_str()) && !ids.contains(&e.theorem_id.as_str()) {
            ids.push(&e.theorem_id);
        }
    }
    if ids.len() < 2 {
        bail!("a validation split needs examples from at least two theorems");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, 0x7661_6c69));
    ids.shuffle(&mut rng);
    let take = ((fraction * ids.len() as f64).round() as usize).clamp(1, ids.len() - 1);
    let held: std::collections::BTreeSet<&str> = ids[..take].iter().copied().collect();
    let (val, train) = examples.iter().cloned().partition(|e| held.contains(e.theorem_id.as_str()));
    Ok((train, val))
}

#[derive(Serialize)]
struct HistoryRow {
    run: usize,
    learning_rate: f64,
    seed: u64,
    epoch: usize,
    train_loss: f64,
    train_accuracy: f64,
    validation_loss: f64,
    validation_accuracy: f64,
    selected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct TrainMeta {
    pub learning_rate: f64,
    pub seed: u64,
    pub best_epoch: usize,
    pub validation_accuracy: f64,
    pub train_examples: usize,
    pub validation_examples: usize,
    pub runs: usize,
}

pub fn train(args: &TrainArgs, file: &FileConfig) -> anyhow::Result<TrainMeta> {
    let seed = pick(args.seed, &file.seed, 0);
    let grid = pick(args.grid.clone(), &file.grid, "full".into());
    let (grid_rates, grid_seeds): (Vec<f64>, usize) = match grid.as_str() {
        "full" => (LEARNING_RATE_GRID.to_vec(), 5),
        "desk" => (vec![3e-3, 1e-3, 3e-4], 2),
        other => bail!("--grid must be `full` or `desk`, got `{other}`"),
    };
    let rates = if !args.learning_rate.is_empty() {
        args.learning_rate.clone()
    } else {
        file.learning_rate.clone().unwrap_or(grid_rates)
    };
    let seeds = pick(args.seeds, &file.seeds, grid_seeds);
    if rates.is_empty() || seeds == 0 {
        bail!("the grid needs at least one learning rate and one seed");
    }
    let defaults = TrainConfig::default();
    let base = TrainConfig {
        batch_size: pick(args.batch_size, &file.batch_size, defaults.batch_size),
        max_epochs: pick(args.max_epochs, &file.max_epochs, defaults.max_epochs),
        patience: pick(args.patience, &file.patience, defaults.patience),
        ..defaults
    };

    let data = formats::read_dataset(&args.dataset)?;
    let (train_set, val_set) = match &args.validation {
        Some(p) => (data, formats::read_dataset(p)?),
        None => split_by_theorem(&data, pick(args.validation_fraction, &file.validation_fraction, 0.1), seed)?,
    };
    info!("{} training and {} validation examples", train_set.len(), val_set.len());

    let configs: Vec<TrainConfig> = rates
        .iter()
        .flat_map(|&lr| {
            let base = &base;
            (0..seeds).map(move |k| TrainConfig { learning_rate: lr, seed: derive_seed(seed, k as u64), ..base.clone() })
        })
        .collect();
    let runs: Vec<Result<(synthprove_core::MlpModel, TrainHistory), _>> = pool(args.jobs, file)?
        .install(|| configs.par_iter().map(|c| mlp_train(&train_set, Validation::Set(&val_set), c)).collect());

    let mut best: Option<(usize, f64)> = None;
    let mut outcomes = Vec::with_capacity(runs.len());
    for (i, (run, c)) in runs.into_iter().zip(&configs).enumerate() {
        let (model, history) = run.with_context(|| format!("training at learning rate {}", c.learning_rate))?;
        println!(
            "run {i}: lr {:e} seed {:#018x}: validation accuracy {:.4} at epoch {} of {}",
            c.learning_rate,
            c.seed,
            history.best_validation_accuracy,
            history.best_epoch,
            history.epochs.len()
        );
        if best.is_none_or(|(_, acc)| history.best_validation_accuracy > acc) {
            best = Some((i, history.best_validation_accuracy));
        }
        outcomes.push((model, history));
    }
    let (best_i, _) = best.expect("at least one run");

    if let Some(path) = &args.history {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
        for (i, ((_, h), c)) in outcomes.iter().zip(&configs).enumerate() {
            for e in &h.epochs {
                w.serialize(HistoryRow {
                    run: i,
                    learning_rate: c.learning_rate,
                    seed: c.seed,
                    epoch: e.epoch,
                    train_loss: e.train_loss,
                    train_accuracy: e.train_accuracy,
                    validation_loss: e.validation_loss,
                    validation_accuracy: e.validation_accuracy,
                    selected: i == best_i,
                })?;
            }
        }
        w.flush()?;
    }

    let (model, history) = &outcomes[best_i];
    formats::save_model(model, &args.out)?;
    let meta = TrainMeta {
        learning_rate: configs[best_i].learning_rate,
        seed: configs[best_i].seed,
        best_epoch: history.best_epoch,
        validation_accuracy: history.best_validation_accuracy,
        train_examples: train_set.len(),
        validation_examples: val_set.len(),
        runs: configs.len(),
    };
    formats::write_json(&formats::meta_path(&args.out), &meta)?;
    println!(
        "selected run {best_i} (lr {:e}): validation accuracy {:.4}; model written to {}",
        meta.learning_rate,
        meta.validation_accuracy,
        args.out.display()
    );
    Ok(meta)
}

pub fn eval(args: &EvalArgs, file: &FileConfig) -> anyhow::Result<RunReport> {
    let limits = args.budget.resolve(file)?;
    let scale = pick(args.weight_scale, &file.weight_scale, DEFAULT_WEIGHT_SCALE);
    let specs: Vec<String> = if args.cost.is_empty() {
        vec![file.cost.clone().unwrap_or_else(|| "weight".into())]
    } else {
        args.cost.clone()
    };
    let costs = specs.iter().map(|s| CostSpec::parse(s, scale)).collect::<anyhow::Result<Vec<_>>>()?;
    let root = args.axiom_root.clone().or_else(|| file.axiom_root.clone());
    let problems = load_all(&problem_files(&args.dir)?, root.as_deref());
    if problems.is_empty() {
        bail!("no problems found in {}", args.dir.display());
    }
    let tasks: Vec<(&CostSpec, &Problem)> = costs.iter().flat_map(|c| problems.iter().map(move |p| (c, p))).collect();
    let rows: Vec<RunRow> = pool(args.jobs, file)?.install(|| {
        tasks
            .par_iter()
            .map(|(c, p)| {
                let run = prove_one(p, c, &limits);
                RunRow::new(&p.name, &c.label(), run.result.status, &run.result.stats)
            })
            .collect()
    });
    let report = RunReport { rows };
    print!("{}", report.table());
    let labels = report.costs();
    for other in labels.iter().skip(1) {
        match report.common_medians(&labels[0], other) {
            Some((a, b, n)) => println!(
                "solved by both {} and {}: {n}; median generated {a:.1} vs {b:.1} ({:.3}x)",
                labels[0],
                other,
                b / a.max(1.0)
            ),
            None => println!("no problem solved by both {} and {}", labels[0], other),
        }
    }
    if let Some(path) = &args.csv {
        report.write_csv(path)?;
    }
    Ok(report)
}
