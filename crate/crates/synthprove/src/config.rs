//! Settings file (`key = value` lines) merged under command-line flags.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use serde::Deserialize;
use synthprove_core::{AgeCostRatio, Budget, LinearParents};

pub const DEFAULT_TIMEOUT_SECS: f64 = 30.0;
pub const DEFAULT_MAX_CLAUSES: usize = 50_000;

/// Every key is optional; flags win over the file, the file wins over
/// built-in defaults.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub cost: Option<String>,
    pub model: Option<PathBuf>,
    pub timeout_secs: Option<f64>,
    pub max_clauses: Option<usize>,
    pub max_steps: Option<u64>,
    pub age_cost_ratio: Option<String>,
    pub axiom_root: Option<PathBuf>,
    pub steps: Option<usize>,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub linear_parents: Option<String>,
    pub max_weight: Option<usize>,
    pub max_restarts: Option<usize>,
    pub weight_scale: Option<f64>,
    pub learning_rate: Option<Vec<f64>>,
    pub grid: Option<String>,
    pub seeds: Option<usize>,
    pub batch_size: Option<usize>,
    pub max_epochs: Option<usize>,
    pub patience: Option<usize>,
    pub validation_fraction: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// First present value wins.
pub fn pick<T: Clone>(flag: Option<T>, file: &Option<T>, default: T) -> T {
    flag.or_else(|| file.clone()).unwrap_or(default)
}

/// `a:c` with both parts positive, e.g. `1:5`.
pub fn parse_ratio(s: &str) -> anyhow::Result<AgeCostRatio> {
    let (a, c) = s.split_once(':').ok_or_else(|| anyhow!("age:cost ratio must look like 1:5, got `{s}`"))?;
    let a: u32 = a.trim().parse().with_context(|| format!("bad age part in `{s}`"))?;
    let c: u32 = c.trim().parse().with_context(|| format!("bad cost part in `{s}`"))?;
    AgeCostRatio::new(a, c).ok_or_else(|| anyhow!("both parts of the age:cost ratio must be positive, got `{s}`"))
}

pub fn parse_linear_parents(s: &str) -> anyhow::Result<LinearParents> {
    match s {
        "all" => Ok(LinearParents::All),
        "axioms" => Ok(LinearParents::Axioms),
        other => bail!("--linear-parents must be `axioms` or `all`, got `{other}`"),
    }
}

pub fn ratio_string(r: AgeCostRatio) -> String {
    format!("{}:{}", r.age, r.cost)
}

/// A timeout of zero disables the wall-clock limit.
pub fn budget(max_clauses: usize, timeout_secs: f64, max_steps: Option<u64>) -> anyhow::Result<Budget> {
    if !(timeout_secs >= 0.0 && timeout_secs.is_finite()) {
        bail!("--timeout-secs must be a non-negative number");
    }
    Ok(Budget {
        max_steps,
        max_generated: Some(max_clauses),
        timeout_secs: (timeout_secs > 0.0).then_some(timeout_secs),
    })
}
