//! On-disk formats: the JSON-lines dataset with its metadata sidecar, and
//! the JSON model file.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use synthprove_core::mlp::Dense;
use synthprove_core::{feature_schema_hash, MlpModel, ModelError, ProblemFeatures, TrainingExample, INPUT_DIM};

pub const DATASET_VERSION: u32 = 1;
pub const MODEL_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Row { path: String, line: usize, message: String },
    #[error("{path}: malformed file: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: format version {found} is not supported (expected {expected})")]
    Version { path: String, found: u64, expected: u32 },
    #[error("{path}: the model was trained on a different feature layout")]
    FeatureSchema { path: String },
    #[error("{path}: {source}")]
    Model { path: String, source: ModelError },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> FormatError + '_ {
    move |source| FormatError::Io { path: path.display().to_string(), source }
}

#[derive(Serialize, Deserialize)]
struct ExampleRow {
    theorem_id: String,
    clause_id: u32,
    label: u8,
    features: Vec<f64>,
}

pub fn write_dataset(path: &Path, examples: &[TrainingExample]) -> Result<(), FormatError> {
    let mut w = BufWriter::new(File::create(path).map_err(io_err(path))?);
    for ex in examples {
        let row = ExampleRow {
            theorem_id: ex.theorem_id.clone(),
            clause_id: ex.clause_id,
            label: ex.label,
            features: ex.features.0.to_vec(),
        };
        serde_json::to_writer(&mut w, &row).map_err(|e| FormatError::Io { path: path.display().to_string(), source: e.into() })?;
        w.write_all(b"\n").map_err(io_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

pub fn read_dataset(path: &Path) -> Result<Vec<TrainingExample>, FormatError> {
    let r = BufReader::new(File::open(path).map_err(io_err(path))?);
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |message: String| FormatError::Row { path: path.display().to_string(), line: i + 1, message };
        let row: ExampleRow = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
        let features: [f64; INPUT_DIM] = row
            .features
            .try_into()
            .map_err(|v: Vec<f64>| bad(format!("expected {INPUT_DIM} features, found {}", v.len())))?;
        if row.label > 1 {
            return Err(bad(format!("label must be 0 or 1, found {}", row.label)));
        }
        out.push(TrainingExample {
            theorem_id: row.theorem_id,
            clause_id: row.clause_id,
            label: row.label,
            features: ProblemFeatures(features),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub version: u32,
    pub seed: u64,
    pub axiom_set: String,
    pub max_clauses: Option<usize>,
    pub timeout_secs: Option<f64>,
    pub age_cost_ratio: String,
    pub problems: usize,
    pub proved: usize,
    pub examples: usize,
    pub positives: usize,
    pub negatives: usize,
    pub feature_schema_hash: u64,
}

/// `data.jsonl` → `data.jsonl.meta.json`.
pub fn meta_path(dataset: &Path) -> PathBuf {
    let mut name = dataset.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), FormatError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| FormatError::Io { path: path.display().to_string(), source: e.into() })?;
    text.push('\n');
    std::fs::write(path, text).map_err(io_err(path))
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    layer_sizes: Vec<usize>,
    /// Row-major `outputs × inputs` per layer.
    weights: Vec<Vec<f64>>,
    biases: Vec<Vec<f64>>,
    feature_schema_hash: u64,
}

pub fn model_to_json(model: &MlpModel) -> String {
    let file = ModelFile {
        version: MODEL_VERSION,
        layer_sizes: model.layer_sizes(),
        weights: model.layers().iter().map(|l| l.weights.clone()).collect(),
        biases: model.layers().iter().map(|l| l.biases.clone()).collect(),
        feature_schema_hash: feature_schema_hash(),
    };
    let mut text = serde_json::to_string(&file).expect("model serialises");
    text.push('\n');
    text
}

pub fn save_model(model: &MlpModel, path: &Path) -> Result<(), FormatError> {
    std::fs::write(path, model_to_json(model)).map_err(io_err(path))
}

pub fn model_from_json(text: &str, path: &Path) -> Result<MlpModel, FormatError> {
    let p = || path.display().to_string();
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| FormatError::Schema { path: p(), message: e.to_string() })?;
    match value.get("version").and_then(serde_json::Value::as_u64) {
        Some(v) if v == MODEL_VERSION as u64 => {}
        Some(found) => return Err(FormatError::Version { path: p(), found, expected: MODEL_VERSION }),
        None => return Err(FormatError::Schema { path: p(), message: "missing version".into() }),
    }
    let file: ModelFile =
        serde_json::from_value(value).map_err(|e| FormatError::Schema { path: p(), message: e.to_string() })?;
    if file.feature_schema_hash != feature_schema_hash() {
        return Err(FormatError::FeatureSchema { path: p() });
    }
    let n = file.layer_sizes.len();
    if n < 2 || file.weights.len() != n - 1 || file.biases.len() != n - 1 {
        return Err(FormatError::Schema { path: p(), message: "layer count does not match layer_sizes".into() });
    }
    let layers = file
        .weights
        .into_iter()
        .zip(file.biases)
        .enumerate()
        .map(|(i, (weights, biases))| Dense { inputs: file.layer_sizes[i], outputs: file.layer_sizes[i + 1], weights, biases })
        .collect();
    MlpModel::from_layers(layers).map_err(|source| FormatError::Model { path: p(), source })
}

pub fn load_model(path: &Path) -> Result<MlpModel, FormatError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    model_from_json(&text, path)
}
