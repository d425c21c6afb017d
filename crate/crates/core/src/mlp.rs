//! Dense ReLU network with a logistic output, trained with Adam on binary
//! cross-entropy, and the learned cost built on top of it.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dataset::TrainingExample;
use crate::features::{ProblemFeatures, INPUT_DIM};
use crate::logic::Clause;
use crate::proposer::derive_seed;
use crate::saturation::{CostContext, CostFunction};

/// 38 inputs, hidden layers of 256, 64, 16 and 4 units, one output.
pub const DEFAULT_LAYER_SIZES: [usize; 6] = [INPUT_DIM, 256, 64, 16, 4, 1];

pub const ADAM_BETA1: f64 = 0.9;
pub const ADAM_BETA2: f64 = 0.999;
pub const ADAM_EPSILON: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("expected an input of length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("layer sizes must have at least two entries, all positive, ending in 1")]
    BadLayout,
    #[error("layer {0} has a weight or bias of the wrong length")]
    BadLayer(usize),
    #[error("non-finite parameter in layer {0}")]
    NonFinite(usize),
}

/// Fully connected layer; `weights` is `outputs × inputs`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub inputs: usize,
    pub outputs: usize,
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
}

impl Dense {
    fn row(&self, o: usize) -> &[f64] {
        &self.weights[o * self.inputs..(o + 1) * self.inputs]
    }

    fn forward_into(&self, x: &[f64], out: &mut [f64]) {
        for (o, z) in out.iter_mut().enumerate() {
            *z = self.biases[o] + dot(self.row(o), x);
        }
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 4];
    let chunks = a.len() / 4;
    for k in 0..chunks {
        for (j, slot) in acc.iter_mut().enumerate() {
            *slot += a[4 * k + j] * b[4 * k + j];
        }
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for k in chunks * 4..a.len() {
        s += a[k] * b[k];
    }
    s
}

#[inline]
fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + libm::exp(-z))
    } else {
        let e = libm::exp(z);
        e / (1.0 + e)
    }
}

/// Binary cross-entropy of `sigmoid(z)` against `y`, computed from the logit.
pub fn bce_with_logit(z: f64, y: f64) -> f64 {
    z.max(0.0) - z * y + libm::log1p(libm::exp(-z.abs()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MlpModel {
    layers: Vec<Dense>,
}

/// Per-layer gradients with the same shapes as the model's parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Gradients {
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
}

impl Gradients {
    fn zeros_like(m: &MlpModel) -> Self {
        Gradients {
            weights: m.layers.iter().map(|l| vec![0.0; l.weights.len()]).collect(),
            biases: m.layers.iter().map(|l| vec![0.0; l.biases.len()]).collect(),
        }
    }

    fn clear(&mut self) {
        self.weights.iter_mut().chain(self.biases.iter_mut()).for_each(|g| g.fill(0.0));
    }
}

fn check_layout(sizes: &[usize]) -> Result<(), ModelError> {
    if sizes.len() < 2 || sizes.contains(&0) || sizes[sizes.len() - 1] != 1 {
        return Err(ModelError::BadLayout);
    }
    Ok(())
}

impl MlpModel {
    /// He-style uniform initialisation `U(-√(6/fan_in), √(6/fan_in))`, zero biases.
    pub fn new(sizes: &[usize], seed: u64) -> Result<Self, ModelError> {
        check_layout(sizes)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let layers = sizes
            .windows(2)
            .map(|w| {
                let limit = libm::sqrt(6.0 / w[0] as f64);
                Dense {
                    inputs: w[0],
                    outputs: w[1],
                    weights: (0..w[0] * w[1]).map(|_| rng.gen_range(-limit..limit)).collect(),
                    biases: vec![0.0; w[1]],
                }
            })
            .collect();
        Ok(MlpModel { layers })
    }

    pub fn zeros(sizes: &[usize]) -> Result<Self, ModelError> {
        check_layout(sizes)?;
        let layers = sizes
            .windows(2)
            .map(|w| Dense { inputs: w[0], outputs: w[1], weights: vec![0.0; w[0] * w[1]], biases: vec![0.0; w[1]] })
            .collect();
        Ok(MlpModel { layers })
    }

    pub fn from_layers(layers: Vec<Dense>) -> Result<Self, ModelError> {
        if layers.is_empty() || layers[layers.len() - 1].outputs != 1 {
            return Err(ModelError::BadLayout);
        }
        for (i, l) in layers.iter().enumerate() {
            if l.inputs == 0 || l.outputs == 0 || l.weights.len() != l.inputs * l.outputs || l.biases.len() != l.outputs {
                return Err(ModelError::BadLayer(i));
            }
            if i > 0 && layers[i - 1].outputs != l.inputs {
                return Err(ModelError::BadLayout);
            }
            if !l.weights.iter().chain(&l.biases).all(|v| v.is_finite()) {
                return Err(ModelError::NonFinite(i));
            }
        }
        Ok(MlpModel { layers })
    }

    pub fn layers(&self) -> &[Dense] {
        &self.layers
    }

    pub fn layers_mut(&mut self) -> &mut [Dense] {
        &mut self.layers
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        core::iter::once(self.layers[0].inputs).chain(self.layers.iter().map(|l| l.outputs)).collect()
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].inputs
    }

    pub fn parameter_count(&self) -> usize {
        self.layers.iter().map(|l| l.weights.len() + l.biases.len()).sum()
    }

    /// Pre-activation of the output unit.
    pub fn logit(&self, x: &[f64]) -> Result<f64, ModelError> {
        if x.len() != self.input_dim() {
            return Err(ModelError::DimensionMismatch { expected: self.input_dim(), found: x.len() });
        }
        let mut cur = x.to_vec();
        let mut next = Vec::new();
        let last = self.layers.len() - 1;
        for (i, layer) in self.layers.iter().enumerate() {
            next.clear();
            next.resize(layer.outputs, 0.0);
            layer.forward_into(&cur, &mut next);
            if i < last {
                next.iter_mut().for_each(|v| *v = v.max(0.0));
            }
            core::mem::swap(&mut cur, &mut next);
        }
        Ok(cur[0])
    }

    /// Probability that the clause described by `x` belongs to a proof.
    pub fn forward(&self, x: &[f64]) -> Result<f64, ModelError> {
        self.logit(x).map(sigmoid)
    }

    /// Mean binary cross-entropy over a batch and its gradient.
    /// `xs` holds `ys.len()` rows of `input_dim()` values.
    pub fn loss_and_gradient(&self, xs: &[f64], ys: &[f64]) -> Result<(f64, Gradients), ModelError> {
        let mut ws = Workspace::new(self, ys.len());
        let mut grads = Gradients::zeros_like(self);
        let loss = ws.loss_and_gradient(self, xs, ys, &mut grads, None)?;
        Ok((loss, grads))
    }
}

/// Activation buffers for batched forward and backward passes.
struct Workspace {
    batch: usize,
    /// Post-activation outputs of every layer, `batch × width`, input first.
    acts: Vec<Vec<f64>>,
    delta: Vec<f64>,
    delta_prev: Vec<f64>,
}

impl Workspace {
    fn new(m: &MlpModel, batch: usize) -> Self {
        let sizes = m.layer_sizes();
        let widest = *sizes.iter().max().expect("nonempty");
        Workspace {
            batch,
            acts: sizes.iter().map(|s| vec![0.0; s * batch]).collect(),
            delta: vec![0.0; widest * batch],
            delta_prev: vec![0.0; widest * batch],
        }
    }

    /// Forward pass over `n ≤ batch` rows; returns the output logits.
    fn forward(&mut self, m: &MlpModel, xs: &[f64], n: usize) -> &[f64] {
        let d = m.input_dim();
        self.acts[0][..n * d].copy_from_slice(&xs[..n * d]);
        let last = m.layers.len() - 1;
        for (l, layer) in m.layers.iter().enumerate() {
            let (lo, hi) = self.acts.split_at_mut(l + 1);
            let input = &lo[l];
            let output = &mut hi[0];
            for b in 0..n {
                let x = &input[b * layer.inputs..(b + 1) * layer.inputs];
                let out = &mut output[b * layer.outputs..(b + 1) * layer.outputs];
                layer.forward_into(x, out);
                if l < last {
                    out.iter_mut().for_each(|v| *v = v.max(0.0));
                }
            }
        }
        &self.acts[last + 1][..n]
    }

    /// Accumulates the gradient of the mean loss into `grads` and returns
    /// the mean loss. Counts correct predictions into `correct` if given.
    fn loss_and_gradient(
        &mut self,
        m: &MlpModel,
        xs: &[f64],
        ys: &[f64],
        grads: &mut Gradients,
        correct: Option<&mut usize>,
    ) -> Result<f64, ModelError> {
        let n = ys.len();
        let d = m.input_dim();
        if xs.len() != n * d {
            return Err(ModelError::DimensionMismatch { expected: n * d, found: xs.len() });
        }
        assert!(n <= self.batch);
        self.forward(m, xs, n);
        let last = m.layers.len() - 1;
        let inv_n = 1.0 / n as f64;
        let mut loss = 0.0;
        let mut hits = 0usize;
        for b in 0..n {
            let z = self.acts[last + 1][b];
            loss += bce_with_logit(z, ys[b]);
            hits += ((z >= 0.0) == (ys[b] >= 0.5)) as usize;
            self.delta[b] = (sigmoid(z) - ys[b]) * inv_n;
        }
        if let Some(c) = correct {
            *c += hits;
        }
        for l in (0..=last).rev() {
            let layer = &m.layers[l];
            let input = &self.acts[l];
            let gw = &mut grads.weights[l];
            let gb = &mut grads.biases[l];
            for b in 0..n {
                let x = &input[b * layer.inputs..(b + 1) * layer.inputs];
                let delta = &self.delta[b * layer.outputs..(b + 1) * layer.outputs];
                for (o, &dv) in delta.iter().enumerate() {
                    if dv != 0.0 {
                        gb[o] += dv;
                        axpy(&mut gw[o * layer.inputs..(o + 1) * layer.inputs], dv, x);
                    }
                }
            }
            if l == 0 {
                break;
            }
            let prev = &mut self.delta_prev[..n * layer.inputs];
            prev.fill(0.0);
            for b in 0..n {
                let delta = &self.delta[b * layer.outputs..(b + 1) * layer.outputs];
                let row = &mut prev[b * layer.inputs..(b + 1) * layer.inputs];
                for (o, &dv) in delta.iter().enumerate() {
                    if dv != 0.0 {
                        axpy(row, dv, layer.row(o));
                    }
                }
                // ReLU derivative from the post-activation values
                let act = &input[b * layer.inputs..(b + 1) * layer.inputs];
                for (r, a) in row.iter_mut().zip(act) {
                    if *a <= 0.0 {
                        *r = 0.0;
                    }
                }
            }
            core::mem::swap(&mut self.delta, &mut self.delta_prev);
        }
        Ok(loss * inv_n)
    }
}

/// Adam moment estimates for every parameter.
struct Adam {
    lr: f64,
    t: i32,
    m: Gradients,
    v: Gradients,
}

impl Adam {
    fn new(model: &MlpModel, lr: f64) -> Self {
        Adam { lr, t: 0, m: Gradients::zeros_like(model), v: Gradients::zeros_like(model) }
    }

    fn step(&mut self, model: &mut MlpModel, g: &Gradients) {
        self.t += 1;
        let c1 = 1.0 - libm::pow(ADAM_BETA1, self.t as f64);
        let c2 = 1.0 - libm::pow(ADAM_BETA2, self.t as f64);
        let lr = self.lr;
        let update = |p: &mut [f64], g: &[f64], m: &mut [f64], v: &mut [f64]| {
            for k in 0..p.len() {
                m[k] = ADAM_BETA1 * m[k] + (1.0 - ADAM_BETA1) * g[k];
                v[k] = ADAM_BETA2 * v[k] + (1.0 - ADAM_BETA2) * g[k] * g[k];
                let mh = m[k] / c1;
                let vh = v[k] / c2;
                p[k] -= lr * mh / (libm::sqrt(vh) + ADAM_EPSILON);
            }
        };
        for (l, layer) in model.layers.iter_mut().enumerate() {
            update(&mut layer.weights, &g.weights[l], &mut self.m.weights[l], &mut self.v.weights[l]);
            update(&mut layer.biases, &g.biases[l], &mut self.m.biases[l], &mut self.v.biases[l]);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    pub layer_sizes: Vec<usize>,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub max_epochs: usize,
    /// Epochs without a validation-accuracy improvement before stopping.
    pub patience: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            layer_sizes: DEFAULT_LAYER_SIZES.to_vec(),
            learning_rate: 1e-3,
            batch_size: 4096,
            max_epochs: 200,
            patience: 20,
            seed: 0,
        }
    }
}

/// Learning rates tried by the hyper-parameter grid.
pub const LEARNING_RATE_GRID: [f64; 5] = [1e-2, 3e-3, 1e-3, 3e-4, 1e-4];

pub enum Validation<'a> {
    /// Hold out this fraction of the (shuffled) training data.
    Fraction(f64),
    Set(&'a [TrainingExample]),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EpochStats {
    pub epoch: usize,
    pub train_loss: f64,
    pub train_accuracy: f64,
    pub validation_loss: f64,
    pub validation_accuracy: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrainHistory {
    pub epochs: Vec<EpochStats>,
    /// Epoch whose parameters were returned.
    pub best_epoch: usize,
    pub best_validation_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TrainError {
    #[error("training data needs at least two examples covering both labels")]
    DegenerateData,
    #[error("the validation set is empty")]
    EmptyValidation,
    #[error("invalid training configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("loss became non-finite at epoch {0}")]
    NonFiniteLoss(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Metrics {
    pub loss: f64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
}

/// Loss and classification metrics at threshold 0.5.
pub fn evaluate(model: &MlpModel, data: &[TrainingExample]) -> Metrics {
    if data.is_empty() {
        return Metrics::default();
    }
    let (mut tp, mut fp, mut tn, mut fneg) = (0usize, 0usize, 0usize, 0usize);
    let mut loss = 0.0;
    for ex in data {
        let z = model.logit(&ex.features.0).expect("38-element features");
        let y = ex.label as f64;
        loss += bce_with_logit(z, y);
        match (z >= 0.0, ex.label == 1) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, false) => tn += 1,
            (false, true) => fneg += 1,
        }
    }
    let n = data.len() as f64;
    let ratio = |a: usize, b: usize| if a + b == 0 { 0.0 } else { a as f64 / (a + b) as f64 };
    Metrics {
        loss: loss / n,
        accuracy: (tp + tn) as f64 / n,
        precision: ratio(tp, fp),
        recall: ratio(tp, fneg),
    }
}

fn both_labels(data: &[&TrainingExample]) -> bool {
    data.iter().any(|e| e.label == 1) && data.iter().any(|e| e.label == 0)
}

/// Mini-batch Adam on mean binary cross-entropy with early stopping on
/// validation accuracy. Returns the parameters of the best epoch.
pub fn mlp_train(
    data: &[TrainingExample],
    validation: Validation<'_>,
    cfg: &TrainConfig,
) -> Result<(MlpModel, TrainHistory), TrainError> {
    if !(cfg.learning_rate > 0.0 && cfg.learning_rate.is_finite()) {
        return Err(TrainError::InvalidConfig("learning rate must be positive"));
    }
    if cfg.batch_size == 0 || cfg.max_epochs == 0 {
        return Err(TrainError::InvalidConfig("batch size and epoch count must be positive"));
    }
    let all: Vec<&TrainingExample> = data.iter().collect();
    if all.len() < 2 || !both_labels(&all) {
        return Err(TrainError::DegenerateData);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, 0x7261_696e));
    let (train, valid): (Vec<&TrainingExample>, Vec<TrainingExample>) = match validation {
        Validation::Set(v) => (all, v.to_vec()),
        Validation::Fraction(f) => {
            if !(0.0..1.0).contains(&f) {
                return Err(TrainError::InvalidConfig("validation fraction must be in [0, 1)"));
            }
            let mut idx: Vec<usize> = (0..all.len()).collect();
            idx.shuffle(&mut rng);
            let n_valid = libm::round(all.len() as f64 * f) as usize;
            let valid = idx[..n_valid].iter().map(|&i| all[i].clone()).collect();
            let train = idx[n_valid..].iter().map(|&i| all[i]).collect();
            (train, valid)
        }
    };
    if valid.is_empty() {
        return Err(TrainError::EmptyValidation);
    }
    if train.len() < 2 || !both_labels(&train) {
        return Err(TrainError::DegenerateData);
    }

    let mut model = MlpModel::new(&cfg.layer_sizes, derive_seed(cfg.seed, 0x696e_6974))?;
    if model.input_dim() != INPUT_DIM {
        return Err(TrainError::Model(ModelError::DimensionMismatch { expected: INPUT_DIM, found: model.input_dim() }));
    }
    let batch = cfg.batch_size.min(train.len());
    let mut ws = Workspace::new(&model, batch);
    let mut grads = Gradients::zeros_like(&model);
    let mut adam = Adam::new(&model, cfg.learning_rate);
    let mut order: Vec<usize> = (0..train.len()).collect();
    let mut xs = vec![0.0; batch * INPUT_DIM];
    let mut ys = vec![0.0; batch];

    let mut history = TrainHistory { best_validation_accuracy: f64::NEG_INFINITY, ..Default::default() };
    let mut best = model.clone();
    for epoch in 1..=cfg.max_epochs {
        order.shuffle(&mut rng);
        let mut loss_sum = 0.0;
        let mut correct = 0usize;
        for chunk in order.chunks(batch) {
            for (r, &i) in chunk.iter().enumerate() {
                xs[r * INPUT_DIM..(r + 1) * INPUT_DIM].copy_from_slice(&train[i].features.0);
                ys[r] = train[i].label as f64;
            }
            let n = chunk.len();
            grads.clear();
            let loss = ws.loss_and_gradient(&model, &xs[..n * INPUT_DIM], &ys[..n], &mut grads, Some(&mut correct))?;
            if !loss.is_finite() {
                return Err(TrainError::NonFiniteLoss(epoch));
            }
            loss_sum += loss * n as f64;
            adam.step(&mut model, &grads);
        }
        let val = evaluate(&model, &valid);
        history.epochs.push(EpochStats {
            epoch,
            train_loss: loss_sum / train.len() as f64,
            train_accuracy: correct as f64 / train.len() as f64,
            validation_loss: val.loss,
            validation_accuracy: val.accuracy,
        });
        if val.accuracy > history.best_validation_accuracy {
            history.best_validation_accuracy = val.accuracy;
            history.best_epoch = epoch;
            best = model.clone();
        } else if epoch - history.best_epoch >= cfg.patience {
            break;
        }
    }
    Ok((best, history))
}

/// `(1 − p) + w / M`: model probability mixed with clause weight.
#[derive(Clone, Debug, PartialEq)]
pub struct LearnedCost {
    pub model: MlpModel,
    pub scale: f64,
}

pub const DEFAULT_WEIGHT_SCALE: f64 = 16.0;

impl LearnedCost {
    pub fn new(model: MlpModel, scale: f64) -> Result<Self, ModelError> {
        if model.input_dim() != INPUT_DIM {
            return Err(ModelError::DimensionMismatch { expected: INPUT_DIM, found: model.input_dim() });
        }
        assert!(scale > 0.0, "weight scale must be positive");
        Ok(LearnedCost { model, scale })
    }

    pub fn combine(probability: f64, weight: usize, scale: f64) -> f64 {
        (1.0 - probability) + weight as f64 / scale
    }

    pub fn probability(&self, features: &ProblemFeatures) -> f64 {
        self.model.forward(&features.0).expect("input dimension checked at construction")
    }
}

impl CostFunction for LearnedCost {
    fn cost(&self, clause: &Clause, ctx: &CostContext<'_>) -> f64 {
        let features = ProblemFeatures::from_stats(clause, ctx.origin, ctx.initial_stats);
        Self::combine(self.probability(&features), clause.weight(), self.scale)
    }
}
