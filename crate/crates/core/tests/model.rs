use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use synthprove_core::mlp::{evaluate, mlp_train, MlpModel, TrainConfig, Validation, DEFAULT_LAYER_SIZES};
use synthprove_core::{ProblemFeatures, TrainingExample};

/// Largest relative difference between analytic and central-difference
/// gradients of the mean loss over every parameter.
fn max_gradient_error(sizes: &[usize], seed: u64, batch: usize) -> f64 {
    let mut model = MlpModel::new(sizes, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
    let d = sizes[0];
    let xs: Vec<f64> = (0..batch * d).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let ys: Vec<f64> = (0..batch).map(|i| (i % 2) as f64).collect();
    let (_, grads) = model.loss_and_gradient(&xs, &ys).unwrap();
    let h = 1e-4;
    let mut worst = 0.0f64;
    for l in 0..model.layers().len() {
        let nw = model.layers()[l].weights.len();
        let nb = model.layers()[l].biases.len();
        for k in 0..nw + nb {
            let analytic = if k < nw { grads.weights[l][k] } else { grads.biases[l][k - nw] };
            let probe = |m: &mut MlpModel, delta: f64| {
                let layer = &mut m.layers_mut()[l];
                let p = if k < nw { &mut layer.weights[k] } else { &mut layer.biases[k - nw] };
                *p += delta;
            };
            probe(&mut model, h);
            let up = model.loss_and_gradient(&xs, &ys).unwrap().0;
            probe(&mut model, -2.0 * h);
            let down = model.loss_and_gradient(&xs, &ys).unwrap().0;
            probe(&mut model, h);
            let numeric = (up - down) / (2.0 * h);
            let scale = analytic.abs().max(numeric.abs());
            if scale > 0.0 {
                worst = worst.max((analytic - numeric).abs() / scale);
            }
        }
    }
    worst
}

#[test]
fn gradient_matches_finite_differences_on_small_model() {
    for seed in 0..3 {
        let err = max_gradient_error(&[38, 4, 1], seed, 5);
        assert!(err <= 1e-4, "seed {seed}: relative error {err}");
    }
}

#[test]
fn gradient_matches_finite_differences_on_deeper_model() {
    let err = max_gradient_error(&[38, 6, 5, 3, 1], 7, 5);
    assert!(err <= 1e-4, "relative error {err}");
}

fn toy_set(n: usize, seed: u64) -> Vec<TrainingExample> {
    // label = [x0 + 2 x1 > 1] on two informative inputs, the rest zero
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let mut f = [0.0f64; 38];
            loop {
                f[0] = rng.gen_range(-2.0..2.0);
                f[1] = rng.gen_range(-2.0..2.0);
                if (f[0] + 2.0 * f[1] - 1.0).abs() > 0.1 {
                    break;
                }
            }
            let label = (f[0] + 2.0 * f[1] > 1.0) as u8;
            TrainingExample { theorem_id: "toy".into(), clause_id: i as u32, label, features: ProblemFeatures(f) }
        })
        .collect()
}

#[test]
fn toy_rule_is_linearly_separable() {
    let data = toy_set(400, 1);
    assert!(data.iter().all(|e| (e.features.0[0] + 2.0 * e.features.0[1] > 1.0) == (e.label == 1)));
    assert!(data.iter().any(|e| e.label == 0) && data.iter().any(|e| e.label == 1));
}

#[test]
fn learns_separable_toy_set() {
    let data = toy_set(400, 1);
    let cfg = TrainConfig { batch_size: 32, max_epochs: 60, learning_rate: 3e-3, seed: 4, ..Default::default() };
    let (model, history) = mlp_train(&data, Validation::Fraction(0.2), &cfg).unwrap();
    let acc = evaluate(&model, &data).accuracy;
    assert!(acc >= 0.95, "train accuracy {acc}");
    assert!(history.best_epoch >= 1 && history.best_epoch <= history.epochs.len());
    assert_eq!(model.layer_sizes(), DEFAULT_LAYER_SIZES.to_vec());
}

#[test]
fn small_learning_rate_loss_does_not_climb() {
    let data = toy_set(300, 2);
    let cfg = TrainConfig { batch_size: 300, max_epochs: 30, patience: 1000, learning_rate: 1e-4, seed: 1, ..Default::default() };
    let (_, history) = mlp_train(&data, Validation::Set(&data), &cfg).unwrap();
    for w in history.epochs.windows(2) {
        assert!(w[1].train_loss <= w[0].train_loss * 1.01, "{:?}", w);
    }
}

#[test]
fn training_is_bit_reproducible() {
    let data = toy_set(200, 3);
    let cfg = TrainConfig { batch_size: 64, max_epochs: 5, seed: 8, ..Default::default() };
    let a = mlp_train(&data, Validation::Fraction(0.25), &cfg).unwrap();
    let b = mlp_train(&data, Validation::Fraction(0.25), &cfg).unwrap();
    assert_eq!(a, b);
}

#[test]
fn early_stopping_honours_patience() {
    let data = toy_set(200, 5);
    let cfg = TrainConfig { batch_size: 64, max_epochs: 200, patience: 3, seed: 2, ..Default::default() };
    let (_, h) = mlp_train(&data, Validation::Fraction(0.25), &cfg).unwrap();
    assert!(h.epochs.len() <= h.best_epoch + 3);
    let best = h.epochs.iter().map(|e| e.validation_accuracy).fold(0.0, f64::max);
    assert_eq!(best, h.best_validation_accuracy);
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn forward_output_is_a_probability(seed in 0u64..1000, x in prop::collection::vec(-1e3f64..1e3, 38)) {
        let model = MlpModel::new(&DEFAULT_LAYER_SIZES, seed).unwrap();
        let p = model.forward(&x).unwrap();
        prop_assert!(p.is_finite() && (0.0..=1.0).contains(&p));
    }
}
