//! Core of a small resolution theorem prover that trains its own clause
//! selection heuristic.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the
//! algorithmic pieces:
//! - [`logic`]: terms, literals, clauses and the signature they live in
//! - [`inference`]: unification, binary resolution and factoring
//! - [`subsume`]: θ-subsumption and order-subsumption
//! - [`saturation`]: the given-clause loop with age and cost queues
//! - [`proposer`]: random linear-resolution walks that produce valid theorems
//! - [`features`] / [`dataset`]: the 38-element clause encoding and example mining
//! - [`mlp`]: the dense clause scorer, its Adam trainer and the learned cost
//!
//! Parsing, file formats and the command line live in the `synthprove` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dataset;
pub mod features;
pub mod inference;
pub mod logic;
pub mod mlp;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
pub mod problem;
pub mod proposer;
pub mod saturation;
pub mod subsume;

pub use dataset::{mine_examples, mine_problem, MinedTheorem, MiningConfig, TrainingExample};
pub use features::{
    clause_features, problem_features, ClauseFeatures, ClauseOrigin, FeatureError,
    feature_schema_hash, InitialStats, ProblemFeatures, CLAUSE_FEATURE_COUNT, FEATURE_NAMES, INPUT_DIM,
};
pub use inference::{
    factors, mgu, resolvents, Inference, InferenceRule, Substitution, Unifiable, UnifyFailure,
};
pub use logic::{
    Clause, FunctorId, Literal, PredId, Signature, SignatureError, Symbol, SymbolKind, Term, Var,
};
pub use mlp::{
    mlp_train, LearnedCost, MlpModel, ModelError, TrainConfig, TrainError, TrainHistory,
    Validation, DEFAULT_LAYER_SIZES,
};
pub use problem::Problem;
pub use proposer::{
    derive_seed, make_problem, propose_theorem, replay_walk, LinearParents, ParentRef,
    ProposerConfig, ProposerError, ReplayError, SyntheticTheorem, WalkStep,
};
pub use saturation::{
    clause_weight_cost, negate_conjecture, proof_ancestors, saturate, AgeCostRatio, Budget,
    ClauseId, ClauseLog, ClauseRecord, Clock, CostContext, CostFunction, NegationError,
    ProofError, Provenance, SaturationResult, SaturationRun, SaturationStats, Saturator, Status,
};
pub use subsume::{is_variant, order_subsumes, theta_subsumes, theta_subsumes_with, Inclusion};
