//! Flat clause encoding for the MLP scorer.
//!
//! Each clause is summarised by seven counts. A candidate clause is encoded
//! as its own seven counts, the sum, average, maximum and minimum of the
//! counts over the initial clauses, and three scalars (birth step, premise
//! count, number of initial clauses): 38 values in total.

use alloc::collections::BTreeSet;

use crate::logic::{Clause, Term};

pub const CLAUSE_FEATURE_COUNT: usize = 7;
pub const INPUT_DIM: usize = CLAUSE_FEATURE_COUNT * 5 + 3;

pub const FEATURE_NAMES: [&str; CLAUSE_FEATURE_COUNT] = [
    "negated_literals",
    "positive_literals",
    "atomic_terms",
    "distinct_predicates",
    "distinct_functors",
    "distinct_variables",
    "total_variables",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClauseFeatures(pub [f64; CLAUSE_FEATURE_COUNT]);

impl ClauseFeatures {
    pub fn negated_literals(&self) -> f64 {
        self.0[0]
    }
    pub fn positive_literals(&self) -> f64 {
        self.0[1]
    }
    pub fn atomic_terms(&self) -> f64 {
        self.0[2]
    }
    pub fn distinct_predicates(&self) -> f64 {
        self.0[3]
    }
    pub fn distinct_functors(&self) -> f64 {
        self.0[4]
    }
    pub fn distinct_variables(&self) -> f64 {
        self.0[5]
    }
    pub fn total_variables(&self) -> f64 {
        self.0[6]
    }
}

fn count_term(t: &Term, atomic_terms: &mut usize, functors: &mut BTreeSet<u32>) {
    if let Term::App(f, args) = t {
        *atomic_terms += 1;
        functors.insert(f.0);
        args.iter().for_each(|a| count_term(a, atomic_terms, functors));
    }
}

/// Every functor application (constants included) counts as an atomic term.
pub fn clause_features(c: &Clause) -> ClauseFeatures {
    let mut negated = 0usize;
    let mut atomic_terms = 0usize;
    let mut predicates = BTreeSet::new();
    let mut functors = BTreeSet::new();
    for lit in c.literals() {
        negated += lit.negated as usize;
        predicates.insert(lit.pred.0);
        lit.args.iter().for_each(|a| count_term(a, &mut atomic_terms, &mut functors));
    }
    let (vars, total_vars) = c.variables();
    ClauseFeatures([
        negated as f64,
        (c.len() - negated) as f64,
        atomic_terms as f64,
        predicates.len() as f64,
        functors.len() as f64,
        vars.len() as f64,
        total_vars as f64,
    ])
}

/// Sum, average, maximum and minimum of the clause features over the
/// initial clauses of a problem.
#[derive(Clone, Debug, PartialEq)]
pub struct InitialStats {
    pub sum: [f64; CLAUSE_FEATURE_COUNT],
    pub avg: [f64; CLAUSE_FEATURE_COUNT],
    pub max: [f64; CLAUSE_FEATURE_COUNT],
    pub min: [f64; CLAUSE_FEATURE_COUNT],
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum FeatureError {
    #[error("problem features need at least one initial clause")]
    EmptyInitial,
}

impl InitialStats {
    pub fn new(initial: &[Clause]) -> Result<Self, FeatureError> {
        if initial.is_empty() {
            return Err(FeatureError::EmptyInitial);
        }
        let mut sum = [0.0; CLAUSE_FEATURE_COUNT];
        let mut max = [f64::NEG_INFINITY; CLAUSE_FEATURE_COUNT];
        let mut min = [f64::INFINITY; CLAUSE_FEATURE_COUNT];
        for c in initial {
            let f = clause_features(c).0;
            for k in 0..CLAUSE_FEATURE_COUNT {
                sum[k] += f[k];
                max[k] = max[k].max(f[k]);
                min[k] = min[k].min(f[k]);
            }
        }
        let n = initial.len() as f64;
        let avg = sum.map(|s| s / n);
        Ok(InitialStats { sum, avg, max, min, count: initial.len() })
    }
}

/// Where a candidate clause came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ClauseOrigin {
    pub birth_step: u32,
    /// 0 for input clauses, 1 for factors, 2 for resolvents.
    pub premise_count: u8,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProblemFeatures(pub [f64; INPUT_DIM]);

impl ProblemFeatures {
    pub fn from_stats(c: &Clause, origin: ClauseOrigin, stats: &InitialStats) -> Self {
        let mut out = [0.0; INPUT_DIM];
        let own = clause_features(c).0;
        let blocks = [&own, &stats.sum, &stats.avg, &stats.max, &stats.min];
        for (b, block) in blocks.iter().enumerate() {
            out[b * CLAUSE_FEATURE_COUNT..(b + 1) * CLAUSE_FEATURE_COUNT].copy_from_slice(&block[..]);
        }
        let tail = CLAUSE_FEATURE_COUNT * 5;
        out[tail] = origin.birth_step as f64;
        out[tail + 1] = origin.premise_count as f64;
        out[tail + 2] = stats.count as f64;
        ProblemFeatures(out)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

/// `[clause | sum | avg | max | min | birth_step, premise_count, initial_count]`.
pub fn problem_features(
    c: &Clause,
    origin: ClauseOrigin,
    initial: &[Clause],
) -> Result<ProblemFeatures, FeatureError> {
    let stats = InitialStats::new(initial)?;
    Ok(ProblemFeatures::from_stats(c, origin, &stats))
}

/// Stable 64-bit FNV-1a digest of the feature layout, stored in model files.
pub fn feature_schema_hash() -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |s: &str| {
        for b in s.bytes().chain(core::iter::once(b';')) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    };
    for block in ["clause", "sum", "avg", "max", "min"] {
        for name in FEATURE_NAMES {
            eat(block);
            eat(name);
        }
    }
    for name in ["birth_step", "premise_count", "initial_clause_count"] {
        eat(name);
    }
    h
}
