//! Training examples mined from the basic prover's own refutations.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::features::{InitialStats, ProblemFeatures};
use crate::problem::Problem;
use crate::proposer::derive_seed;
use crate::saturation::{
    clause_weight_cost, AgeCostRatio, Budget, ClauseId, Clock, SaturationStats, Saturator, Status,
};

#[derive(Clone, Debug, PartialEq)]
pub struct TrainingExample {
    pub theorem_id: String,
    pub clause_id: u32,
    /// 1 if the clause is an ancestor of the empty clause, 0 otherwise.
    pub label: u8,
    pub features: ProblemFeatures,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MiningConfig {
    pub budget: Budget,
    pub ratio: AgeCostRatio,
    pub seed: u64,
}

impl Default for MiningConfig {
    fn default() -> Self {
        MiningConfig { budget: Budget::default(), ratio: AgeCostRatio::default(), seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinedTheorem {
    pub theorem_id: String,
    pub status: Status,
    pub stats: SaturationStats,
    pub positives: usize,
    pub negatives: usize,
    pub examples: Vec<TrainingExample>,
}

/// Proves `problem` with the clause-weight cost. On success every proof
/// clause becomes a positive and an equal number of the remaining logged
/// clauses (inputs included), drawn uniformly without replacement, become
/// negatives. `index` keeps the negative sample independent across problems.
/// The timeout in `cfg.budget` only applies when a clock is given.
pub fn mine_problem(problem: &Problem, index: u64, cfg: &MiningConfig, clock: Option<&dyn Clock>) -> MinedTheorem {
    let initial = problem.clauses();
    let cost = clause_weight_cost();
    let mut saturator = Saturator::new(&cost).ratio(cfg.ratio).budget(cfg.budget);
    if let Some(clock) = clock {
        saturator = saturator.clock(clock);
    }
    let run = saturator.run(&initial);
    let mut mined = MinedTheorem {
        theorem_id: problem.name.clone(),
        status: run.result.status,
        stats: run.result.stats,
        positives: 0,
        negatives: 0,
        examples: Vec::new(),
    };
    if run.result.status != Status::RefutationFound {
        return mined;
    }
    let Ok(stats) = InitialStats::new(&initial) else {
        return mined;
    };
    let proof = &run.result.proof_clauses;
    let rest: Vec<ClauseId> = run.log.iter().map(|r| r.id).filter(|id| !proof.contains(id)).collect();
    let take = proof.len().min(rest.len());
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, index));
    let mut picked: Vec<ClauseId> = sample(&mut rng, rest.len(), take).into_iter().map(|i| rest[i]).collect();
    picked.sort();

    let example = |id: ClauseId, label: u8| {
        let record = run.log.get(id).expect("logged clause");
        TrainingExample {
            theorem_id: problem.name.clone(),
            clause_id: id.0,
            label,
            features: ProblemFeatures::from_stats(&record.clause, record.origin(), &stats),
        }
    };
    mined.examples.extend(proof.iter().map(|&id| example(id, 1)));
    mined.examples.extend(picked.iter().map(|&id| example(id, 0)));
    mined.positives = proof.len();
    mined.negatives = picked.len();
    mined
}

/// Mines every problem in order and concatenates the examples.
pub fn mine_examples(problems: &[Problem], cfg: &MiningConfig) -> Vec<TrainingExample> {
    problems
        .iter()
        .enumerate()
        .flat_map(|(i, p)| mine_problem(p, i as u64, cfg, None).examples)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{Clause, Literal, Signature, Term};
    use alloc::vec;

    fn socrates() -> Problem {
        let mut sig = Signature::default();
        let human = sig.predicate("human", 1).unwrap();
        let mortal = sig.predicate("mortal", 1).unwrap();
        let s = Term::constant(sig.functor("socrates", 0).unwrap());
        let x = Term::Var(crate::logic::Var(0));
        Problem {
            name: "socrates".into(),
            axioms: vec![
                Clause::new(vec![Literal::negative(human, vec![x.clone()]), Literal::positive(mortal, vec![x])]),
                Clause::new(vec![Literal::positive(human, vec![s.clone()])]),
            ],
            negated_conjecture: vec![Clause::new(vec![Literal::negative(mortal, vec![s])])],
            signature: sig,
            source_files: vec![],
        }
    }

    #[test]
    fn proved_problem_is_balanced() {
        let mined = mine_problem(&socrates(), 0, &MiningConfig::default(), None);
        assert_eq!(mined.status, Status::RefutationFound);
        assert!(mined.positives > 0);
        assert!(mined.negatives <= mined.positives);
        let pos = mined.examples.iter().filter(|e| e.label == 1).count();
        assert_eq!(pos, mined.positives);
        assert_eq!(mined.examples.len(), mined.positives + mined.negatives);
    }

    #[test]
    fn unproved_problem_contributes_nothing() {
        let mut p = socrates();
        p.negated_conjecture.clear();
        let mined = mine_problem(&p, 0, &MiningConfig::default(), None);
        assert_eq!(mined.status, Status::Saturated);
        assert!(mined.examples.is_empty());
    }

    #[test]
    fn mining_is_deterministic() {
        let ps = vec![socrates(), socrates()];
        let cfg = MiningConfig { seed: 9, ..Default::default() };
        assert_eq!(mine_examples(&ps, &cfg), mine_examples(&ps, &cfg));
    }
}
