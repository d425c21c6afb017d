//! Forward proposer: random linear-resolution walks over an axiom set.
//!
//! The first step picks uniformly among all inferences between axioms.
//! Every later step picks uniformly among the inferences that use the
//! previous walk clause: its factors and its resolvents with an axiom or an
//! earlier walk clause. The last clause of the walk is the conjecture; since
//! it was derived from the axioms, `axioms → conjecture` is a theorem.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::inference::{factors, resolvents, InferenceRule};
use crate::logic::{Clause, Literal, Signature};
use crate::problem::Problem;
use crate::saturation::negate_conjecture;
use crate::subsume::{is_variant, order_subsumes, theta_subsumes};

/// Which clauses may partner the previous walk clause in a resolution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LinearParents {
    Axioms,
    #[default]
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParentRef {
    Axiom(usize),
    Walk(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub rule: InferenceRule,
    /// Premises in rule order: one for factoring, two for resolution.
    pub parents: Vec<ParentRef>,
    pub clause: Clause,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntheticTheorem {
    pub axioms: Vec<Clause>,
    pub conjecture: Clause,
    pub walk: Vec<WalkStep>,
    pub seed: u64,
    pub steps: usize,
    /// Walk restarts used before this theorem was found.
    pub restarts: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProposerConfig {
    pub steps: usize,
    pub max_restarts: usize,
    /// Inferences heavier than this are left out of the choice set.
    pub max_weight: usize,
    pub linear_parents: LinearParents,
    /// Leave out clauses order-subsumed by an axiom.
    pub reject_axiom_subsumed: bool,
}

impl Default for ProposerConfig {
    fn default() -> Self {
        ProposerConfig {
            steps: 10,
            max_restarts: 20,
            max_weight: 60,
            linear_parents: LinearParents::All,
            reject_axiom_subsumed: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProposerError {
    #[error("the axiom set is empty")]
    NoAxioms,
    #[error("the walk needs at least one step")]
    ZeroSteps,
    #[error("no inference is possible between the axioms")]
    DegenerateAxioms,
    #[error("every walk hit a dead end ({attempts} attempts)")]
    DeadEnd { attempts: usize },
}

struct Candidate {
    rule: InferenceRule,
    parents: Vec<ParentRef>,
    clause: Clause,
}

/// Seed of the `attempt`-th walk for a base seed (SplitMix64 finaliser).
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Walker<'a> {
    axioms: &'a [Clause],
    cfg: &'a ProposerConfig,
}

impl Walker<'_> {
    fn admissible(&self, c: &Clause) -> bool {
        !c.is_empty()
            && c.weight() <= self.cfg.max_weight
            && !(self.cfg.reject_axiom_subsumed && self.axioms.iter().any(|a| order_subsumes(a, c)))
    }

    fn push_resolvents(&self, out: &mut Vec<Candidate>, a: (&Clause, ParentRef), b: (&Clause, ParentRef)) {
        for inf in resolvents(a.0, b.0) {
            if self.admissible(&inf.clause) {
                out.push(Candidate { rule: inf.rule, parents: alloc::vec![a.1, b.1], clause: inf.clause });
            }
        }
    }

    fn push_factors(&self, out: &mut Vec<Candidate>, c: (&Clause, ParentRef)) {
        for inf in factors(c.0) {
            if self.admissible(&inf.clause) {
                out.push(Candidate { rule: inf.rule, parents: alloc::vec![c.1], clause: inf.clause });
            }
        }
    }

    fn first_choices(&self) -> Vec<Candidate> {
        let mut out = Vec::new();
        for (i, a) in self.axioms.iter().enumerate() {
            self.push_factors(&mut out, (a, ParentRef::Axiom(i)));
            for (j, b) in self.axioms.iter().enumerate().skip(i) {
                self.push_resolvents(&mut out, (a, ParentRef::Axiom(i)), (b, ParentRef::Axiom(j)));
            }
        }
        out
    }

    fn next_choices(&self, walk: &[WalkStep]) -> Vec<Candidate> {
        let last_idx = walk.len() - 1;
        let last = (&walk[last_idx].clause, ParentRef::Walk(last_idx));
        let mut out = Vec::new();
        self.push_factors(&mut out, last);
        for (j, a) in self.axioms.iter().enumerate() {
            self.push_resolvents(&mut out, last, (a, ParentRef::Axiom(j)));
        }
        let walk_partners = match self.cfg.linear_parents {
            LinearParents::All => walk.len(),
            LinearParents::Axioms => 0,
        };
        for (k, step) in walk.iter().enumerate().take(walk_partners) {
            self.push_resolvents(&mut out, last, (&step.clause, ParentRef::Walk(k)));
        }
        out
    }

    fn walk(&self, first: &[Candidate], rng: &mut ChaCha8Rng) -> Option<Vec<WalkStep>> {
        let mut walk: Vec<WalkStep> = Vec::with_capacity(self.cfg.steps);
        let pick = &first[rng.gen_range(0..first.len())];
        walk.push(WalkStep { rule: pick.rule, parents: pick.parents.clone(), clause: pick.clause.clone() });
        while walk.len() < self.cfg.steps {
            let mut choices = self.next_choices(&walk);
            if choices.is_empty() {
                return None;
            }
            let pick = choices.swap_remove(rng.gen_range(0..choices.len()));
            walk.push(WalkStep { rule: pick.rule, parents: pick.parents, clause: pick.clause });
        }
        Some(walk)
    }
}

/// Runs a random linear-resolution walk of `cfg.steps` inferences.
pub fn propose_theorem(axioms: &[Clause], cfg: &ProposerConfig, seed: u64) -> Result<SyntheticTheorem, ProposerError> {
    if axioms.is_empty() {
        return Err(ProposerError::NoAxioms);
    }
    if cfg.steps == 0 {
        return Err(ProposerError::ZeroSteps);
    }
    let walker = Walker { axioms, cfg };
    let first = walker.first_choices();
    if first.is_empty() {
        return Err(ProposerError::DegenerateAxioms);
    }
    let attempts = cfg.max_restarts + 1;
    for attempt in 0..attempts {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, attempt as u64));
        if let Some(walk) = walker.walk(&first, &mut rng) {
            let conjecture = walk.last().expect("steps >= 1").clause.clone();
            return Ok(SyntheticTheorem {
                axioms: axioms.to_vec(),
                conjecture,
                walk,
                seed,
                steps: cfg.steps,
                restarts: attempt,
            });
        }
    }
    Err(ProposerError::DeadEnd { attempts })
}

/// Axioms plus the Skolemised negation of the conjecture. Skolem constants
/// are added to a copy of `signature`.
pub fn make_problem(t: &SyntheticTheorem, signature: &Signature, name: &str) -> Problem {
    let mut signature = signature.clone();
    let negated = negate_conjecture(&t.conjecture, &mut signature)
        .expect("proposed conjectures are never empty");
    Problem {
        name: name.into(),
        axioms: t.axioms.clone(),
        negated_conjecture: negated,
        signature,
        source_files: Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReplayError {
    #[error("walk step {step} refers to a missing parent")]
    BadParent { step: usize },
    #[error("walk step {step} is not linear")]
    NotLinear { step: usize },
    #[error("walk step {step} does not follow from its parents")]
    NotDerivable { step: usize },
    #[error("conjecture does not match the last walk clause")]
    ConjectureMismatch,
    #[error("the negated conjecture does not refute the conjecture")]
    NotClosed,
}

/// Entailment certificate for a proposed theorem: every walk step is
/// re-derived from its recorded parents, and the conjecture is resolved
/// against the negated-conjecture units down to the empty clause.
pub fn replay_walk(t: &SyntheticTheorem, negated: &[Clause]) -> Result<(), ReplayError> {
    for (i, step) in t.walk.iter().enumerate() {
        let parent = |p: &ParentRef| match *p {
            ParentRef::Axiom(k) => t.axioms.get(k),
            ParentRef::Walk(k) if k < i => Some(&t.walk[k].clause),
            ParentRef::Walk(_) => None,
        };
        let parents: Option<Vec<&Clause>> = step.parents.iter().map(parent).collect();
        let parents = parents.ok_or(ReplayError::BadParent { step: i })?;
        if i > 0 && !step.parents.contains(&ParentRef::Walk(i - 1)) {
            return Err(ReplayError::NotLinear { step: i });
        }
        let conclusions = match (step.rule, parents.as_slice()) {
            (InferenceRule::Factoring { .. }, [p]) => factors(p),
            (InferenceRule::Resolution { .. }, [a, b]) => resolvents(a, b),
            _ => return Err(ReplayError::BadParent { step: i }),
        };
        let ok = conclusions.iter().any(|c| c.rule == step.rule && is_variant(&c.clause, &step.clause));
        if !ok {
            return Err(ReplayError::NotDerivable { step: i });
        }
    }
    let last = t.walk.last().ok_or(ReplayError::ConjectureMismatch)?;
    if !is_variant(&last.clause, &t.conjecture) {
        return Err(ReplayError::ConjectureMismatch);
    }
    // Resolving the conjecture against the units one literal at a time
    // reaches the empty clause exactly when one substitution maps every
    // conjecture literal onto the complement of some unit.
    let complements: Vec<Literal> =
        negated.iter().filter(|c| c.len() == 1).map(|c| c.literals()[0].complement()).collect();
    if theta_subsumes(&t.conjecture, &Clause::new(complements)) {
        Ok(())
    } else {
        Err(ReplayError::NotClosed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::tests::x;
    use crate::logic::{Literal, Term};
    use alloc::vec;

    fn socrates() -> (Signature, Vec<Clause>, Clause) {
        let mut sig = Signature::new();
        let human = sig.predicate("human", 1).unwrap();
        let mortal = sig.predicate("mortal", 1).unwrap();
        let s = Term::constant(sig.functor("s", 0).unwrap());
        let axioms = vec![
            Clause::new(vec![Literal::negative(human, vec![x(0)]), Literal::positive(mortal, vec![x(0)])]),
            Clause::new(vec![Literal::positive(human, vec![s.clone()])]),
        ];
        (sig, axioms, Clause::new(vec![Literal::positive(mortal, vec![s])]))
    }

    #[test]
    fn one_step_socrates() {
        let (sig, axioms, goal) = socrates();
        let cfg = ProposerConfig { steps: 1, ..Default::default() };
        let t = propose_theorem(&axioms, &cfg, 7).unwrap();
        assert_eq!(t.conjecture, goal);
        assert_eq!(t.walk.len(), 1);
        let p = make_problem(&t, &sig, "socrates");
        let mortal = sig.lookup_predicate("mortal").unwrap();
        let s = Term::constant(sig.lookup_functor("s").unwrap());
        assert_eq!(p.negated_conjecture, vec![Clause::new(vec![Literal::negative(mortal, vec![s])])]);
        replay_walk(&t, &p.negated_conjecture).unwrap();
    }

    #[test]
    fn degenerate_axioms() {
        let mut sig = Signature::new();
        let p = sig.predicate("p", 1).unwrap();
        let a = Term::constant(sig.functor("a", 0).unwrap());
        let axioms = vec![Clause::new(vec![Literal::positive(p, vec![a])])];
        let cfg = ProposerConfig { steps: 1, ..Default::default() };
        assert_eq!(propose_theorem(&axioms, &cfg, 0), Err(ProposerError::DegenerateAxioms));
        assert_eq!(propose_theorem(&[], &cfg, 0), Err(ProposerError::NoAxioms));
        let cfg = ProposerConfig { steps: 0, ..Default::default() };
        assert_eq!(propose_theorem(&axioms, &cfg, 0), Err(ProposerError::ZeroSteps));
    }

    #[test]
    fn dead_end_after_restarts() {
        // Only one inference exists and nothing follows it.
        let (_, axioms, _) = socrates();
        let cfg = ProposerConfig { steps: 3, ..Default::default() };
        assert_eq!(propose_theorem(&axioms, &cfg, 1), Err(ProposerError::DeadEnd { attempts: 21 }));
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
        assert_eq!(derive_seed(5, 3), derive_seed(5, 3));
    }
}
