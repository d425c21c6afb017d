//! Given-clause saturation with an age queue and a cost queue.
//!
//! The loop alternates between the two queues according to an age:cost
//! ratio, checks the selected clause for forward order-subsumption against
//! the processed set, removes processed clauses it order-subsumes, and then
//! enqueues its factors and its resolvents with every processed clause
//! (itself included). Tautologies are dropped when generated. Both queues
//! use lazy deletion: an entry whose clause has already been selected is
//! skipped when it reaches the top.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec::Vec;
use core::cmp::{Ordering, Reverse};

use crate::features::{ClauseOrigin, InitialStats};
use crate::inference::{factors, may_resolve, resolvents, Inference, InferenceRule};
use crate::logic::{Clause, Signature, Term};
use crate::subsume::{literal_mask, order_subsumes};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseId(pub u32);

impl core::fmt::Display for ClauseId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "c{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Input,
    Resolution { parents: [ClauseId; 2], literals: [usize; 2] },
    Factoring { parent: ClauseId, literals: [usize; 2] },
}

impl Provenance {
    pub fn parents(&self) -> &[ClauseId] {
        match self {
            Provenance::Input => &[],
            Provenance::Resolution { parents, .. } => parents,
            Provenance::Factoring { parent, .. } => core::slice::from_ref(parent),
        }
    }

    pub fn premise_count(&self) -> u8 {
        match self {
            Provenance::Input => 0,
            Provenance::Resolution { .. } => 2,
            Provenance::Factoring { .. } => 1,
        }
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            Provenance::Input => "input",
            Provenance::Resolution { .. } => "resolution",
            Provenance::Factoring { .. } => "factoring",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClauseRecord {
    pub id: ClauseId,
    pub clause: Clause,
    pub provenance: Provenance,
    /// Saturation step at which the clause was created; 0 for inputs.
    pub birth_step: u32,
}

impl ClauseRecord {
    pub fn origin(&self) -> ClauseOrigin {
        ClauseOrigin { birth_step: self.birth_step, premise_count: self.provenance.premise_count() }
    }
}

/// Append-only record of every clause of a run; parents precede children.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClauseLog {
    records: Vec<ClauseRecord>,
}

impl ClauseLog {
    fn push(&mut self, clause: Clause, provenance: Provenance, birth_step: u32) -> ClauseId {
        let id = ClauseId(self.records.len() as u32);
        self.records.push(ClauseRecord { id, clause, provenance, birth_step });
        id
    }

    pub fn get(&self, id: ClauseId) -> Option<&ClauseRecord> {
        self.records.get(id.0 as usize)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ClauseRecord> {
        self.records.iter()
    }

    pub fn records(&self) -> &[ClauseRecord] {
        &self.records
    }
}

/// What a cost function may look at besides the clause itself.
pub struct CostContext<'a> {
    pub initial: &'a [Clause],
    pub initial_stats: &'a InitialStats,
    /// Current saturation step.
    pub step: u32,
    pub origin: ClauseOrigin,
}

/// Lower cost means selected earlier from the cost queue.
pub trait CostFunction {
    fn cost(&self, clause: &Clause, ctx: &CostContext<'_>) -> f64;
}

impl<F> CostFunction for F
where
    F: Fn(&Clause, &CostContext<'_>) -> f64,
{
    fn cost(&self, clause: &Clause, ctx: &CostContext<'_>) -> f64 {
        self(clause, ctx)
    }
}

/// The clause-weight heuristic: node count of the clause tree.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClauseWeightCost;

impl CostFunction for ClauseWeightCost {
    fn cost(&self, clause: &Clause, _ctx: &CostContext<'_>) -> f64 {
        clause.weight() as f64
    }
}

pub fn clause_weight_cost() -> ClauseWeightCost {
    ClauseWeightCost
}

/// `age` consecutive picks from the age queue, then `cost` from the cost queue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AgeCostRatio {
    pub age: u32,
    pub cost: u32,
}

impl AgeCostRatio {
    pub fn new(age: u32, cost: u32) -> Option<Self> {
        (age > 0 && cost > 0).then_some(AgeCostRatio { age, cost })
    }

    fn picks_age(&self, step: u32) -> bool {
        step % (self.age + self.cost) < self.age
    }
}

impl Default for AgeCostRatio {
    fn default() -> Self {
        AgeCostRatio { age: 1, cost: 5 }
    }
}

/// Resource limits. `None` disables a limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Budget {
    /// Maximum number of clause selections.
    pub max_steps: Option<u64>,
    /// Maximum number of clauses created by inferences (inputs excluded).
    pub max_generated: Option<usize>,
    /// Wall-clock limit; only honoured when a [`Clock`] is supplied.
    pub timeout_secs: Option<f64>,
}

impl Budget {
    pub fn clauses(max_generated: usize) -> Self {
        Budget { max_steps: None, max_generated: Some(max_generated), timeout_secs: None }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_steps: None, max_generated: Some(50_000), timeout_secs: Some(30.0) }
    }
}

/// Source of elapsed time; the core crate has no clock of its own.
pub trait Clock {
    fn elapsed_secs(&self) -> f64;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    RefutationFound,
    Saturated,
    BudgetExhausted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SaturationStats {
    pub generated_count: usize,
    pub processed_count: usize,
    pub elapsed_secs: f64,
    /// Number of clause selections, discarded ones included.
    pub steps: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SaturationResult {
    pub status: Status,
    /// The empty clause and its provenance closure; empty unless refuted.
    pub proof_clauses: BTreeSet<ClauseId>,
    pub empty_clause: Option<ClauseId>,
    pub stats: SaturationStats,
}

#[derive(Clone, Debug)]
pub struct SaturationRun {
    pub result: SaturationResult,
    pub log: ClauseLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ProofError {
    #[error("no refutation was found")]
    NotRefuted,
    #[error("clause {0} is not in the log")]
    UnknownClause(ClauseId),
}

/// Provenance closure of the empty clause.
pub fn proof_ancestors(result: &SaturationResult, log: &ClauseLog) -> Result<BTreeSet<ClauseId>, ProofError> {
    let root = match (result.status, result.empty_clause) {
        (Status::RefutationFound, Some(id)) => id,
        _ => return Err(ProofError::NotRefuted),
    };
    ancestors(log, root)
}

fn ancestors(log: &ClauseLog, root: ClauseId) -> Result<BTreeSet<ClauseId>, ProofError> {
    let mut seen = BTreeSet::new();
    let mut stack = alloc::vec![root];
    while let Some(id) = stack.pop() {
        let record = log.get(id).ok_or(ProofError::UnknownClause(id))?;
        if seen.insert(id) {
            stack.extend_from_slice(record.provenance.parents());
        }
    }
    Ok(seen)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum NegationError {
    #[error("cannot negate the empty conjecture")]
    EmptyConjecture,
}

/// Negates a universally quantified clause: every variable becomes a fresh
/// Skolem constant and each literal turns into a complemented unit clause.
pub fn negate_conjecture(conjecture: &Clause, sig: &mut Signature) -> Result<Vec<Clause>, NegationError> {
    if conjecture.is_empty() {
        return Err(NegationError::EmptyConjecture);
    }
    let mut skolems = BTreeMap::new();
    let grounded = conjecture.map_vars(&mut |v| {
        let f = *skolems.entry(v).or_insert_with(|| sig.fresh_constant("sk"));
        Term::constant(f)
    });
    Ok(grounded
        .literals()
        .iter()
        .map(|l| Clause::new(alloc::vec![l.complement()]))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Cost(f64);

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Saturation run configuration.
pub struct Saturator<'a> {
    pub cost: &'a dyn CostFunction,
    pub ratio: AgeCostRatio,
    pub budget: Budget,
    pub clock: Option<&'a dyn Clock>,
    /// Verify queue coherence after every step (slow).
    pub check_invariants: bool,
}

struct Active {
    id: ClauseId,
    mask: u64,
}

impl<'a> Saturator<'a> {
    pub fn new(cost: &'a dyn CostFunction) -> Self {
        Saturator {
            cost,
            ratio: AgeCostRatio::default(),
            budget: Budget::default(),
            clock: None,
            check_invariants: false,
        }
    }

    pub fn ratio(mut self, ratio: AgeCostRatio) -> Self {
        self.ratio = ratio;
        self
    }

    pub fn budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn clock(mut self, clock: &'a dyn Clock) -> Self {
        self.clock = Some(clock);
        self
    }

    pub fn check_invariants(mut self, on: bool) -> Self {
        self.check_invariants = on;
        self
    }

    fn elapsed(&self) -> f64 {
        self.clock.map_or(0.0, |c| c.elapsed_secs())
    }

    fn out_of_time(&self) -> bool {
        match (self.clock, self.budget.timeout_secs) {
            (Some(clock), Some(limit)) => clock.elapsed_secs() > limit,
            _ => false,
        }
    }

    pub fn run(&self, initial: &[Clause]) -> SaturationRun {
        let mut state = State::new(initial, self);
        let status = state.run();
        let stats = SaturationStats {
            generated_count: state.generated,
            processed_count: state.processed_count,
            elapsed_secs: self.elapsed(),
            steps: state.iterations,
        };
        let proof_clauses = match state.empty_clause {
            Some(id) => ancestors(&state.log, id).expect("provenance is closed"),
            None => BTreeSet::new(),
        };
        SaturationRun {
            result: SaturationResult { status, proof_clauses, empty_clause: state.empty_clause, stats },
            log: state.log,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Queued,
    Taken,
}

struct State<'s, 'a> {
    cfg: &'s Saturator<'a>,
    initial: &'s [Clause],
    stats: Option<InitialStats>,
    log: ClauseLog,
    slots: Vec<Slot>,
    age_queue: BinaryHeap<Reverse<(u32, ClauseId)>>,
    cost_queue: BinaryHeap<Reverse<(Cost, u32, ClauseId)>>,
    queued: usize,
    active: Vec<Active>,
    /// Schedule counter; advances only when the selected clause is kept.
    step: u32,
    iterations: u64,
    generated: usize,
    processed_count: usize,
    empty_clause: Option<ClauseId>,
}

impl<'s, 'a> State<'s, 'a> {
    fn new(initial: &'s [Clause], cfg: &'s Saturator<'a>) -> Self {
        State {
            cfg,
            initial,
            stats: InitialStats::new(initial).ok(),
            log: ClauseLog::default(),
            slots: Vec::new(),
            age_queue: BinaryHeap::new(),
            cost_queue: BinaryHeap::new(),
            queued: 0,
            active: Vec::new(),
            step: 0,
            iterations: 0,
            generated: 0,
            processed_count: 0,
            empty_clause: None,
        }
    }

    fn enqueue(&mut self, clause: Clause, provenance: Provenance, birth_step: u32) {
        let stats = self.stats.as_ref().expect("initial set is nonempty");
        let ctx = CostContext {
            initial: self.initial,
            initial_stats: stats,
            step: self.step,
            origin: ClauseOrigin { birth_step, premise_count: provenance.premise_count() },
        };
        let cost = Cost(self.cfg.cost.cost(&clause, &ctx));
        let id = self.log.push(clause, provenance, birth_step);
        self.slots.push(Slot::Queued);
        self.age_queue.push(Reverse((birth_step, id)));
        self.cost_queue.push(Reverse((cost, birth_step, id)));
        self.queued += 1;
    }

    fn pop(&mut self, from_age: bool) -> Option<ClauseId> {
        loop {
            let id = if from_age {
                self.age_queue.pop()?.0 .1
            } else {
                self.cost_queue.pop()?.0 .2
            };
            if self.slots[id.0 as usize] == Slot::Queued {
                self.slots[id.0 as usize] = Slot::Taken;
                self.queued -= 1;
                return Some(id);
            }
        }
    }

    fn check_queue_coherence(&self) {
        let age: BTreeSet<ClauseId> = self
            .age_queue
            .iter()
            .map(|e| e.0 .1)
            .filter(|id| self.slots[id.0 as usize] == Slot::Queued)
            .collect();
        let cost: BTreeSet<ClauseId> = self
            .cost_queue
            .iter()
            .map(|e| e.0 .2)
            .filter(|id| self.slots[id.0 as usize] == Slot::Queued)
            .collect();
        assert_eq!(age, cost, "age and cost queues disagree");
        assert_eq!(age.len(), self.queued);
        for a in &self.active {
            assert!(!age.contains(&a.id), "processed clause {} still queued", a.id);
        }
    }

    fn run(&mut self) -> Status {
        if self.initial.is_empty() {
            return Status::Saturated;
        }
        for c in self.initial {
            self.enqueue(c.clone(), Provenance::Input, 0);
        }
        while self.queued > 0 {
            if self.cfg.budget.max_steps.is_some_and(|m| self.iterations >= m) || self.cfg.out_of_time() {
                return Status::BudgetExhausted;
            }
            let from_age = self.cfg.ratio.picks_age(self.step);
            let id = self.pop(from_age).expect("queues are coherent");
            self.iterations += 1;
            let given = self.log.records[id.0 as usize].clause.clone();

            if given.is_empty() {
                self.empty_clause = Some(id);
                return Status::RefutationFound;
            }

            let given_mask = literal_mask(&given);
            let subsumed = self.active.iter().any(|a| {
                let c = &self.log.records[a.id.0 as usize].clause;
                a.mask & !given_mask == 0 && order_subsumes(c, &given)
            });
            if subsumed {
                if self.cfg.check_invariants {
                    self.check_queue_coherence();
                }
                continue;
            }

            let log = &self.log;
            self.active.retain(|a| {
                given_mask & !a.mask != 0 || !order_subsumes(&given, &log.records[a.id.0 as usize].clause)
            });

            let birth = self.step + 1;
            let mut fresh: Vec<(Clause, Provenance)> = Vec::new();
            for Inference { clause, rule } in factors(&given) {
                if let InferenceRule::Factoring { first, second } = rule {
                    fresh.push((clause, Provenance::Factoring { parent: id, literals: [first, second] }));
                }
            }
            let partners = self.active.iter().map(|a| a.id).chain(core::iter::once(id));
            for other in partners {
                let other_clause = &self.log.records[other.0 as usize].clause;
                if !may_resolve(&given, other_clause) {
                    continue;
                }
                for Inference { clause, rule } in resolvents(&given, other_clause) {
                    if let InferenceRule::Resolution { left, right } = rule {
                        fresh.push((
                            clause,
                            Provenance::Resolution { parents: [id, other], literals: [left, right] },
                        ));
                    }
                }
            }
            for (clause, provenance) in fresh {
                if self.cfg.budget.max_generated.is_some_and(|m| self.generated >= m) {
                    return Status::BudgetExhausted;
                }
                self.generated += 1;
                self.enqueue(clause, provenance, birth);
            }

            self.active.push(Active { id, mask: given_mask });
            self.processed_count += 1;
            self.step += 1;
            if self.cfg.check_invariants {
                self.check_queue_coherence();
            }
        }
        Status::Saturated
    }
}

/// Runs saturation without a wall clock.
pub fn saturate(
    initial: &[Clause],
    cost: &dyn CostFunction,
    ratio: AgeCostRatio,
    budget: Budget,
) -> SaturationRun {
    Saturator::new(cost).ratio(ratio).budget(budget).run(initial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::tests::{fixture, weight_example, x};
    use crate::logic::{Literal, Signature, Term};
    use alloc::vec;

    struct Socrates {
        sig: Signature,
        axiom: Clause,
        fact: Clause,
        goal: Clause,
        negated_goal: Clause,
    }

    fn socrates() -> Socrates {
        let mut sig = Signature::new();
        let human = sig.predicate("human", 1).unwrap();
        let mortal = sig.predicate("mortal", 1).unwrap();
        let s = Term::constant(sig.functor("s", 0).unwrap());
        Socrates {
            axiom: Clause::new(vec![Literal::negative(human, vec![x(0)]), Literal::positive(mortal, vec![x(0)])]),
            fact: Clause::new(vec![Literal::positive(human, vec![s.clone()])]),
            goal: Clause::new(vec![Literal::positive(mortal, vec![s.clone()])]),
            negated_goal: Clause::new(vec![Literal::negative(mortal, vec![s])]),
            sig,
        }
    }

    fn clause_set(run: &SaturationRun, ids: &BTreeSet<ClauseId>) -> BTreeSet<Clause> {
        ids.iter().map(|id| run.log.get(*id).unwrap().clause.clone()).collect()
    }

    #[test]
    fn socrates_is_refuted() {
        let s = socrates();
        let initial = vec![s.axiom.clone(), s.fact.clone(), s.negated_goal.clone()];
        let cost = clause_weight_cost();
        let run = Saturator::new(&cost)
            .budget(Budget::clauses(10_000))
            .check_invariants(true)
            .run(&initial);
        assert_eq!(run.result.status, Status::RefutationFound);
        let proof = clause_set(&run, &run.result.proof_clauses);
        assert!(proof.contains(&Clause::empty()));
        assert!(proof.contains(&s.axiom));
        assert!(proof.contains(&s.fact) || proof.contains(&s.negated_goal));
        // either mortal(s) or ~human(s) is the intermediate clause
        let human = s.sig.lookup_predicate("human").unwrap();
        let sk = Term::constant(s.sig.lookup_functor("s").unwrap());
        let alt = Clause::new(vec![Literal::negative(human, vec![sk])]);
        assert!(proof.contains(&s.goal) || proof.contains(&alt));
        assert!(run.result.stats.generated_count <= 10);

        let ancestors = proof_ancestors(&run.result, &run.log).unwrap();
        assert_eq!(ancestors, run.result.proof_clauses);
    }

    #[test]
    fn single_positive_unit_saturates() {
        let fx = fixture();
        let pa = Clause::new(vec![Literal::positive(fx.p, vec![Term::constant(fx.a)])]);
        let run = saturate(&[pa], &clause_weight_cost(), AgeCostRatio::default(), Budget::clauses(100));
        assert_eq!(run.result.status, Status::Saturated);
        assert!(run.result.proof_clauses.is_empty());
        assert_eq!(proof_ancestors(&run.result, &run.log), Err(ProofError::NotRefuted));
    }

    #[test]
    fn empty_input_clause_is_refutation() {
        let fx = fixture();
        let pa = Clause::new(vec![Literal::positive(fx.p, vec![Term::constant(fx.a)])]);
        let run = saturate(
            &[pa, Clause::empty()],
            &clause_weight_cost(),
            AgeCostRatio::new(1, 1).unwrap(),
            Budget::clauses(100),
        );
        assert_eq!(run.result.status, Status::RefutationFound);
        assert_eq!(run.result.proof_clauses.len(), 1);
        let id = *run.result.proof_clauses.iter().next().unwrap();
        assert!(run.log.get(id).unwrap().clause.is_empty());
    }

    #[test]
    fn direct_refutation_from_two_inputs() {
        let fx = fixture();
        let px = Clause::new(vec![Literal::positive(fx.p, vec![x(0)])]);
        let npa = Clause::new(vec![Literal::negative(fx.p, vec![Term::constant(fx.a)])]);
        let run = saturate(&[px, npa], &clause_weight_cost(), AgeCostRatio::default(), Budget::clauses(100));
        assert_eq!(run.result.status, Status::RefutationFound);
        let ids: Vec<u32> = run.result.proof_clauses.iter().map(|c| c.0).collect();
        assert_eq!(ids.len(), 3);
        assert!(ids.contains(&0) && ids.contains(&1));
    }

    #[test]
    fn zero_clause_budget_exhausts() {
        let s = socrates();
        let initial = vec![s.axiom, s.fact, s.negated_goal];
        let run = saturate(&initial, &clause_weight_cost(), AgeCostRatio::default(), Budget::clauses(0));
        assert_eq!(run.result.status, Status::BudgetExhausted);
        assert_eq!(run.result.stats.generated_count, 0);
    }

    #[test]
    fn step_budget_exhausts() {
        let fx = fixture();
        // p(a), ~p(X) | p(g(X)) never saturates
        let pa = Clause::new(vec![Literal::positive(fx.p, vec![Term::constant(fx.a)])]);
        let step = Clause::new(vec![
            Literal::negative(fx.p, vec![x(0)]),
            Literal::positive(fx.p, vec![Term::App(fx.g, vec![x(0)])]),
        ]);
        let budget = Budget { max_steps: Some(25), max_generated: None, timeout_secs: None };
        let run = saturate(&[pa, step], &clause_weight_cost(), AgeCostRatio::default(), budget);
        assert_eq!(run.result.status, Status::BudgetExhausted);
        assert_eq!(run.result.stats.steps, 25);
    }

    #[test]
    fn timeout_uses_supplied_clock() {
        struct Frozen(f64);
        impl Clock for Frozen {
            fn elapsed_secs(&self) -> f64 {
                self.0
            }
        }
        let s = socrates();
        let initial = vec![s.axiom, s.fact, s.negated_goal];
        let cost = clause_weight_cost();
        let late = Frozen(100.0);
        let budget = Budget { max_steps: None, max_generated: None, timeout_secs: Some(1.0) };
        let run = Saturator::new(&cost).budget(budget).clock(&late).run(&initial);
        assert_eq!(run.result.status, Status::BudgetExhausted);
        assert_eq!(run.result.stats.elapsed_secs, 100.0);
    }

    #[test]
    fn parents_precede_children() {
        let s = socrates();
        let initial = vec![s.axiom, s.fact, s.negated_goal];
        let run = saturate(&initial, &clause_weight_cost(), AgeCostRatio::default(), Budget::clauses(100));
        for r in run.log.iter() {
            assert!(r.provenance.parents().iter().all(|p| p.0 < r.id.0));
            assert_eq!(r.birth_step == 0, r.provenance == Provenance::Input);
        }
    }

    #[test]
    fn negation_of_ground_unit() {
        let s = socrates();
        let mut sig = s.sig.clone();
        let units = negate_conjecture(&s.goal, &mut sig).unwrap();
        assert_eq!(units, vec![s.negated_goal]);
        assert_eq!(sig.functors().len(), s.sig.functors().len());
    }

    #[test]
    fn negation_skolemises_shared_variable() {
        let fx = fixture();
        let mut sig = fx.sig.clone();
        let conj = Clause::new(vec![
            Literal::positive(fx.p, vec![x(0)]),
            Literal::positive(fx.q, vec![x(0)]),
        ]);
        let units = negate_conjecture(&conj, &mut sig).unwrap();
        let sk0 = Term::constant(sig.lookup_functor("sk0").unwrap());
        assert_eq!(
            units,
            vec![
                Clause::new(vec![Literal::negative(fx.p, vec![sk0.clone()])]),
                Clause::new(vec![Literal::negative(fx.q, vec![sk0])]),
            ]
        );
        assert_eq!(negate_conjecture(&Clause::empty(), &mut sig), Err(NegationError::EmptyConjecture));
    }

    #[test]
    fn weight_cost_values() {
        let fx = fixture();
        let stats = InitialStats::new(&[Clause::empty()]).unwrap();
        let ctx = CostContext { initial: &[], initial_stats: &stats, step: 0, origin: ClauseOrigin::default() };
        let cost = clause_weight_cost();
        assert_eq!(cost.cost(&weight_example(&fx), &ctx), 9.0);
        assert_eq!(cost.cost(&Clause::empty(), &ctx), 1.0);
        let pa = Clause::new(vec![Literal::positive(fx.p, vec![Term::constant(fx.a)])]);
        let pga = Clause::new(vec![Literal::positive(fx.p, vec![Term::App(fx.g, vec![Term::constant(fx.a)])])]);
        assert_eq!(cost.cost(&pa, &ctx), 4.0);
        assert_eq!(cost.cost(&pga, &ctx), 5.0);
    }

    #[test]
    fn ratio_schedule() {
        let r = AgeCostRatio::new(1, 5).unwrap();
        let picks: Vec<bool> = (0..12).map(|t| r.picks_age(t)).collect();
        assert_eq!(picks, [true, false, false, false, false, false, true, false, false, false, false, false]);
        assert!(AgeCostRatio::new(0, 1).is_none());
    }
}
