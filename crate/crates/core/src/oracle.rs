//! Slow reference implementations used to cross-check the prover in tests.
//!
//! Everything here works by enumeration and shares no code with the
//! unifier, the resolution rules or the subsumption matcher.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use crate::logic::{Clause, FunctorId, Literal, PredId, Signature, Term, Var};

/// A ground literal: atom index and polarity (`true` = positive).
pub type GroundLiteral = (usize, bool);

/// Ground atoms over a finite set of constants, indexed densely.
#[derive(Default, Debug)]
pub struct HerbrandBase {
    index: BTreeMap<(PredId, Vec<FunctorId>), usize>,
}

impl HerbrandBase {
    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    fn atom(&mut self, pred: PredId, args: Vec<FunctorId>) -> usize {
        let next = self.index.len();
        *self.index.entry((pred, args)).or_insert(next)
    }
}

fn ground_term(t: &Term, sub: &BTreeMap<Var, FunctorId>) -> Option<FunctorId> {
    match t {
        Term::Var(v) => sub.get(v).copied(),
        Term::App(f, args) if args.is_empty() => Some(*f),
        Term::App(..) => None,
    }
}

fn ground_literal(l: &Literal, sub: &BTreeMap<Var, FunctorId>, base: &mut HerbrandBase) -> Option<GroundLiteral> {
    let args = l.args.iter().map(|t| ground_term(t, sub)).collect::<Option<Vec<_>>>()?;
    Some((base.atom(l.pred, args), !l.negated))
}

/// All ground instances of a function-free clause over `universe`.
/// Returns `None` if the clause contains a non-constant functor.
pub fn ground_instances(c: &Clause, universe: &[FunctorId], base: &mut HerbrandBase) -> Option<Vec<Vec<GroundLiteral>>> {
    let vars: Vec<Var> = c.variables().0.into_iter().collect();
    if !vars.is_empty() && universe.is_empty() {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; vars.len()];
    loop {
        let sub: BTreeMap<Var, FunctorId> = vars.iter().zip(&choice).map(|(v, &i)| (*v, universe[i])).collect();
        let lits = c.literals().iter().map(|l| ground_literal(l, &sub, base)).collect::<Option<Vec<_>>>()?;
        out.push(lits);
        // odometer
        let mut k = 0;
        loop {
            if k == vars.len() {
                return Some(out);
            }
            choice[k] += 1;
            if choice[k] < universe.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn satisfied(clause: &[GroundLiteral], model: &[bool]) -> bool {
    clause.iter().any(|&(a, pos)| model[a] == pos)
}

/// Every assignment of the `n` atoms that satisfies all clauses, by plain
/// enumeration of the `2^n` candidates. Intended for `n ≤ 20`.
pub fn enumerate_models(clauses: &[Vec<GroundLiteral>], n: usize) -> Vec<Vec<bool>> {
    assert!(n <= 24, "too many atoms for exhaustive enumeration");
    let mut out = Vec::new();
    for bits in 0u32..(1u32 << n) {
        let model: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
        if clauses.iter().all(|c| satisfied(c, &model)) {
            out.push(model);
        }
    }
    out
}

/// Exhaustive search for a model: branch on atoms in index order, with
/// unit propagation and a cut whenever some clause has every literal false.
/// `None` means no model exists.
pub fn find_model(clauses: &[Vec<GroundLiteral>], n: usize) -> Option<Vec<bool>> {
    fn propagate(clauses: &[Vec<GroundLiteral>], assign: &mut [Option<bool>]) -> bool {
        loop {
            let mut changed = false;
            for c in clauses {
                let mut open = None;
                let mut open_count = 0;
                let mut sat = false;
                for &(a, pos) in c {
                    match assign[a] {
                        Some(v) if v == pos => {
                            sat = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open_count += 1;
                            open = Some((a, pos));
                        }
                    }
                }
                if sat {
                    continue;
                }
                match (open_count, open) {
                    (0, _) => return false,
                    (1, Some((a, pos))) => {
                        assign[a] = Some(pos);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }
    fn go(clauses: &[Vec<GroundLiteral>], assign: &mut Vec<Option<bool>>) -> bool {
        if !propagate(clauses, assign) {
            return false;
        }
        let Some(k) = assign.iter().position(Option::is_none) else {
            return true;
        };
        for value in [false, true] {
            let mut next = assign.clone();
            next[k] = Some(value);
            if go(clauses, &mut next) {
                *assign = next;
                return true;
            }
        }
        false
    }
    let mut assign = vec![None; n];
    go(clauses, &mut assign).then(|| assign.into_iter().map(|v| v.unwrap_or(false)).collect())
}

fn constants_of(clauses: &[&Clause]) -> Option<BTreeSet<FunctorId>> {
    let mut out = BTreeSet::new();
    let mut ok = true;
    for c in clauses {
        for l in c.literals() {
            for t in &l.args {
                match t {
                    Term::App(f, args) if args.is_empty() => {
                        out.insert(*f);
                    }
                    Term::App(..) => ok = false,
                    Term::Var(_) => {}
                }
            }
        }
    }
    ok.then_some(out)
}

/// Does the function-free clause set `premises` entail `goal`?
///
/// The goal's variables are replaced by fresh constants and the premises
/// are grounded over the problem constants plus those fresh ones; the goal
/// is entailed iff the ground premises together with the negated ground
/// goal have no Herbrand model. `fresh` must supply constants not used
/// anywhere in the premises or the goal (at least one more than the goal
/// has variables, to keep the universe nonempty). Returns `None` if some
/// clause has a non-constant functor.
pub fn entails(premises: &[Clause], goal: &Clause, fresh: &[FunctorId]) -> Option<bool> {
    let all: Vec<&Clause> = premises.iter().chain(core::iter::once(goal)).collect();
    let mut universe: Vec<FunctorId> = constants_of(&all)?.into_iter().collect();
    let goal_vars: Vec<Var> = goal.variables().0.into_iter().collect();
    assert!(fresh.len() > goal_vars.len(), "not enough fresh constants");
    let sub: BTreeMap<Var, FunctorId> = goal_vars.iter().copied().zip(fresh.iter().copied()).collect();
    universe.extend(sub.values().copied());
    if universe.is_empty() {
        universe.push(fresh[goal_vars.len()]);
    }
    let mut base = HerbrandBase::default();
    let mut ground = Vec::new();
    for p in premises {
        ground.extend(ground_instances(p, &universe, &mut base)?);
    }
    for l in goal.literals() {
        let (atom, pos) = ground_literal(l, &sub, &mut base)?;
        ground.push(vec![(atom, !pos)]);
    }
    Some(find_model(&ground, base.len()).is_none())
}

fn subterms<'a>(t: &'a Term, out: &mut BTreeSet<&'a Term>) {
    out.insert(t);
    if let Term::App(_, args) = t {
        args.iter().for_each(|a| subterms(a, out));
    }
}

fn substitute(t: &Term, sub: &BTreeMap<Var, &Term>) -> Term {
    match t {
        Term::Var(v) => sub.get(v).map(|s| (*s).clone()).unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::App(*f, args.iter().map(|a| substitute(a, sub)).collect()),
    }
}

/// θ-subsumption (set inclusion) by trying every map from the variables of
/// `c1` to subterms of `c2`.
pub fn theta_subsumes_exhaustive(c1: &Clause, c2: &Clause) -> bool {
    let vars: Vec<Var> = c1.variables().0.into_iter().collect();
    let mut pool = BTreeSet::new();
    for l in c2.literals() {
        l.args.iter().for_each(|t| subterms(t, &mut pool));
    }
    let pool: Vec<&Term> = pool.into_iter().collect();
    let target: BTreeSet<&Literal> = c2.literals().iter().collect();
    let check = |sub: &BTreeMap<Var, &Term>| {
        c1.literals().iter().all(|l| {
            let image = Literal::new(l.negated, l.pred, l.args.iter().map(|t| substitute(t, sub)).collect());
            target.contains(&image)
        })
    };
    if vars.is_empty() {
        return check(&BTreeMap::new());
    }
    if pool.is_empty() {
        return false;
    }
    let mut choice = vec![0usize; vars.len()];
    loop {
        let sub: BTreeMap<Var, &Term> = vars.iter().zip(&choice).map(|(v, &i)| (*v, pool[i])).collect();
        if check(&sub) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == vars.len() {
                return false;
            }
            choice[k] += 1;
            if choice[k] < pool.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// A small fixed signature and seeded generators of random clauses over it.
pub struct Vocabulary {
    pub signature: Signature,
    /// Predicates with their arities.
    pub predicates: Vec<(PredId, usize)>,
    pub constants: Vec<FunctorId>,
    /// Non-constant functors with their arities.
    pub functions: Vec<(FunctorId, usize)>,
    /// Constants that never occur in generated clauses.
    pub fresh: Vec<FunctorId>,
}

impl Vocabulary {
    /// `s/0`, `p/1`, `q/1`, `r/2` over the constants `a`, `b`, ...
    pub fn function_free(constants: usize) -> Self {
        let mut signature = Signature::new();
        let predicates = [("s", 0), ("p", 1), ("q", 1), ("r", 2)]
            .iter()
            .map(|&(n, k)| (signature.predicate(n, k).expect("valid"), k))
            .collect();
        let constants = (0..constants)
            .map(|i| signature.functor(&format!("{}", (b'a' + i as u8) as char), 0).expect("valid"))
            .collect();
        let fresh = (0..64).map(|i| signature.functor(&format!("k{i}"), 0).expect("valid")).collect();
        Vocabulary { signature, predicates, constants, functions: Vec::new(), fresh }
    }

    /// As [`Vocabulary::function_free`] plus `f/1` and `g/2`.
    pub fn with_functions(constants: usize) -> Self {
        let mut v = Self::function_free(constants);
        v.functions = [("f", 1), ("g", 2)]
            .iter()
            .map(|&(n, k)| (v.signature.functor(n, k).expect("valid"), k))
            .collect();
        v
    }

    pub fn random_term<R: Rng>(&self, rng: &mut R, vars: u32, depth: usize) -> Term {
        let pick_fn = depth > 0 && !self.functions.is_empty() && rng.gen_bool(0.3);
        if pick_fn {
            let (f, k) = self.functions[rng.gen_range(0..self.functions.len())];
            return Term::App(f, (0..k).map(|_| self.random_term(rng, vars, depth - 1)).collect());
        }
        let leaves = vars as usize + self.constants.len();
        assert!(leaves > 0, "no variables and no constants");
        let i = rng.gen_range(0..leaves);
        if i < vars as usize {
            Term::Var(Var(i as u32))
        } else {
            Term::constant(self.constants[i - vars as usize])
        }
    }

    pub fn random_literal<R: Rng>(&self, rng: &mut R, vars: u32, depth: usize) -> Literal {
        let (p, k) = self.predicates[rng.gen_range(0..self.predicates.len())];
        let args = (0..k).map(|_| self.random_term(rng, vars, depth)).collect();
        Literal::new(rng.gen_bool(0.5), p, args)
    }

    /// Between `min_len` and `max_len` literals over variables `X0..X(vars-1)`.
    pub fn random_clause<R: Rng>(&self, rng: &mut R, min_len: usize, max_len: usize, vars: u32, depth: usize) -> Clause {
        let n = rng.gen_range(min_len..=max_len);
        Clause::new((0..n).map(|_| self.random_literal(rng, vars, depth)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::tests::{fixture, x};

    #[test]
    fn search_agrees_with_enumeration() {
        // (a0 | a1) & (~a0 | a2) & (~a2) & (~a1 | a0)
        let cls = vec![
            vec![(0, true), (1, true)],
            vec![(0, false), (2, true)],
            vec![(2, false)],
            vec![(1, false), (0, true)],
        ];
        assert!(enumerate_models(&cls, 3).is_empty());
        assert!(find_model(&cls, 3).is_none());
        let sat = &cls[..3];
        let models = enumerate_models(sat, 3);
        assert_eq!(models, vec![vec![false, true, false]]);
        assert_eq!(find_model(sat, 3), Some(vec![false, true, false]));
    }

    #[test]
    fn entailment_uses_fresh_constants() {
        let mut fx = fixture();
        let k: Vec<FunctorId> = (0..3).map(|i| fx.sig.functor(&alloc::format!("k{i}"), 0).unwrap()).collect();
        let a = Term::constant(fx.a);
        let pa = Clause::new(vec![Literal::positive(fx.p, vec![a.clone()])]);
        let px = Clause::new(vec![Literal::positive(fx.p, vec![x(0)])]);
        // p(a) does not entail p(X), although every instance over {a} holds
        assert_eq!(entails(&[pa.clone()], &px, &k), Some(false));
        assert_eq!(entails(&[px.clone()], &pa, &k), Some(true));
        let rule = Clause::new(vec![Literal::negative(fx.p, vec![x(0)]), Literal::positive(fx.q, vec![x(0)])]);
        let qa = Clause::new(vec![Literal::positive(fx.q, vec![a])]);
        assert_eq!(entails(&[rule.clone(), pa.clone()], &qa, &k), Some(true));
        assert_eq!(entails(&[rule], &qa, &k), Some(false));
        assert_eq!(entails(&[pa], &Clause::empty(), &k), Some(false));
    }

    #[test]
    fn exhaustive_subsumption_basics() {
        let fx = fixture();
        let a = Term::constant(fx.a);
        let pxpy = Clause::new(vec![Literal::positive(fx.p, vec![x(0)]), Literal::positive(fx.p, vec![x(1)])]);
        let pa = Clause::new(vec![Literal::positive(fx.p, vec![a])]);
        assert!(theta_subsumes_exhaustive(&pxpy, &pa));
        assert!(!theta_subsumes_exhaustive(&pa, &pxpy));
        assert!(theta_subsumes_exhaustive(&Clause::empty(), &pa));
        assert!(!theta_subsumes_exhaustive(&pa, &Clause::empty()));
    }
}
