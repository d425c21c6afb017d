//! Robinson unification, binary resolution and factoring.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::logic::{Clause, Literal, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UnifyFailure {
    #[error("symbol clash")]
    Clash,
    #[error("occurs check")]
    OccursCheck,
}

/// An idempotent substitution: no bound variable occurs in any bound term.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    bindings: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.bindings.get(&v)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Term)> {
        self.bindings.iter().map(|(v, t)| (*v, t))
    }

    /// Builds a substitution from explicit bindings. The caller is
    /// responsible for idempotence.
    pub fn from_bindings(bindings: impl IntoIterator<Item = (Var, Term)>) -> Self {
        Substitution { bindings: bindings.into_iter().collect() }
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        t.map_vars(&mut |v| self.bindings.get(&v).cloned().unwrap_or(Term::Var(v)))
    }

    pub fn apply_literal(&self, l: &Literal) -> Literal {
        l.map_vars(&mut |v| self.bindings.get(&v).cloned().unwrap_or(Term::Var(v)))
    }

    pub fn apply_clause(&self, c: &Clause) -> Clause {
        c.map_vars(&mut |v| self.bindings.get(&v).cloned().unwrap_or(Term::Var(v)))
    }

    /// `self` followed by `other`: applying the result equals applying
    /// `self` and then `other`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut bindings: BTreeMap<Var, Term> =
            self.bindings.iter().map(|(v, t)| (*v, other.apply_term(t))).collect();
        for (v, t) in &other.bindings {
            bindings.entry(*v).or_insert_with(|| t.clone());
        }
        bindings.retain(|v, t| *t != Term::Var(*v));
        Substitution { bindings }
    }
}

/// Triangular unifier whose bindings borrow subterms of the unified inputs.
/// Only constructible inside the crate; exposed for [`Unifiable`].
pub struct Unifier<'a> {
    bindings: Vec<(Var, &'a Term)>,
}

impl<'a> Unifier<'a> {
    pub(crate) fn new() -> Self {
        Unifier { bindings: Vec::new() }
    }

    fn lookup(&self, v: Var) -> Option<&'a Term> {
        self.bindings.iter().rev().find(|(w, _)| *w == v).map(|(_, t)| *t)
    }

    fn deref(&self, mut t: &'a Term) -> &'a Term {
        while let Term::Var(v) = t {
            match self.lookup(*v) {
                Some(bound) => t = bound,
                None => break,
            }
        }
        t
    }

    fn occurs(&self, v: Var, t: &'a Term) -> bool {
        match self.deref(t) {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| self.occurs(v, a)),
        }
    }

    pub(crate) fn unify_args(&mut self, a: &'a [Term], b: &'a [Term]) -> Result<(), UnifyFailure> {
        if a.len() != b.len() {
            return Err(UnifyFailure::Clash);
        }
        let mut work: Vec<(&'a Term, &'a Term)> = a.iter().zip(b).collect();
        while let Some((s, t)) = work.pop() {
            let s = self.deref(s);
            let t = self.deref(t);
            match (s, t) {
                (Term::Var(v), Term::Var(w)) if v == w => {}
                (Term::Var(v), other) | (other, Term::Var(v)) => {
                    if self.occurs(*v, other) {
                        return Err(UnifyFailure::OccursCheck);
                    }
                    self.bindings.push((*v, other));
                }
                (Term::App(f, xs), Term::App(g, ys)) => {
                    if f != g || xs.len() != ys.len() {
                        return Err(UnifyFailure::Clash);
                    }
                    work.extend(xs.iter().zip(ys));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Var(v) => match self.lookup(*v) {
                Some(bound) => self.apply(bound),
                None => Term::Var(*v),
            },
            Term::App(f, args) => Term::App(*f, args.iter().map(|a| self.apply(a)).collect()),
        }
    }

    pub(crate) fn apply_literal(&self, l: &Literal) -> Literal {
        Literal {
            negated: l.negated,
            pred: l.pred,
            args: l.args.iter().map(|a| self.apply(a)).collect(),
        }
    }

    pub(crate) fn into_substitution(self) -> Substitution {
        let mut bindings = BTreeMap::new();
        for (v, _) in &self.bindings {
            bindings.insert(*v, self.apply(&Term::Var(*v)));
        }
        Substitution { bindings }
    }
}

/// Things that can be unified: terms, and literals of equal polarity.
pub trait Unifiable {
    fn unify_into<'a>(&'a self, other: &'a Self, u: &mut Unifier<'a>) -> Result<(), UnifyFailure>;
}

impl Unifiable for Term {
    fn unify_into<'a>(&'a self, other: &'a Self, u: &mut Unifier<'a>) -> Result<(), UnifyFailure> {
        u.unify_args(core::slice::from_ref(self), core::slice::from_ref(other))
    }
}

impl Unifiable for Literal {
    fn unify_into<'a>(&'a self, other: &'a Self, u: &mut Unifier<'a>) -> Result<(), UnifyFailure> {
        if self.negated != other.negated || self.pred != other.pred {
            return Err(UnifyFailure::Clash);
        }
        u.unify_args(&self.args, &other.args)
    }
}

/// Most general unifier of `a` and `b`, with occurs check.
pub fn mgu<T: Unifiable>(a: &T, b: &T) -> Result<Substitution, UnifyFailure> {
    let mut u = Unifier::new();
    a.unify_into(b, &mut u)?;
    Ok(u.into_substitution())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InferenceRule {
    /// Literal `left` of the first premise resolved against literal `right`
    /// of the second.
    Resolution { left: usize, right: usize },
    /// Literals `first` and `second` of the premise merged.
    Factoring { first: usize, second: usize },
}

impl InferenceRule {
    pub fn premise_count(&self) -> u8 {
        match self {
            InferenceRule::Resolution { .. } => 2,
            InferenceRule::Factoring { .. } => 1,
        }
    }
}

/// A conclusion together with the rule instance that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inference {
    pub clause: Clause,
    pub rule: InferenceRule,
}

fn offset_for(c: &Clause) -> u32 {
    c.max_var().map_or(0, |v| v.0 + 1)
}

/// Could some literal of `a` be resolved against some literal of `b`?
pub(crate) fn may_resolve(a: &Clause, b: &Clause) -> bool {
    a.literals().iter().any(|l1| {
        b.literals().iter().any(|l2| l1.negated != l2.negated && l1.pred == l2.pred)
    })
}

/// All non-tautological binary resolvents of `c1` and `c2`. The premises are
/// renamed apart internally, so `c1` and `c2` may be the same clause.
pub fn resolvents(c1: &Clause, c2: &Clause) -> Vec<Inference> {
    let mut out = Vec::new();
    if !may_resolve(c1, c2) {
        return out;
    }
    let c2 = c2.shift_vars(offset_for(c1));
    for (i, l1) in c1.literals().iter().enumerate() {
        for (j, l2) in c2.literals().iter().enumerate() {
            if l1.negated == l2.negated || l1.pred != l2.pred {
                continue;
            }
            let mut u = Unifier::new();
            if u.unify_args(&l1.args, &l2.args).is_err() {
                continue;
            }
            let literals = c1
                .without(i)
                .chain(c2.without(j))
                .map(|l| u.apply_literal(l))
                .collect();
            let clause = Clause::new(literals).normalized();
            if !clause.is_tautology() {
                out.push(Inference { clause, rule: InferenceRule::Resolution { left: i, right: j } });
            }
        }
    }
    out
}

/// All non-tautological factors of `c`, one per unifiable pair of literals
/// with equal polarity and predicate.
pub fn factors(c: &Clause) -> Vec<Inference> {
    let mut out = Vec::new();
    let lits = c.literals();
    for i in 0..lits.len() {
        for j in i + 1..lits.len() {
            let (a, b) = (&lits[i], &lits[j]);
            if a.negated != b.negated || a.pred != b.pred {
                continue;
            }
            let mut u = Unifier::new();
            if u.unify_args(&a.args, &b.args).is_err() {
                continue;
            }
            let clause = Clause::new(c.without(j).map(|l| u.apply_literal(l)).collect()).normalized();
            if !clause.is_tautology() {
                out.push(Inference { clause, rule: InferenceRule::Factoring { first: i, second: j } });
            }
        }
    }
    out
}
