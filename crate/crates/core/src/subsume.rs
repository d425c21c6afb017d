//! θ-subsumption by backtracking literal matching, and the order-subsumption
//! guard used by the saturation loop.

use alloc::vec;
use alloc::vec::Vec;

use crate::logic::{Clause, Literal, Term, Var};

/// How the literals of the subsuming clause must map into the subsumed one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Inclusion {
    /// `c1θ ⊆ c2` as sets: several literals may land on the same target.
    #[default]
    Set,
    /// Every literal of `c1` needs its own target literal.
    Multiset,
}

/// One-way matcher. Pattern variables are bound to subterms of the target;
/// target variables behave as constants.
struct Matcher<'a> {
    bindings: Vec<(Var, &'a Term)>,
}

impl<'a> Matcher<'a> {
    fn lookup(&self, v: Var) -> Option<&'a Term> {
        self.bindings.iter().find(|(w, _)| *w == v).map(|(_, t)| *t)
    }

    fn match_term(&mut self, pattern: &Term, target: &'a Term) -> bool {
        match pattern {
            Term::Var(v) => match self.lookup(*v) {
                Some(bound) => bound == target,
                None => {
                    self.bindings.push((*v, target));
                    true
                }
            },
            Term::App(f, args) => match target {
                Term::App(g, targs) if f == g && args.len() == targs.len() => {
                    args.iter().zip(targs).all(|(p, t)| self.match_term(p, t))
                }
                _ => false,
            },
        }
    }

    fn match_literal(&mut self, pattern: &Literal, target: &'a Literal) -> bool {
        let mark = self.bindings.len();
        let ok = pattern.negated == target.negated
            && pattern.pred == target.pred
            && pattern.args.iter().zip(&target.args).all(|(p, t)| self.match_term(p, t));
        if !ok {
            self.bindings.truncate(mark);
        }
        ok
    }
}

fn search<'a>(
    pattern: &[&Literal],
    target: &'a [Literal],
    used: &mut [bool],
    m: &mut Matcher<'a>,
    mode: Inclusion,
) -> bool {
    let Some((first, rest)) = pattern.split_first() else {
        return true;
    };
    for (i, t) in target.iter().enumerate() {
        if mode == Inclusion::Multiset && used[i] {
            continue;
        }
        let mark = m.bindings.len();
        if m.match_literal(first, t) {
            used[i] = true;
            if search(rest, target, used, m, mode) {
                return true;
            }
            used[i] = false;
            m.bindings.truncate(mark);
        }
    }
    false
}

/// θ-subsumption under the given inclusion reading.
pub fn theta_subsumes_with(c1: &Clause, c2: &Clause, mode: Inclusion) -> bool {
    if mode == Inclusion::Multiset && c1.len() > c2.len() {
        return false;
    }
    let target = c2.literals();
    // most constrained literal first
    let mut pattern: Vec<(usize, &Literal)> = Vec::with_capacity(c1.len());
    for l in c1.literals() {
        let candidates = target
            .iter()
            .filter(|t| t.negated == l.negated && t.pred == l.pred)
            .count();
        if candidates == 0 {
            return false;
        }
        pattern.push((candidates, l));
    }
    pattern.sort_by_key(|(n, _)| *n);
    let pattern: Vec<&Literal> = pattern.into_iter().map(|(_, l)| l).collect();
    let mut used = vec![false; target.len()];
    let mut m = Matcher { bindings: Vec::new() };
    search(&pattern, target, &mut used, &mut m, mode)
}

/// Is there a θ with `c1θ ⊆ c2` (set inclusion)?
pub fn theta_subsumes(c1: &Clause, c2: &Clause) -> bool {
    theta_subsumes_with(c1, c2, Inclusion::Set)
}

/// θ-subsumption restricted to subsumers with no more literals than the
/// subsumed clause.
pub fn order_subsumes(c1: &Clause, c2: &Clause) -> bool {
    c1.len() <= c2.len() && theta_subsumes(c1, c2)
}

/// Bloom-style summary of the (polarity, predicate) pairs of a clause. If
/// `c1` subsumes `c2` then `mask(c1) & !mask(c2) == 0`.
pub(crate) fn literal_mask(c: &Clause) -> u64 {
    c.literals().iter().fold(0u64, |m, l| {
        let bit = (l.pred.0 as u64 * 2 + l.negated as u64) % 64;
        m | (1 << bit)
    })
}

/// Same literal set up to a bijective renaming of variables.
pub fn is_variant(c1: &Clause, c2: &Clause) -> bool {
    c1.len() == c2.len()
        && c1.weight() == c2.weight()
        && c1.variables().0.len() == c2.variables().0.len()
        && theta_subsumes_with(c1, c2, Inclusion::Multiset)
        && theta_subsumes_with(c2, c1, Inclusion::Multiset)
}
