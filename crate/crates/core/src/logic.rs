//! Clausal first-order logic without equality.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A variable. Identifiers are local to the clause that contains them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

/// Index of a function symbol (constants included) in a [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunctorId(pub u32);

/// Index of a predicate symbol in a [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PredId(pub u32);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Var),
    App(FunctorId, Vec<Term>),
}

impl Term {
    pub fn constant(f: FunctorId) -> Self {
        Term::App(f, Vec::new())
    }

    /// Number of nodes: one per functor application and one per variable occurrence.
    pub fn node_count(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::node_count).sum::<usize>(),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    pub fn for_each_var(&self, f: &mut impl FnMut(Var)) {
        match self {
            Term::Var(v) => f(*v),
            Term::App(_, args) => args.iter().for_each(|a| a.for_each_var(f)),
        }
    }

    pub fn for_each_functor(&self, f: &mut impl FnMut(FunctorId)) {
        if let Term::App(g, args) = self {
            f(*g);
            args.iter().for_each(|a| a.for_each_functor(f));
        }
    }

    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(*v),
            Term::App(g, args) => Term::App(*g, args.iter().map(|a| a.map_vars(f)).collect()),
        }
    }

    /// Maximum nesting depth; variables and constants have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }
}

/// Literals order by predicate first, so a clause lists its predicates in
/// the order they were declared.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub pred: PredId,
    pub negated: bool,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(negated: bool, pred: PredId, args: Vec<Term>) -> Self {
        Literal { negated, pred, args }
    }

    pub fn positive(pred: PredId, args: Vec<Term>) -> Self {
        Self::new(false, pred, args)
    }

    pub fn negative(pred: PredId, args: Vec<Term>) -> Self {
        Self::new(true, pred, args)
    }

    pub fn complement(&self) -> Self {
        Literal { negated: !self.negated, pred: self.pred, args: self.args.clone() }
    }

    /// Same predicate and identical arguments, polarity ignored.
    pub fn same_atom(&self, other: &Literal) -> bool {
        self.pred == other.pred && self.args == other.args
    }

    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Literal {
        Literal {
            negated: self.negated,
            pred: self.pred,
            args: self.args.iter().map(|a| a.map_vars(f)).collect(),
        }
    }

    pub fn for_each_var(&self, f: &mut impl FnMut(Var)) {
        self.args.iter().for_each(|a| a.for_each_var(f));
    }

    /// Literal node + atomic formula node + its argument subtrees.
    fn weight(&self) -> usize {
        2 + self.args.iter().map(Term::node_count).sum::<usize>()
    }
}

/// A disjunction of literals; the empty clause denotes falsity.
///
/// Literals are kept sorted with exact duplicates removed, so the derived
/// equality compares clauses as literal sets independently of the order in
/// which literals were supplied.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    pub fn new(mut literals: Vec<Literal>) -> Self {
        literals.sort();
        literals.dedup();
        Clause { literals }
    }

    pub fn empty() -> Self {
        Clause { literals: Vec::new() }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(|l| l.args.iter().all(Term::is_ground))
    }

    /// Node count of the clause tree: the clause node, a node per literal,
    /// a node per atomic formula, and a node per functor application or
    /// variable occurrence below it.
    pub fn weight(&self) -> usize {
        1 + self.literals.iter().map(Literal::weight).sum::<usize>()
    }

    pub fn for_each_var(&self, f: &mut impl FnMut(Var)) {
        self.literals.iter().for_each(|l| l.for_each_var(f));
    }

    /// Distinct variables and the total number of variable occurrences.
    pub fn variables(&self) -> (BTreeSet<Var>, usize) {
        let mut distinct = BTreeSet::new();
        let mut total = 0;
        self.for_each_var(&mut |v| {
            distinct.insert(v);
            total += 1;
        });
        (distinct, total)
    }

    pub fn max_var(&self) -> Option<Var> {
        let mut max = None;
        self.for_each_var(&mut |v| max = max.max(Some(v)));
        max
    }

    pub fn map_vars(&self, f: &mut impl FnMut(Var) -> Term) -> Clause {
        Clause::new(self.literals.iter().map(|l| l.map_vars(f)).collect())
    }

    /// Adds `offset` to every variable identifier.
    pub fn shift_vars(&self, offset: u32) -> Clause {
        // Shifting is monotone, so the sorted order is preserved.
        Clause {
            literals: self
                .literals
                .iter()
                .map(|l| l.map_vars(&mut |v| Term::Var(Var(v.0 + offset))))
                .collect(),
        }
    }

    /// A variant of this clause whose variables avoid `reserved`.
    pub fn rename_apart(&self, reserved: &BTreeSet<Var>) -> Clause {
        let mut map = BTreeMap::new();
        let mut next = 0u32;
        self.map_vars(&mut |v| {
            let w = *map.entry(v).or_insert_with(|| {
                while reserved.contains(&Var(next)) {
                    next += 1;
                }
                next += 1;
                Var(next - 1)
            });
            Term::Var(w)
        })
    }

    /// Renumbers variables to `0..k` in order of first occurrence.
    pub fn normalized(&self) -> Clause {
        let mut map = BTreeMap::new();
        self.map_vars(&mut |v| {
            let n = map.len() as u32;
            Term::Var(*map.entry(v).or_insert(Var(n)))
        })
    }

    /// Some negative literal is syntactically identical to a positive one.
    pub fn is_tautology(&self) -> bool {
        self.literals.iter().filter(|l| l.negated).any(|neg| {
            self.literals.iter().any(|pos| !pos.negated && pos.same_atom(neg))
        })
    }

    pub fn without(&self, index: usize) -> impl Iterator<Item = &Literal> {
        self.literals.iter().enumerate().filter(move |(i, _)| *i != index).map(|(_, l)| l)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> ClauseDisplay<'a> {
        ClauseDisplay { clause: self, sig }
    }
}

impl FromIterator<Literal> for Clause {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        Clause::new(iter.into_iter().collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    Predicate,
    Functor,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
    pub kind: SymbolKind,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("invalid symbol name {0:?}: must start with a lowercase letter or digit")]
    InvalidName(String),
    #[error("{kind:?} `{name}` used with arity {found} but was declared with arity {expected}")]
    ArityMismatch { name: String, kind: SymbolKind, expected: usize, found: usize },
}

/// Predicate and functor symbols of a problem. Names are unique per kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    predicates: Vec<Symbol>,
    functors: Vec<Symbol>,
    pred_index: BTreeMap<String, PredId>,
    functor_index: BTreeMap<String, FunctorId>,
}

fn valid_symbol_name(name: &str) -> bool {
    name.chars().next().is_some_and(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn predicate(&mut self, name: &str, arity: usize) -> Result<PredId, SignatureError> {
        if let Some(&id) = self.pred_index.get(name) {
            let expected = self.predicates[id.0 as usize].arity;
            if expected != arity {
                return Err(SignatureError::ArityMismatch {
                    name: name.into(),
                    kind: SymbolKind::Predicate,
                    expected,
                    found: arity,
                });
            }
            return Ok(id);
        }
        if !valid_symbol_name(name) {
            return Err(SignatureError::InvalidName(name.into()));
        }
        let id = PredId(self.predicates.len() as u32);
        self.predicates.push(Symbol { name: name.into(), arity, kind: SymbolKind::Predicate });
        self.pred_index.insert(name.into(), id);
        Ok(id)
    }

    pub fn functor(&mut self, name: &str, arity: usize) -> Result<FunctorId, SignatureError> {
        if let Some(&id) = self.functor_index.get(name) {
            let expected = self.functors[id.0 as usize].arity;
            if expected != arity {
                return Err(SignatureError::ArityMismatch {
                    name: name.into(),
                    kind: SymbolKind::Functor,
                    expected,
                    found: arity,
                });
            }
            return Ok(id);
        }
        if !valid_symbol_name(name) {
            return Err(SignatureError::InvalidName(name.into()));
        }
        let id = FunctorId(self.functors.len() as u32);
        self.functors.push(Symbol { name: name.into(), arity, kind: SymbolKind::Functor });
        self.functor_index.insert(name.into(), id);
        Ok(id)
    }

    /// Registers a constant named `<prefix><n>` for the smallest unused `n`.
    pub fn fresh_constant(&mut self, prefix: &str) -> FunctorId {
        let mut n = 0usize;
        loop {
            let name = format!("{prefix}{n}");
            if !self.functor_index.contains_key(&name) {
                return self.functor(&name, 0).expect("generated names are valid");
            }
            n += 1;
        }
    }

    pub fn lookup_predicate(&self, name: &str) -> Option<PredId> {
        self.pred_index.get(name).copied()
    }

    pub fn lookup_functor(&self, name: &str) -> Option<FunctorId> {
        self.functor_index.get(name).copied()
    }

    pub fn predicate_symbol(&self, id: PredId) -> &Symbol {
        &self.predicates[id.0 as usize]
    }

    pub fn functor_symbol(&self, id: FunctorId) -> &Symbol {
        &self.functors[id.0 as usize]
    }

    pub fn predicates(&self) -> &[Symbol] {
        &self.predicates
    }

    pub fn functors(&self) -> &[Symbol] {
        &self.functors
    }

    /// Every symbol of `clause` is registered with a matching arity.
    pub fn covers(&self, clause: &Clause) -> bool {
        fn term_ok(sig: &Signature, t: &Term) -> bool {
            match t {
                Term::Var(_) => true,
                Term::App(f, args) => {
                    sig.functors.get(f.0 as usize).is_some_and(|s| s.arity == args.len())
                        && args.iter().all(|a| term_ok(sig, a))
                }
            }
        }
        clause.literals().iter().all(|l| {
            self.predicates.get(l.pred.0 as usize).is_some_and(|s| s.arity == l.args.len())
                && l.args.iter().all(|a| term_ok(self, a))
        })
    }
}

const VAR_NAMES: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];

/// Display name of the `n`-th distinct variable of a clause.
pub fn variable_name(n: usize) -> String {
    match VAR_NAMES.get(n) {
        Some(name) => String::from(*name),
        None => format!("X{n}"),
    }
}

/// TPTP-style rendering: `~p(X) | q(f(X,c))`, or `$false` for the empty clause.
/// Variables are named by order of first occurrence.
pub struct ClauseDisplay<'a> {
    clause: &'a Clause,
    sig: &'a Signature,
}

impl ClauseDisplay<'_> {
    fn term(&self, t: &Term, names: &mut BTreeMap<Var, usize>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match t {
            Term::Var(v) => {
                let n = names.len();
                let idx = *names.entry(*v).or_insert(n);
                f.write_str(&variable_name(idx))
            }
            Term::App(g, args) => {
                f.write_str(&self.sig.functor_symbol(*g).name)?;
                self.args(args, names, f)
            }
        }
    }

    fn args(&self, args: &[Term], names: &mut BTreeMap<Var, usize>, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if args.is_empty() {
            return Ok(());
        }
        f.write_str("(")?;
        for (i, a) in args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            self.term(a, names, f)?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for ClauseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clause.is_empty() {
            return f.write_str("$false");
        }
        let mut names = BTreeMap::new();
        for (i, lit) in self.clause.literals().iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            if lit.negated {
                f.write_str("~")?;
            }
            f.write_str(&self.sig.predicate_symbol(lit.pred).name)?;
            self.args(&lit.args, &mut names, f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    /// Signature with p/1, q/1, r/2, human/1, mortal/1 and f/2, g/1, a, b, c, s.
    pub(crate) struct Fixture {
        pub sig: Signature,
        pub p: PredId,
        pub q: PredId,
        pub r: PredId,
        pub f: FunctorId,
        pub g: FunctorId,
        pub a: FunctorId,
        pub b: FunctorId,
        pub c: FunctorId,
    }

    pub(crate) fn fixture() -> Fixture {
        let mut sig = Signature::new();
        let p = sig.predicate("p", 1).unwrap();
        let q = sig.predicate("q", 1).unwrap();
        let r = sig.predicate("r", 2).unwrap();
        let f = sig.functor("f", 2).unwrap();
        let g = sig.functor("g", 1).unwrap();
        let a = sig.functor("a", 0).unwrap();
        let b = sig.functor("b", 0).unwrap();
        let c = sig.functor("c", 0).unwrap();
        Fixture { sig, p, q, r, f, g, a, b, c }
    }

    pub(crate) fn x(n: u32) -> Term {
        Term::Var(Var(n))
    }

    /// ¬p(X) ∨ q(f(X, c))
    pub(crate) fn weight_example(fx: &Fixture) -> Clause {
        Clause::new(vec![
            Literal::negative(fx.p, vec![x(0)]),
            Literal::positive(fx.q, vec![Term::App(fx.f, vec![x(0), Term::constant(fx.c)])]),
        ])
    }

    #[test]
    fn weight_of_worked_example_is_nine() {
        let fx = fixture();
        assert_eq!(weight_example(&fx).weight(), 9);
    }

    #[test]
    fn weight_of_empty_and_unit() {
        let fx = fixture();
        assert_eq!(Clause::empty().weight(), 1);
        let pa = Clause::new(vec![Literal::positive(fx.p, vec![Term::constant(fx.a)])]);
        assert_eq!(pa.weight(), 4);
    }

    #[test]
    fn variables_counted_by_occurrence() {
        let fx = fixture();
        let (distinct, total) = weight_example(&fx).variables();
        assert_eq!(distinct.into_iter().collect::<Vec<_>>(), vec![Var(0)]);
        assert_eq!(total, 2);

        let pa = Clause::new(vec![Literal::positive(fx.p, vec![Term::constant(fx.a)])]);
        assert_eq!(pa.variables(), (BTreeSet::new(), 0));

        let c = Clause::new(vec![
            Literal::positive(fx.r, vec![x(0), x(1)]),
            Literal::positive(fx.q, vec![x(0)]),
        ]);
        let (distinct, total) = c.variables();
        assert_eq!(distinct.len(), 2);
        assert_eq!(total, 3);
    }

    #[test]
    fn rename_apart_avoids_reserved() {
        let fx = fixture();
        let px = Clause::new(vec![Literal::positive(fx.p, vec![x(0)])]);
        let reserved: BTreeSet<Var> = [Var(0)].into_iter().collect();
        let renamed = px.rename_apart(&reserved);
        let (vars, _) = renamed.variables();
        assert!(vars.is_disjoint(&reserved));
        assert_eq!(renamed.len(), 1);

        let pa = Clause::new(vec![Literal::positive(fx.p, vec![Term::constant(fx.a)])]);
        assert_eq!(pa.rename_apart(&reserved), pa);

        let rxy = Clause::new(vec![Literal::positive(fx.r, vec![x(0), x(1)])]);
        let renamed = rxy.rename_apart(&BTreeSet::new());
        assert_eq!(renamed.normalized(), rxy.normalized());
    }

    #[test]
    fn tautology_is_syntactic() {
        let fx = fixture();
        let taut = Clause::new(vec![
            Literal::positive(fx.p, vec![x(0)]),
            Literal::negative(fx.p, vec![x(0)]),
        ]);
        assert!(taut.is_tautology());
        let not_taut = Clause::new(vec![
            Literal::positive(fx.p, vec![x(0)]),
            Literal::negative(fx.p, vec![x(1)]),
        ]);
        assert!(!not_taut.is_tautology());
        assert!(!Clause::empty().is_tautology());
    }

    #[test]
    fn literal_order_and_duplicates_do_not_matter() {
        let fx = fixture();
        let l1 = Literal::positive(fx.p, vec![x(0)]);
        let l2 = Literal::negative(fx.q, vec![Term::constant(fx.a)]);
        let c1 = Clause::new(vec![l1.clone(), l2.clone()]);
        let c2 = Clause::new(vec![l2.clone(), l1.clone(), l2]);
        assert_eq!(c1, c2);
        assert_eq!(c2.len(), 2);
    }

    #[test]
    fn display_uses_tptp_syntax() {
        let fx = fixture();
        assert_eq!(weight_example(&fx).display(&fx.sig).to_string(), "~p(X) | q(f(X,c))");
        assert_eq!(Clause::empty().display(&fx.sig).to_string(), "$false");
        let pa = Clause::new(vec![Literal::positive(fx.p, vec![Term::constant(fx.a)])]);
        assert_eq!(pa.display(&fx.sig).to_string(), "p(a)");
    }

    #[test]
    fn signature_enforces_arity_and_names() {
        let mut sig = Signature::new();
        sig.predicate("p", 1).unwrap();
        assert!(matches!(sig.predicate("p", 2), Err(SignatureError::ArityMismatch { .. })));
        assert!(matches!(sig.functor("Foo", 0), Err(SignatureError::InvalidName(_))));
        assert!(matches!(sig.functor("", 0), Err(SignatureError::InvalidName(_))));
        // predicates and functors have separate namespaces
        sig.functor("p", 0).unwrap();
        let sk = sig.fresh_constant("sk");
        assert_eq!(sig.functor_symbol(sk).name, "sk0");
        let sk = sig.fresh_constant("sk");
        assert_eq!(sig.functor_symbol(sk).name, "sk1");
    }
}
