//! First-order syntax: terms, literals, substitutions and syntactic unification.
//!
//! Every value here is immutable once built. Operations that need fresh
//! variable names take a [`FreshVars`] source explicitly so that the names
//! they produce depend only on the derivation that asked for them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Interned identifier for predicates, functors and variables.
pub type Symbol = Arc<str>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(Symbol),
    /// Function application; constants are applications with no arguments.
    App(Symbol, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.into())
    }

    pub fn constant(name: &str) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(functor: &str, args: Vec<Term>) -> Term {
        Term::App(functor.into(), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Nesting depth: variables and constants have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn occurs(&self, var: &str) -> bool {
        match self {
            Term::Var(v) => &**v == var,
            Term::App(_, args) => args.iter().any(|a| a.occurs(var)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) => write_application(f, name, args),
        }
    }
}

fn write_application(f: &mut fmt::Formatter<'_>, name: &str, args: &[Term]) -> fmt::Result {
    f.write_str(name)?;
    if !args.is_empty() {
        f.write_str("(")?;
        for (i, arg) in args.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{arg}")?;
        }
        f.write_str(")")?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub positive: bool,
    pub predicate: Symbol,
    pub args: Vec<Term>,
}

impl Literal {
    pub fn new(positive: bool, predicate: &str, args: Vec<Term>) -> Literal {
        Literal {
            positive,
            predicate: predicate.into(),
            args,
        }
    }

    /// Zero-ary positive literal.
    pub fn atom(predicate: &str) -> Literal {
        Literal::new(true, predicate, Vec::new())
    }

    pub fn opposite(&self) -> Literal {
        Literal {
            positive: !self.positive,
            predicate: self.predicate.clone(),
            args: self.args.clone(),
        }
    }

    /// The literal with a positive sign; used as the key for its atom.
    pub fn to_positive(&self) -> Literal {
        if self.positive {
            self.clone()
        } else {
            self.opposite()
        }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        self.args.iter().all(Term::is_ground)
    }

    /// Deepest argument term; 0 for propositional literals.
    pub fn term_depth(&self) -> usize {
        self.args.iter().map(Term::depth).max().unwrap_or(0)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("~")?;
        }
        write_application(f, &self.predicate, &self.args)
    }
}

/// Collects free variables.
pub trait HasVars {
    fn collect_vars(&self, out: &mut BTreeSet<Symbol>);

    fn vars(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }
}

impl HasVars for Term {
    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

impl HasVars for Literal {
    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.args.iter().for_each(|a| a.collect_vars(out));
    }
}

impl<T: HasVars> HasVars for [T] {
    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.iter().for_each(|x| x.collect_vars(out));
    }
}

impl<T: HasVars> HasVars for Vec<T> {
    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.as_slice().collect_vars(out)
    }
}

/// Values a substitution can be applied to.
pub trait Substitutable: Sized {
    fn apply(&self, subst: &Substitution) -> Self;
}

impl Substitutable for Term {
    fn apply(&self, subst: &Substitution) -> Term {
        match self {
            Term::Var(v) => subst.bindings.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(name, args) => {
                Term::App(name.clone(), args.iter().map(|a| a.apply(subst)).collect())
            }
        }
    }
}

impl Substitutable for Literal {
    fn apply(&self, subst: &Substitution) -> Literal {
        if subst.is_empty() || self.args.is_empty() {
            return self.clone();
        }
        Literal {
            positive: self.positive,
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|a| a.apply(subst)).collect(),
        }
    }
}

impl<T: Substitutable> Substitutable for Vec<T> {
    fn apply(&self, subst: &Substitution) -> Vec<T> {
        self.iter().map(|x| x.apply(subst)).collect()
    }
}

/// Finite map from variables to terms, applied simultaneously.
///
/// Identity bindings are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    bindings: BTreeMap<Symbol, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    /// Builds a substitution from pairs, dropping identity bindings.
    /// Later pairs for the same variable override earlier ones.
    pub fn from_pairs<I: IntoIterator<Item = (Symbol, Term)>>(pairs: I) -> Substitution {
        let mut s = Substitution::new();
        for (v, t) in pairs {
            s.insert(v, t);
        }
        s
    }

    fn insert(&mut self, var: Symbol, term: Term) {
        if matches!(&term, Term::Var(w) if *w == var) {
            self.bindings.remove(&var);
        } else {
            self.bindings.insert(var, term);
        }
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.bindings.get(var)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Bindings in ascending variable order.
    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &Symbol> {
        self.bindings.keys()
    }

    /// `self` then `other`: `t.apply(&a.compose(&b)) == t.apply(&a).apply(&b)`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, t) in &self.bindings {
            out.insert(v.clone(), t.apply(other));
        }
        for (v, t) in &other.bindings {
            if !self.bindings.contains_key(v) {
                out.insert(v.clone(), t.clone());
            }
        }
        out
    }

    pub fn restrict(&self, vars: &BTreeSet<Symbol>) -> Substitution {
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(v, _)| vars.contains(*v))
                .map(|(v, t)| (v.clone(), t.clone()))
                .collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .values()
            .all(|t| t.vars().iter().all(|v| !self.bindings.contains_key(v)))
    }

    /// Inverse of a variable-to-variable bijection, `None` otherwise.
    pub fn invert_renaming(&self) -> Option<Substitution> {
        let mut out = Substitution::new();
        for (v, t) in &self.bindings {
            match t {
                Term::Var(w) if !out.bindings.contains_key(w) => {
                    out.insert(w.clone(), Term::Var(v.clone()));
                }
                _ => return None,
            }
        }
        Some(out)
    }

    /// Binds `var` to `term` (already normalised against `self`) and
    /// rewrites existing bindings so the result stays idempotent.
    fn bind_propagate(&mut self, var: Symbol, term: Term) {
        let single = Substitution::from_pairs([(var.clone(), term.clone())]);
        for t in self.bindings.values_mut() {
            *t = t.apply(&single);
        }
        self.insert(var, term);
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}->{t}")?;
        }
        f.write_str("}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum UnifyError {
    #[error("signs differ")]
    SignMismatch,
    #[error("predicates differ")]
    PredicateMismatch,
    #[error("arities differ")]
    ArityMismatch,
    #[error("function symbol clash")]
    Clash,
    #[error("occurs check")]
    OccursCheck,
}

/// Most general unifier of two literals of the same sign.
///
/// Robinson-style descent with immediate propagation; the result is
/// idempotent. When two variables meet, the one from `left` is bound.
pub fn mgu(left: &Literal, right: &Literal) -> Result<Substitution, UnifyError> {
    if left.positive != right.positive {
        return Err(UnifyError::SignMismatch);
    }
    if left.predicate != right.predicate {
        return Err(UnifyError::PredicateMismatch);
    }
    if left.args.len() != right.args.len() {
        return Err(UnifyError::ArityMismatch);
    }
    let mut subst = Substitution::new();
    for (a, b) in left.args.iter().zip(&right.args) {
        unify_terms(&mut subst, a, b)?;
    }
    Ok(subst)
}

/// Extends `subst` to a most general unifier of `a` and `b`.
pub fn unify_terms(subst: &mut Substitution, a: &Term, b: &Term) -> Result<(), UnifyError> {
    let a = a.apply(subst);
    let b = b.apply(subst);
    match (a, b) {
        (Term::Var(x), Term::Var(y)) if x == y => Ok(()),
        (Term::Var(x), t) | (t, Term::Var(x)) => {
            if t.occurs(&x) {
                Err(UnifyError::OccursCheck)
            } else {
                subst.bind_propagate(x, t);
                Ok(())
            }
        }
        (Term::App(f, fargs), Term::App(g, gargs)) => {
            if f != g || fargs.len() != gargs.len() {
                return Err(UnifyError::Clash);
            }
            for (x, y) in fargs.iter().zip(&gargs) {
                unify_terms(subst, x, y)?;
            }
            Ok(())
        }
    }
}

/// One-way matching: extends `subst` so that `pattern.apply(subst) == target`.
/// Variables of `target` are treated as constants.
pub fn match_term(subst: &mut Substitution, pattern: &Term, target: &Term) -> bool {
    match pattern {
        Term::Var(v) => match subst.bindings.get(v) {
            Some(bound) => bound == target,
            None => {
                subst.bindings.insert(v.clone(), target.clone());
                true
            }
        },
        Term::App(f, pargs) => match target {
            Term::App(g, targs) if f == g && pargs.len() == targs.len() => pargs
                .iter()
                .zip(targs)
                .all(|(p, t)| match_term(subst, p, t)),
            _ => false,
        },
    }
}

pub fn match_literal(subst: &mut Substitution, pattern: &Literal, target: &Literal) -> bool {
    pattern.positive == target.positive
        && pattern.predicate == target.predicate
        && pattern.args.len() == target.args.len()
        && pattern
            .args
            .iter()
            .zip(&target.args)
            .all(|(p, t)| match_term(subst, p, t))
}

/// Tracks a partial bijection between the variables of two values, for
/// equality up to consistent renaming.
#[derive(Clone, Debug, Default)]
pub struct VariantMap {
    forward: BTreeMap<Symbol, Symbol>,
    backward: BTreeMap<Symbol, Symbol>,
}

impl VariantMap {
    pub fn new() -> VariantMap {
        VariantMap::default()
    }

    pub fn vars(&mut self, a: &Symbol, b: &Symbol) -> bool {
        match (self.forward.get(a), self.backward.get(b)) {
            (Some(x), Some(y)) => x == b && y == a,
            (None, None) => {
                self.forward.insert(a.clone(), b.clone());
                self.backward.insert(b.clone(), a.clone());
                true
            }
            _ => false,
        }
    }

    pub fn terms(&mut self, a: &Term, b: &Term) -> bool {
        match (a, b) {
            (Term::Var(x), Term::Var(y)) => self.vars(x, y),
            (Term::App(f, fa), Term::App(g, ga)) => {
                f == g && fa.len() == ga.len() && fa.iter().zip(ga).all(|(x, y)| self.terms(x, y))
            }
            _ => false,
        }
    }

    pub fn literals(&mut self, a: &Literal, b: &Literal) -> bool {
        a.positive == b.positive
            && a.predicate == b.predicate
            && a.args.len() == b.args.len()
            && a.args.iter().zip(&b.args).all(|(x, y)| self.terms(x, y))
    }
}

/// True when the two substitutions differ only by a consistent renaming of
/// variables (both in their domains and in their ranges).
pub fn substitutions_are_variants(a: &Substitution, b: &Substitution) -> bool {
    fn search(a: &[(&Symbol, &Term)], b: &[(&Symbol, &Term)], map: &VariantMap) -> bool {
        let Some(((x, t), rest)) = a.split_first() else {
            return true;
        };
        b.iter().enumerate().any(|(j, (y, u))| {
            let mut m = map.clone();
            if !(m.vars(x, y) && m.terms(t, u)) {
                return false;
            }
            let remaining: Vec<_> = b
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, p)| *p)
                .collect();
            search(rest, &remaining, &m)
        })
    }
    if a.len() != b.len() {
        return false;
    }
    let a: Vec<_> = a.iter().collect();
    let b: Vec<_> = b.iter().collect();
    search(&a, &b, &VariantMap::new())
}

/// Source of fresh variable names `<base><n>` with a monotonically
/// increasing counter. Cheap to copy, so a search can restore it on
/// backtracking and a checker can replay it from the start.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreshVars {
    next: u64,
}

impl Default for FreshVars {
    fn default() -> Self {
        FreshVars { next: 1 }
    }
}

impl FreshVars {
    pub fn new() -> FreshVars {
        FreshVars::default()
    }

    pub fn counter(&self) -> u64 {
        self.next
    }

    fn fresh(&mut self, original: &str, taken: &BTreeSet<Symbol>) -> Symbol {
        let base = original.trim_end_matches(|c: char| c.is_ascii_digit());
        let base = if base.is_empty() { "X" } else { base };
        loop {
            let candidate: Symbol = format!("{base}{}", self.next).into();
            self.next += 1;
            if !taken.contains(&candidate) {
                return candidate;
            }
        }
    }
}

/// Renames the variables of `value` that occur in `avoid`.
///
/// Returns the renamed value and the renaming, a bijection from the renamed
/// variables to fresh ones. Variables not in `avoid` keep their names.
pub fn rename_apart<T>(value: &T, avoid: &BTreeSet<Symbol>, fresh: &mut FreshVars) -> (T, Substitution)
where
    T: HasVars + Substitutable + Clone,
{
    let own = value.vars();
    let mut taken: BTreeSet<Symbol> = avoid.union(&own).cloned().collect();
    let mut renaming = Substitution::new();
    for v in own.iter().filter(|v| avoid.contains(*v)) {
        let name = fresh.fresh(v, &taken);
        taken.insert(name.clone());
        renaming.insert(v.clone(), Term::Var(name));
    }
    if renaming.is_empty() {
        (value.clone(), renaming)
    } else {
        (value.apply(&renaming), renaming)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("X")
    }
    fn y() -> Term {
        Term::var("Y")
    }
    fn a() -> Term {
        Term::constant("a")
    }
    fn b() -> Term {
        Term::constant("b")
    }
    fn f(t: Term) -> Term {
        Term::app("f", vec![t])
    }
    fn p(args: Vec<Term>) -> Literal {
        Literal::new(true, "p", args)
    }
    fn s(pairs: &[(&str, Term)]) -> Substitution {
        Substitution::from_pairs(pairs.iter().map(|(v, t)| (Symbol::from(*v), t.clone())))
    }

    #[test]
    fn opposite_flips_sign_only() {
        let pa = p(vec![a()]);
        assert_eq!(pa.opposite().to_string(), "~p(a)");
        let q = Literal::new(false, "q", vec![x(), f(y())]);
        assert_eq!(q.opposite().to_string(), "q(X,f(Y))");
        let r = Literal::atom("r");
        assert_eq!(r.opposite().opposite(), r);
    }

    #[test]
    fn apply_is_simultaneous() {
        let lit = p(vec![x(), y()]);
        assert_eq!(lit.apply(&s(&[("X", a())])).to_string(), "p(a,Y)");
        assert_eq!(lit.apply(&Substitution::new()), lit);
        let sub = s(&[("X", f(y())), ("Y", b())]);
        assert_eq!(lit.apply(&sub).to_string(), "p(f(Y),b)");
    }

    #[test]
    fn compose_examples() {
        assert_eq!(
            s(&[("X", y())]).compose(&s(&[("Y", a())])),
            s(&[("X", a()), ("Y", a())])
        );
        let other = s(&[("X", f(a())), ("Z", b())]);
        assert_eq!(Substitution::new().compose(&other), other);
        assert_eq!(s(&[("X", a())]).compose(&s(&[("X", b())])), s(&[("X", a())]));
    }

    #[test]
    fn compose_drops_identity_bindings() {
        let c = s(&[("X", y())]).compose(&s(&[("Y", x())]));
        assert_eq!(c, s(&[("Y", x())]));
    }

    #[test]
    fn mgu_examples() {
        let sigma = mgu(&p(vec![x(), f(y())]), &p(vec![a(), f(b())])).unwrap();
        assert_eq!(sigma, s(&[("X", a()), ("Y", b())]));
        assert_eq!(mgu(&p(vec![x()]), &p(vec![f(x())])), Err(UnifyError::OccursCheck));
        assert_eq!(
            mgu(&p(vec![x(), x()]), &p(vec![y(), f(y())])),
            Err(UnifyError::OccursCheck)
        );
    }

    #[test]
    fn mgu_failure_reasons() {
        let pa = p(vec![a()]);
        assert_eq!(mgu(&pa, &pa.opposite()), Err(UnifyError::SignMismatch));
        assert_eq!(
            mgu(&pa, &Literal::new(true, "q", vec![a()])),
            Err(UnifyError::PredicateMismatch)
        );
        assert_eq!(mgu(&pa, &p(vec![a(), a()])), Err(UnifyError::ArityMismatch));
        assert_eq!(mgu(&pa, &p(vec![b()])), Err(UnifyError::Clash));
    }

    #[test]
    fn mgu_is_idempotent_after_propagation() {
        // X->Y first, then Y->f(Z) must rewrite the X binding.
        let l = p(vec![x(), y()]);
        let r = p(vec![y(), f(Term::var("Z"))]);
        let sigma = mgu(&l, &r).unwrap();
        assert!(sigma.is_idempotent());
        assert_eq!(l.apply(&sigma), r.apply(&sigma));
        assert_eq!(sigma.get("X"), Some(&f(Term::var("Z"))));
    }

    #[test]
    fn rename_apart_examples() {
        let mut fresh = FreshVars::new();
        let avoid: BTreeSet<Symbol> = [Symbol::from("X")].into_iter().collect();
        let (renamed, rho) = rename_apart(&p(vec![x()]), &avoid, &mut fresh);
        assert_eq!(renamed.to_string(), "p(X1)");
        assert_eq!(rho, s(&[("X", Term::var("X1"))]));

        let (renamed, rho) = rename_apart(&p(vec![a()]), &avoid, &mut fresh);
        assert_eq!(renamed, p(vec![a()]));
        assert!(rho.is_empty());

        let lit = p(vec![x(), y()]);
        let (renamed, rho) = rename_apart(&lit, &BTreeSet::new(), &mut fresh);
        assert_eq!(renamed, lit);
        assert!(rho.is_empty());
    }

    #[test]
    fn rename_apart_skips_names_already_in_value() {
        let mut fresh = FreshVars::new();
        let lit = p(vec![x(), Term::var("X1")]);
        let avoid: BTreeSet<Symbol> = [Symbol::from("X")].into_iter().collect();
        let (renamed, rho) = rename_apart(&lit, &avoid, &mut fresh);
        assert_eq!(renamed.to_string(), "p(X2,X1)");
        assert_eq!(rho.invert_renaming().unwrap(), s(&[("X2", x())]));
    }

    #[test]
    fn matching_and_variants() {
        let mut m = Substitution::new();
        assert!(match_literal(&mut m, &p(vec![x(), x()]), &p(vec![a(), a()])));
        let mut m = Substitution::new();
        assert!(!match_literal(&mut m, &p(vec![x(), x()]), &p(vec![a(), b()])));

        assert!(substitutions_are_variants(
            &s(&[("X", f(y()))]),
            &s(&[("U", f(Term::var("V")))])
        ));
        assert!(!substitutions_are_variants(
            &s(&[("X", f(x()))]),
            &s(&[("U", f(Term::var("V")))])
        ));
    }

    #[test]
    fn depth_of_terms() {
        assert_eq!(a().depth(), 0);
        assert_eq!(f(f(a())).depth(), 2);
        assert_eq!(p(vec![a(), f(x())]).term_depth(), 1);
    }
}
