//! Chains, their formula reading, and the three model elimination rules
//! (extension, reduction, removal) with scope bookkeeping.
//!
//! A chain is read left to right. B-entries are plain literals awaiting a
//! proof; A-entries are ancestor literals carrying a scope. The leftmost
//! B-entry of an acceptable chain is the current goal.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::Formula;
use crate::term::{
    mgu, rename_apart, FreshVars, HasVars, Literal, Substitutable, Substitution, Symbol, UnifyError,
};

/// A disjunction of literals: an input clause or an emitted lemma.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

/// Lemmas are elementary chains produced by removal.
pub type Lemma = Clause;

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Clause {
        Clause { literals }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn into_literals(self) -> Vec<Literal> {
        self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn is_ground(&self) -> bool {
        self.literals.iter().all(Literal::is_ground)
    }

    /// Equality as multisets of literals.
    pub fn same_multiset(&self, other: &Clause) -> bool {
        self.sorted_literals() == other.sorted_literals()
    }

    pub fn sorted_literals(&self) -> Vec<Literal> {
        let mut lits = self.literals.clone();
        lits.sort();
        lits
    }

    pub fn to_chain(&self) -> Chain {
        Chain::new(self.literals.iter().cloned().map(Entry::B).collect())
    }

    pub fn formula(&self) -> Formula {
        Formula::disjunction(self.literals.iter().cloned())
    }
}

impl HasVars for Clause {
    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        self.literals.collect_vars(out)
    }
}

impl Substitutable for Clause {
    fn apply(&self, subst: &Substitution) -> Clause {
        Clause::new(self.literals.apply(subst))
    }
}

/// Prints in the first-order input syntax, `p(X) | ~q.`.
impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str(".")
    }
}

/// Indexed list of input clauses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
}

impl ClauseSet {
    pub fn new(clauses: Vec<Clause>) -> ClauseSet {
        ClauseSet { clauses }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn get(&self, index: usize) -> Option<&Clause> {
        self.clauses.get(index)
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    pub fn push(&mut self, clause: Clause) {
        self.clauses.push(clause)
    }

    pub fn is_ground(&self) -> bool {
        self.clauses.iter().all(Clause::is_ground)
    }

    /// The clauses at `indices`, in the order given.
    pub fn subset(&self, indices: &[usize]) -> ClauseSet {
        ClauseSet::new(indices.iter().map(|&i| self.clauses[i].clone()).collect())
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        ClauseSet::new(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::slice::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Entry {
    B(Literal),
    /// Ancestor literal and its scope.
    A(Literal, usize),
}

impl Entry {
    pub fn literal(&self) -> &Literal {
        match self {
            Entry::B(l) | Entry::A(l, _) => l,
        }
    }

    pub fn is_ancestor(&self) -> bool {
        matches!(self, Entry::A(..))
    }

    pub fn scope(&self) -> Option<usize> {
        match self {
            Entry::B(_) => None,
            Entry::A(_, k) => Some(*k),
        }
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::B(l) => write!(f, "{l}"),
            Entry::A(l, k) => write!(f, "[{l}]^{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("the chain is empty")]
    Empty,
    #[error("the chain does not start with a B-literal")]
    NotAcceptable,
    #[error("the chain does not start with an A-literal")]
    NotRemovable,
    #[error("the clause has no literal at position {position}")]
    PositionOutOfRange { position: usize },
    #[error("the chain has no A-literal with ordinal {a_index}")]
    NoSuchAncestor { a_index: usize },
    #[error("`{found}` is not the opposite of the goal `{goal}`")]
    NotComplementary { goal: Literal, found: Literal },
    #[error("`{goal}` does not unify with the opposite of `{other}`: {reason}")]
    NotUnifiable {
        goal: Literal,
        other: Literal,
        reason: UnifyError,
    },
}

/// Result of a first-order extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub chain: Chain,
    /// Unifier of the goal and the opposite of the renamed clause literal.
    pub mgu: Substitution,
    /// Renaming applied to the clause before unification.
    pub renaming: Substitution,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    entries: Vec<Entry>,
}

impl Chain {
    pub fn new(entries: Vec<Entry>) -> Chain {
        Chain { entries }
    }

    pub fn empty() -> Chain {
        Chain::default()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_acceptable(&self) -> bool {
        !matches!(self.entries.first(), Some(Entry::A(..)))
    }

    pub fn is_elementary(&self) -> bool {
        self.entries.iter().all(|e| !e.is_ancestor())
    }

    pub fn is_ground(&self) -> bool {
        self.entries.iter().all(|e| e.literal().is_ground())
    }

    pub fn ancestor_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_ancestor()).count()
    }

    /// A-entries in order with their scope and the number of A-entries
    /// strictly to their left.
    pub fn ancestors(&self) -> impl Iterator<Item = (&Literal, usize, usize)> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                Entry::A(l, k) => Some((l, *k)),
                Entry::B(_) => None,
            })
            .enumerate()
            .map(|(left, (l, k))| (l, k, left))
    }

    /// Every A-entry's scope is at most the number of A-entries to its left.
    pub fn scope_bound_holds(&self) -> bool {
        self.ancestors().all(|(_, k, left)| k <= left)
    }

    /// The leftmost B-literal of an acceptable, non-empty chain.
    pub fn goal(&self) -> Result<&Literal, ChainError> {
        match self.entries.first() {
            None => Err(ChainError::Empty),
            Some(Entry::A(..)) => Err(ChainError::NotAcceptable),
            Some(Entry::B(l)) => Ok(l),
        }
    }

    /// Entry position of the A-entry with ordinal `a_index`.
    fn ancestor_slot(&self, a_index: usize) -> Result<usize, ChainError> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| e.is_ancestor())
            .nth(a_index)
            .map(|(i, _)| i)
            .ok_or(ChainError::NoSuchAncestor { a_index })
    }

    /// Appends `suffix` after the last entry; scopes are untouched.
    pub fn concat(&self, suffix: &Chain) -> Chain {
        let mut entries = self.entries.clone();
        entries.extend(suffix.entries.iter().cloned());
        Chain::new(entries)
    }

    /// Formula reading: B-entries join by disjunction, A-entries by
    /// conjunction, the empty chain is false. Scopes are ignored.
    pub fn formula(&self) -> Formula {
        self.entries.iter().fold(Formula::False, |acc, e| match e {
            Entry::B(l) => Formula::or(acc, Formula::Lit(l.clone())),
            Entry::A(l, _) => Formula::and(acc, Formula::Lit(l.clone())),
        })
    }

    /// Propositional extension of the goal `L` with the clause `V ~L W`
    /// whose complementary literal sits at `position`: yields `V W [L]^0 U`.
    pub fn extend_prop(&self, clause: &Clause, position: usize) -> Result<Chain, ChainError> {
        let goal = self.goal()?;
        let found = clause
            .literals()
            .get(position)
            .ok_or(ChainError::PositionOutOfRange { position })?;
        if found.positive == goal.positive
            || found.predicate != goal.predicate
            || found.args != goal.args
        {
            return Err(ChainError::NotComplementary {
                goal: goal.clone(),
                found: found.clone(),
            });
        }
        Ok(self.extended(clause.literals(), position, &Substitution::new()))
    }

    /// First-order extension. The clause is renamed apart from the chain and
    /// from its own variable names, then the goal is unified with the
    /// opposite of the renamed literal at `position`.
    pub fn extend_fo(
        &self,
        clause: &Clause,
        position: usize,
        fresh: &mut FreshVars,
    ) -> Result<Extension, ChainError> {
        let goal = self.goal()?;
        if position >= clause.len() {
            return Err(ChainError::PositionOutOfRange { position });
        }
        let mut avoid = self.vars();
        clause.collect_vars(&mut avoid);
        let (renamed, renaming) = rename_apart(clause, &avoid, fresh);
        let other = &renamed.literals()[position];
        let sigma = mgu(goal, &other.opposite()).map_err(|reason| ChainError::NotUnifiable {
            goal: goal.clone(),
            other: other.clone(),
            reason,
        })?;
        Ok(Extension {
            chain: self.extended(renamed.literals(), position, &sigma),
            mgu: sigma,
            renaming,
        })
    }

    fn extended(&self, clause: &[Literal], position: usize, sigma: &Substitution) -> Chain {
        let mut entries = Vec::with_capacity(self.len() + clause.len());
        entries.extend(
            clause
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != position)
                .map(|(_, l)| Entry::B(l.apply(sigma))),
        );
        entries.push(Entry::A(self.entries[0].literal().apply(sigma), 0));
        entries.extend(self.entries[1..].iter().map(|e| e.apply(sigma)));
        Chain::new(entries)
    }

    /// Propositional reduction of the goal against the A-entry with ordinal
    /// `a_index`, which must hold the goal's opposite.
    pub fn reduce_prop(&self, a_index: usize) -> Result<Chain, ChainError> {
        let goal = self.goal()?;
        let slot = self.ancestor_slot(a_index)?;
        let ancestor = self.entries[slot].literal();
        if ancestor.positive == goal.positive
            || ancestor.predicate != goal.predicate
            || ancestor.args != goal.args
        {
            return Err(ChainError::NotComplementary {
                goal: goal.clone(),
                found: ancestor.clone(),
            });
        }
        Ok(self.reduced(slot, a_index, &Substitution::new()))
    }

    /// First-order reduction: unifies the goal with the opposite of the
    /// A-entry with ordinal `a_index`.
    pub fn reduce_fo(&self, a_index: usize) -> Result<(Chain, Substitution), ChainError> {
        let goal = self.goal()?;
        let slot = self.ancestor_slot(a_index)?;
        let ancestor = self.entries[slot].literal();
        let sigma = mgu(goal, &ancestor.opposite()).map_err(|reason| ChainError::NotUnifiable {
            goal: goal.clone(),
            other: ancestor.clone(),
            reason,
        })?;
        Ok((self.reduced(slot, a_index, &sigma), sigma))
    }

    fn reduced(&self, slot: usize, a_index: usize, sigma: &Substitution) -> Chain {
        let mut entries: Vec<Entry> = self.entries[1..].iter().map(|e| e.apply(sigma)).collect();
        // The A-entry with ordinal `a_index` has exactly `a_index` A-entries
        // to its left; its scope is raised to that count.
        if let Entry::A(_, k) = &mut entries[slot - 1] {
            *k = (*k).max(a_index);
        }
        Chain::new(entries)
    }

    /// Drops the leading A-entry and emits the lemma made of the opposites of
    /// every A-entry whose scope equals the number of A-entries to its left.
    /// The non-zero scopes of those entries are decremented.
    pub fn remove(&self) -> Result<(Chain, Lemma), ChainError> {
        match self.entries.first() {
            None => return Err(ChainError::Empty),
            Some(Entry::B(_)) => return Err(ChainError::NotRemovable),
            Some(Entry::A(..)) => {}
        }
        let mut lemma = Vec::new();
        let mut entries = Vec::with_capacity(self.len() - 1);
        let mut left = 0;
        for (i, e) in self.entries.iter().enumerate() {
            let entry = match e {
                Entry::A(l, k) => {
                    let qualifies = *k == left;
                    left += 1;
                    if qualifies {
                        lemma.push(l.opposite());
                        Entry::A(l.clone(), k.saturating_sub(1))
                    } else {
                        e.clone()
                    }
                }
                Entry::B(_) => e.clone(),
            };
            if i > 0 {
                entries.push(entry);
            }
        }
        Ok((Chain::new(entries), Clause::new(lemma)))
    }
}

impl Substitutable for Entry {
    fn apply(&self, subst: &Substitution) -> Entry {
        match self {
            Entry::B(l) => Entry::B(l.apply(subst)),
            Entry::A(l, k) => Entry::A(l.apply(subst), *k),
        }
    }
}

/// Scopes are preserved by substitution.
impl Substitutable for Chain {
    fn apply(&self, subst: &Substitution) -> Chain {
        if subst.is_empty() {
            return self.clone();
        }
        Chain::new(self.entries.iter().map(|e| e.apply(subst)).collect())
    }
}

impl HasVars for Chain {
    fn collect_vars(&self, out: &mut BTreeSet<Symbol>) {
        for e in &self.entries {
            e.literal().collect_vars(out);
        }
    }
}

/// Canonical printing: entries separated by single spaces, A-entries as
/// `[lit]^k`, the empty chain as `#box`.
impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("#box");
        }
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;

    fn lit(s: &str) -> Literal {
        let (positive, name) = match s.strip_prefix('~') {
            Some(rest) => (false, rest),
            None => (true, s),
        };
        Literal::new(positive, name, Vec::new())
    }
    fn b(s: &str) -> Entry {
        Entry::B(lit(s))
    }
    fn a(s: &str, k: usize) -> Entry {
        Entry::A(lit(s), k)
    }
    fn clause(lits: &[&str]) -> Clause {
        Clause::new(lits.iter().map(|s| lit(s)).collect())
    }
    fn chain(entries: Vec<Entry>) -> Chain {
        Chain::new(entries)
    }

    #[test]
    fn classification() {
        assert!(Chain::empty().is_acceptable());
        assert!(Chain::empty().is_elementary());
        assert!(!chain(vec![a("p", 0), b("q")]).is_acceptable());
        assert!(chain(vec![b("q"), a("p", 0)]).is_acceptable());
        assert!(!chain(vec![b("q"), a("p", 0)]).is_elementary());
    }

    #[test]
    fn formula_reading() {
        assert_eq!(Chain::empty().formula(), Formula::False);
        assert_eq!(
            chain(vec![a("l", 0)]).formula(),
            Formula::and(Formula::False, Formula::lit(lit("l")))
        );
        let k = chain(vec![b("p"), b("q"), a("r", 0), b("s")]);
        assert_eq!(k.formula().to_string(), "(((($false | p) | q) & r) | s)");
    }

    #[test]
    fn extend_prop_examples() {
        let k = chain(vec![b("p"), b("q")]);
        assert_eq!(
            k.extend_prop(&clause(&["~p", "r"]), 0).unwrap(),
            chain(vec![b("r"), a("p", 0), b("q")])
        );
        assert_eq!(
            chain(vec![b("p")]).extend_prop(&clause(&["a", "~p", "b"]), 1).unwrap(),
            chain(vec![b("a"), b("b"), a("p", 0)])
        );
        assert_eq!(
            k.extend_prop(&clause(&["~p"]), 0).unwrap(),
            chain(vec![a("p", 0), b("q")])
        );
    }

    #[test]
    fn extend_prop_rejections() {
        let k = chain(vec![b("p"), b("q")]);
        assert!(matches!(
            k.extend_prop(&clause(&["p", "r"]), 0),
            Err(ChainError::NotComplementary { .. })
        ));
        assert!(matches!(
            k.extend_prop(&clause(&["~p"]), 1),
            Err(ChainError::PositionOutOfRange { position: 1 })
        ));
        assert_eq!(
            chain(vec![a("p", 0), b("q")]).extend_prop(&clause(&["~p"]), 0),
            Err(ChainError::NotAcceptable)
        );
        assert_eq!(Chain::empty().extend_prop(&clause(&["~p"]), 0), Err(ChainError::Empty));
    }

    #[test]
    fn extend_keeps_existing_scopes() {
        let k = chain(vec![b("p"), a("s", 0), a("t", 1)]);
        let r = k.extend_prop(&clause(&["~p"]), 0).unwrap();
        assert_eq!(r, chain(vec![a("p", 0), a("s", 0), a("t", 1)]));
    }

    #[test]
    fn reduce_prop_examples() {
        let k = chain(vec![b("p"), b("q"), a("~p", 0), b("r")]);
        assert_eq!(k.reduce_prop(0).unwrap(), chain(vec![b("q"), a("~p", 0), b("r")]));

        let k = chain(vec![b("p"), a("s", 0), a("~p", 0), b("q")]);
        assert_eq!(k.reduce_prop(1).unwrap(), chain(vec![a("s", 0), a("~p", 1), b("q")]));

        let k = chain(vec![b("p"), a("s", 0), a("~p", 1), b("q")]);
        assert_eq!(k.reduce_prop(1).unwrap(), chain(vec![a("s", 0), a("~p", 1), b("q")]));
    }

    #[test]
    fn reduce_prop_rejections() {
        let k = chain(vec![b("p"), a("s", 0), a("~p", 0)]);
        assert!(matches!(k.reduce_prop(0), Err(ChainError::NotComplementary { .. })));
        assert_eq!(k.reduce_prop(2), Err(ChainError::NoSuchAncestor { a_index: 2 }));
        assert!(matches!(k.reduce_fo(0), Err(ChainError::NotUnifiable { .. })));
    }

    #[test]
    fn remove_examples() {
        let (rest, lemma) = chain(vec![a("p", 0), b("q")]).remove().unwrap();
        assert_eq!(rest, chain(vec![b("q")]));
        assert_eq!(lemma, clause(&["~p"]));

        let k = chain(vec![a("p", 0), a("q", 1), a("r", 0), b("s")]);
        let (rest, lemma) = k.remove().unwrap();
        assert_eq!(rest, chain(vec![a("q", 0), a("r", 0), b("s")]));
        assert_eq!(lemma, clause(&["~p", "~q"]));

        let (rest, lemma) = chain(vec![a("p", 0)]).remove().unwrap();
        assert!(rest.is_empty());
        assert_eq!(lemma, clause(&["~p"]));
    }

    #[test]
    fn remove_rejections() {
        assert_eq!(Chain::empty().remove(), Err(ChainError::Empty));
        assert_eq!(chain(vec![b("p")]).remove(), Err(ChainError::NotRemovable));
    }

    #[test]
    fn remove_leaves_non_qualifying_scopes() {
        // [r]^1 has two A-entries to its left: not in the lemma, scope kept.
        let k = chain(vec![a("p", 0), a("q", 0), a("r", 1)]);
        let (rest, lemma) = k.remove().unwrap();
        assert_eq!(lemma, clause(&["~p"]));
        assert_eq!(rest, chain(vec![a("q", 0), a("r", 1)]));
        assert!(rest.scope_bound_holds());
    }

    fn fo(positive: bool, name: &str, args: Vec<Term>) -> Literal {
        Literal::new(positive, name, args)
    }

    #[test]
    fn extend_fo_examples() {
        let x = Term::var("X");
        let y = Term::var("Y");
        let fy = Term::app("f", vec![y.clone()]);
        let k = Chain::new(vec![Entry::B(fo(true, "p", vec![x.clone()]))]);
        let c = Clause::new(vec![fo(false, "p", vec![fy]), fo(true, "q", vec![y])]);
        let ext = k.extend_fo(&c, 0, &mut FreshVars::new()).unwrap();
        assert_eq!(ext.chain.to_string(), "q(Y1) [p(f(Y1))]^0");
        assert_eq!(ext.mgu.to_string(), "{X->f(Y1)}");
        assert_eq!(ext.renaming.to_string(), "{Y->Y1}");

        let k = Chain::new(vec![Entry::B(fo(true, "p", vec![Term::constant("a")]))]);
        let c = Clause::new(vec![fo(false, "p", vec![Term::constant("b")])]);
        assert!(matches!(
            k.extend_fo(&c, 0, &mut FreshVars::new()),
            Err(ChainError::NotUnifiable { reason: UnifyError::Clash, .. })
        ));

        let k = Chain::new(vec![
            Entry::B(fo(true, "p", vec![x.clone()])),
            Entry::B(fo(true, "r", vec![x])),
        ]);
        let c = Clause::new(vec![fo(false, "p", vec![Term::constant("a")])]);
        let ext = k.extend_fo(&c, 0, &mut FreshVars::new()).unwrap();
        assert_eq!(ext.chain.to_string(), "[p(a)]^0 r(a)");
        assert_eq!(ext.mgu.to_string(), "{X->a}");
    }

    #[test]
    fn reduce_fo_examples() {
        let x = Term::var("X");
        let y = Term::var("Y");
        let a_ = Term::constant("a");
        let k = Chain::new(vec![
            Entry::B(fo(true, "p", vec![x.clone()])),
            Entry::A(fo(false, "p", vec![a_.clone()]), 0),
            Entry::B(fo(true, "q", vec![x.clone()])),
        ]);
        let (r, sigma) = k.reduce_fo(0).unwrap();
        assert_eq!(r.to_string(), "[~p(a)]^0 q(a)");
        assert_eq!(sigma.to_string(), "{X->a}");

        let k = Chain::new(vec![
            Entry::B(fo(true, "p", vec![a_])),
            Entry::A(fo(false, "p", vec![Term::constant("b")]), 0),
        ]);
        assert!(k.reduce_fo(0).is_err());

        let k = Chain::new(vec![
            Entry::B(fo(true, "p", vec![x])),
            Entry::A(lit("r"), 0),
            Entry::A(fo(false, "p", vec![y]), 0),
        ]);
        let (r, sigma) = k.reduce_fo(1).unwrap();
        assert_eq!(r.to_string(), "[r]^0 [~p(Y)]^1");
        assert_eq!(sigma.to_string(), "{X->Y}");
    }

    #[test]
    fn ground_fo_rules_match_propositional_rules() {
        let k = chain(vec![b("p"), a("s", 0), a("~p", 0), b("q")]);
        assert_eq!(k.reduce_fo(1).unwrap().0, k.reduce_prop(1).unwrap());
        let k = chain(vec![b("p"), b("q")]);
        let c = clause(&["r", "~p"]);
        assert_eq!(
            k.extend_fo(&c, 1, &mut FreshVars::new()).unwrap().chain,
            k.extend_prop(&c, 1).unwrap()
        );
    }

    #[test]
    fn printing() {
        assert_eq!(Chain::empty().to_string(), "#box");
        assert_eq!(chain(vec![b("~q"), a("p", 0), a("q", 2)]).to_string(), "~q [p]^0 [q]^2");
        assert_eq!(clause(&["p", "~q"]).to_string(), "p | ~q.");
    }
}
