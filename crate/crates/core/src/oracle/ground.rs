//! Herbrand universes and bounded grounding of first-order clause sets.

use std::collections::{BTreeMap, BTreeSet};

use crate::chain::{Clause, ClauseSet};
use crate::term::{Literal, Substitutable, Substitution, Symbol, Term};

use super::OracleError;

/// Default cap on the number of ground clauses a grounding may produce.
pub const DEFAULT_CLAUSE_CAP: usize = 200_000;

/// Bounds for Herbrand instantiation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundingSpec {
    pub max_term_depth: usize,
    pub constants: Vec<Symbol>,
    pub clause_cap: usize,
}

impl GroundingSpec {
    /// Constants of `gamma`, or one artificial constant when it has none.
    pub fn for_clauses(gamma: &ClauseSet, max_term_depth: usize) -> GroundingSpec {
        let signature = Signature::of(gamma);
        let mut constants: Vec<Symbol> = signature
            .functors
            .iter()
            .filter(|(_, &arity)| arity == 0)
            .map(|(name, _)| name.clone())
            .collect();
        if constants.is_empty() {
            constants.push(signature.unused_name("c"));
        }
        GroundingSpec {
            max_term_depth,
            constants,
            clause_cap: DEFAULT_CLAUSE_CAP,
        }
    }
}

/// Predicates and function symbols with their arities.
#[derive(Clone, Debug, Default)]
pub(crate) struct Signature {
    pub(crate) predicates: BTreeMap<Symbol, usize>,
    pub(crate) functors: BTreeMap<Symbol, usize>,
}

impl Signature {
    pub(crate) fn of(gamma: &ClauseSet) -> Signature {
        let mut sig = Signature::default();
        for clause in gamma {
            for lit in clause.literals() {
                sig.add_literal(lit);
            }
        }
        sig
    }

    pub(crate) fn add_literal(&mut self, lit: &Literal) {
        self.predicates.insert(lit.predicate.clone(), lit.arity());
        lit.args.iter().for_each(|t| self.add_term(t));
    }

    fn add_term(&mut self, t: &Term) {
        if let Term::App(name, args) = t {
            self.functors.insert(name.clone(), args.len());
            args.iter().for_each(|a| self.add_term(a));
        }
    }

    /// `<base><n>` for the smallest `n` not used as any symbol.
    pub(crate) fn unused_name(&self, base: &str) -> Symbol {
        (0..)
            .map(|n| format!("{base}{n}"))
            .find(|name| {
                !self.functors.contains_key(name.as_str())
                    && !self.predicates.contains_key(name.as_str())
            })
            .unwrap()
            .into()
    }
}

fn term_key(t: &Term) -> (usize, String) {
    (t.depth(), t.to_string())
}

/// All ground terms of depth at most `max_depth`, ordered by depth and then
/// lexicographically by their printed form.
pub fn herbrand_universe(
    constants: &[Symbol],
    functors: &BTreeMap<Symbol, usize>,
    max_depth: usize,
) -> Vec<Term> {
    let mut universe: BTreeSet<(usize, String, Term)> = constants
        .iter()
        .map(|c| {
            let t = Term::App(c.clone(), Vec::new());
            let (d, s) = term_key(&t);
            (d, s, t)
        })
        .collect();
    let compound: Vec<(&Symbol, usize)> = functors
        .iter()
        .filter(|(_, &arity)| arity > 0)
        .map(|(f, &arity)| (f, arity))
        .collect();
    for _ in 0..max_depth {
        let current: Vec<Term> = universe.iter().map(|(_, _, t)| t.clone()).collect();
        for (f, arity) in &compound {
            for args in tuples(&current, *arity) {
                let t = Term::App((*f).clone(), args);
                if t.depth() <= max_depth {
                    let (d, s) = term_key(&t);
                    universe.insert((d, s, t));
                }
            }
        }
    }
    universe.into_iter().map(|(_, _, t)| t).collect()
}

/// Cartesian power in lexicographic order, first position slowest.
fn tuples(items: &[Term], n: usize) -> Vec<Vec<Term>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |t| {
                    let mut next = prefix.clone();
                    next.push(t.clone());
                    next
                })
            })
            .collect();
    }
    out
}

/// A ground clause set together with where each clause came from.
#[derive(Clone, Debug)]
pub struct Grounding {
    pub clauses: ClauseSet,
    /// For each ground clause: the index of its source clause and the
    /// grounding substitution.
    pub origins: Vec<(usize, Substitution)>,
    /// Interned atoms; atom `i` is propositional variable `i + 1`.
    pub atoms: Vec<Literal>,
}

fn clause_variables(clause: &Clause) -> Vec<Symbol> {
    fn walk(t: &Term, seen: &mut Vec<Symbol>) {
        match t {
            Term::Var(v) => {
                if !seen.contains(v) {
                    seen.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| walk(a, seen)),
        }
    }
    let mut seen = Vec::new();
    for lit in clause.literals() {
        lit.args.iter().for_each(|t| walk(t, &mut seen));
    }
    seen
}

/// Instantiates every clause over the Herbrand universe of `spec`, keeping
/// instances whose terms all stay within the depth bound.
///
/// Clauses are processed in order; within a clause, variables are taken in
/// order of first occurrence and assigned universe terms lexicographically.
pub fn ground(gamma: &ClauseSet, spec: &GroundingSpec) -> Result<Grounding, OracleError> {
    let signature = Signature::of(gamma);
    let universe = herbrand_universe(&spec.constants, &signature.functors, spec.max_term_depth);
    let mut clauses = Vec::new();
    let mut origins = Vec::new();
    let mut atoms = super::sat::AtomTable::default();
    for (index, clause) in gamma.iter().enumerate() {
        let vars = clause_variables(clause);
        for values in tuples(&universe, vars.len()) {
            let sigma = Substitution::from_pairs(vars.iter().cloned().zip(values));
            let instance = clause.apply(&sigma);
            if instance
                .literals()
                .iter()
                .any(|l| l.term_depth() > spec.max_term_depth)
            {
                continue;
            }
            if clauses.len() == spec.clause_cap {
                return Err(OracleError::GroundingTooLarge {
                    cap: spec.clause_cap,
                });
            }
            for lit in instance.literals() {
                atoms.intern(lit);
            }
            clauses.push(instance);
            origins.push((index, sigma));
        }
    }
    Ok(Grounding {
        clauses: ClauseSet::new(clauses),
        origins,
        atoms: atoms.atoms().to_vec(),
    })
}
