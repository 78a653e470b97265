//! Brute-force semantics used to certify derivations and lemmas.
//!
//! Nothing in here is used by the prover's own inferences. Queries are
//! limited to ground literals; first-order sets are first instantiated with
//! [`ground`].

mod ground;
mod sat;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::chain::{Clause, ClauseSet};
use crate::formula::Formula;
use crate::term::Literal;

pub use ground::{ground, herbrand_universe, Grounding, GroundingSpec, DEFAULT_CLAUSE_CAP};
pub(crate) use ground::Signature;

use sat::AtomTable;

/// Default bound on the number of distinct atoms in one query.
pub const DEFAULT_MAX_VARS: usize = 26;

/// Exhaustive enumeration is used for cross-checks only up to this size.
pub const TRUTH_TABLE_MAX_VARS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{found} atoms exceed the oracle bound of {limit}")]
    TooManyVariables { found: usize, limit: usize },
    #[error("literal `{literal}` is not ground")]
    NonGround { literal: Literal },
    #[error("the clause set is satisfiable")]
    Satisfiable,
    #[error("grounding exceeds the cap of {cap} clauses")]
    GroundingTooLarge { cap: usize },
}

/// Truth values for the positive atoms of a query.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Model {
    values: BTreeMap<Literal, bool>,
}

impl Model {
    pub fn value(&self, atom: &Literal) -> Option<bool> {
        self.values.get(&atom.to_positive()).copied()
    }

    pub fn satisfies_literal(&self, lit: &Literal) -> bool {
        self.value(lit).is_some_and(|v| v == lit.positive)
    }

    pub fn satisfies(&self, clause: &Clause) -> bool {
        clause.literals().iter().any(|l| self.satisfies_literal(l))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Literal, bool)> {
        self.values.iter().map(|(a, v)| (a, *v))
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (atom, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{atom}={}", u8::from(*v))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfiability {
    Sat(Model),
    Unsat,
}

impl Satisfiability {
    pub fn is_sat(&self) -> bool {
        matches!(self, Satisfiability::Sat(_))
    }
}

/// Outcome of a lemma certification. A bounded first-order check that fails
/// to refute the negated lemma reports `Unknown`, never `Refuted`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    Certified,
    Refuted,
    Unknown,
}

/// An unsatisfiable subset, every proper subset of which is satisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnsatCore {
    /// Positions in the input clause set, ascending.
    pub indices: Vec<usize>,
    pub clauses: ClauseSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub max_vars: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_vars: DEFAULT_MAX_VARS,
        }
    }
}

impl Oracle {
    pub fn new(max_vars: usize) -> Oracle {
        Oracle { max_vars }
    }

    fn encode<'a, I>(&self, clauses: I) -> Result<(AtomTable, Vec<Vec<i32>>), OracleError>
    where
        I: IntoIterator<Item = &'a [Literal]>,
    {
        let mut table = AtomTable::default();
        let mut encoded = Vec::new();
        for clause in clauses {
            if let Some(l) = clause.iter().find(|l| !l.is_ground()) {
                return Err(OracleError::NonGround { literal: l.clone() });
            }
            encoded.push(table.encode(clause));
        }
        if table.len() > self.max_vars {
            return Err(OracleError::TooManyVariables {
                found: table.len(),
                limit: self.max_vars,
            });
        }
        Ok((table, encoded))
    }

    fn solve<'a, I>(&self, clauses: I) -> Result<Satisfiability, OracleError>
    where
        I: IntoIterator<Item = &'a [Literal]>,
    {
        let (table, encoded) = self.encode(clauses)?;
        Ok(match sat::dpll(table.len(), &encoded) {
            None => Satisfiability::Unsat,
            Some(values) => Satisfiability::Sat(Model {
                values: table.atoms().iter().cloned().zip(values).collect(),
            }),
        })
    }

    pub fn satisfiable(&self, gamma: &ClauseSet) -> Result<Satisfiability, OracleError> {
        self.solve(gamma.iter().map(Clause::literals))
    }

    /// Every model of `gamma` satisfies `phi`: decided as unsatisfiability of
    /// `gamma` together with the clausified negation of `phi`.
    pub fn entails(&self, gamma: &ClauseSet, phi: &Formula) -> Result<bool, OracleError> {
        let negated = Formula::not(phi.clone()).to_cnf();
        let clauses = gamma
            .iter()
            .map(Clause::literals)
            .chain(negated.iter().map(Vec::as_slice));
        Ok(!self.solve(clauses)?.is_sat())
    }

    /// The same question as [`Oracle::entails`], answered by evaluating
    /// `gamma` and `phi` under every assignment. Used as an independent
    /// second route in tests.
    pub fn entails_by_truth_table(
        &self,
        gamma: &ClauseSet,
        phi: &Formula,
    ) -> Result<bool, OracleError> {
        let (mut table, encoded) = self.encode(gamma.iter().map(Clause::literals))?;
        let mut atoms = Default::default();
        phi.atoms(&mut atoms);
        for a in &atoms {
            if !a.is_ground() {
                return Err(OracleError::NonGround { literal: a.clone() });
            }
            table.intern(a);
        }
        let n = table.len();
        let limit = self.max_vars.min(TRUTH_TABLE_MAX_VARS);
        if n > limit {
            return Err(OracleError::TooManyVariables { found: n, limit });
        }
        for bits in 0u64..1 << n {
            let value = |i: usize| bits >> i & 1 == 1;
            let gamma_holds = encoded.iter().all(|c| {
                c.iter()
                    .any(|&l| value(l.unsigned_abs() as usize - 1) == (l > 0))
            });
            if gamma_holds {
                let lookup = |atom: &Literal| value(table.get(atom).unwrap());
                if !phi.eval(&lookup) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Satisfiability by exhaustive enumeration; cross-check for tests.
    pub fn satisfiable_by_truth_table(&self, gamma: &ClauseSet) -> Result<bool, OracleError> {
        let (table, encoded) = self.encode(gamma.iter().map(Clause::literals))?;
        let limit = self.max_vars.min(TRUTH_TABLE_MAX_VARS);
        if table.len() > limit {
            return Err(OracleError::TooManyVariables {
                found: table.len(),
                limit,
            });
        }
        Ok(sat::truth_table_satisfiable(table.len(), &encoded).is_some())
    }

    /// Deletion-based minimisation, scanning clauses in index order.
    pub fn minimal_unsat_subset(&self, gamma: &ClauseSet) -> Result<UnsatCore, OracleError> {
        if self.satisfiable(gamma)?.is_sat() {
            return Err(OracleError::Satisfiable);
        }
        let mut keep: Vec<usize> = (0..gamma.len()).collect();
        let mut i = 0;
        while i < keep.len() {
            let without: Vec<&[Literal]> = keep
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &c)| gamma.clauses()[c].literals())
                .collect();
            if self.solve(without)?.is_sat() {
                i += 1;
            } else {
                keep.remove(i);
            }
        }
        Ok(UnsatCore {
            clauses: gamma.subset(&keep),
            indices: keep,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(s: &str) -> Literal {
        match s.strip_prefix('~') {
            Some(rest) => Literal::new(false, rest, Vec::new()),
            None => Literal::atom(s),
        }
    }

    fn set(clauses: &[&[&str]]) -> ClauseSet {
        clauses
            .iter()
            .map(|c| Clause::new(c.iter().map(|s| lit(s)).collect()))
            .collect()
    }

    #[test]
    fn satisfiable_examples() {
        let o = Oracle::default();
        assert_eq!(o.satisfiable(&set(&[&["p"], &["~p"]])).unwrap(), Satisfiability::Unsat);
        let gamma = set(&[&["p", "q"]]);
        match o.satisfiable(&gamma).unwrap() {
            Satisfiability::Sat(m) => {
                assert!(m.satisfies(&gamma.clauses()[0]));
                assert_eq!(m.value(&lit("p")), Some(true));
            }
            Satisfiability::Unsat => panic!("p | q is satisfiable"),
        }
        let all = set(&[&["p", "q"], &["~p", "q"], &["p", "~q"], &["~p", "~q"]]);
        assert!(!o.satisfiable(&all).unwrap().is_sat());
        assert!(!o.satisfiable_by_truth_table(&all).unwrap());
    }

    #[test]
    fn entails_examples() {
        let o = Oracle::default();
        let p = Formula::lit(lit("p"));
        let q = Formula::lit(lit("q"));
        assert!(o.entails(&set(&[&["p"]]), &p).unwrap());
        assert!(!o.entails(&ClauseSet::default(), &p).unwrap());
        assert!(o.entails(&set(&[&["p", "q"], &["~p"]]), &q).unwrap());
        for (gamma, phi) in [
            (set(&[&["p"]]), p.clone()),
            (ClauseSet::default(), p.clone()),
            (set(&[&["p", "q"], &["~p"]]), q.clone()),
        ] {
            assert_eq!(
                o.entails(&gamma, &phi).unwrap(),
                o.entails_by_truth_table(&gamma, &phi).unwrap()
            );
        }
    }

    #[test]
    fn variable_bound_is_enforced() {
        let o = Oracle::new(2);
        let gamma = set(&[&["p", "q", "r"]]);
        assert_eq!(
            o.satisfiable(&gamma),
            Err(OracleError::TooManyVariables { found: 3, limit: 2 })
        );
    }

    #[test]
    fn non_ground_is_rejected() {
        let gamma = ClauseSet::new(vec![Clause::new(vec![Literal::new(
            true,
            "p",
            vec![crate::term::Term::var("X")],
        )])]);
        assert!(matches!(
            Oracle::default().satisfiable(&gamma),
            Err(OracleError::NonGround { .. })
        ));
    }

    #[test]
    fn minimal_unsat_subset_examples() {
        let o = Oracle::default();
        let core = o.minimal_unsat_subset(&set(&[&["p"], &["~p"], &["q"]])).unwrap();
        assert_eq!(core.indices, [0, 1]);

        let minimal = set(&[&["p", "q"], &["~p"], &["~q"]]);
        assert_eq!(o.minimal_unsat_subset(&minimal).unwrap().clauses, minimal);

        let core = o
            .minimal_unsat_subset(&set(&[&["p", "q"], &["~p"], &["~q"], &["r"]]))
            .unwrap();
        assert_eq!(core.indices, [0, 1, 2]);
        // every proper subset obtained by one deletion is satisfiable
        for skip in 0..core.indices.len() {
            let rest: Vec<usize> = (0..core.indices.len()).filter(|&i| i != skip).collect();
            assert!(o.satisfiable(&core.clauses.subset(&rest)).unwrap().is_sat());
        }

        assert_eq!(
            o.minimal_unsat_subset(&set(&[&["p"]])),
            Err(OracleError::Satisfiable)
        );
    }
}
