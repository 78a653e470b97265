//! Random and exhaustive problem generators for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::chain::{Clause, ClauseSet};
use crate::oracle::{Oracle, OracleError};
use crate::term::{Literal, Term};

fn prop(var: usize, positive: bool) -> Literal {
    Literal::new(positive, &format!("v{var}"), Vec::new())
}

/// A clause of 1 to `max_len` distinct variables out of `vars`, each with a
/// random sign.
pub fn random_clause<R: Rng>(rng: &mut R, vars: usize, max_len: usize) -> Clause {
    let len = rng.gen_range(1..=max_len.min(vars));
    let mut chosen: Vec<usize> = (1..=vars).collect();
    chosen.shuffle(rng);
    chosen.truncate(len);
    Clause::new(chosen.into_iter().map(|v| prop(v, rng.gen())).collect())
}

/// Random propositional sets with variable and clause counts drawn
/// uniformly from the given inclusive ranges; clauses have up to three
/// literals.
pub fn random_cnf<R: Rng>(
    rng: &mut R,
    vars: (usize, usize),
    clauses: (usize, usize),
) -> ClauseSet {
    let n = rng.gen_range(vars.0..=vars.1);
    let m = rng.gen_range(clauses.0..=clauses.1);
    (0..m).map(|_| random_clause(rng, n, 3)).collect()
}

/// Every set of at most `max_clauses` distinct non-empty clauses over the
/// propositional variables `v1 .. v<vars>`, tautologies included.
pub fn all_small_sets(vars: usize, max_clauses: usize) -> Vec<ClauseSet> {
    let literals: Vec<Literal> = (1..=vars)
        .flat_map(|v| [prop(v, true), prop(v, false)])
        .collect();
    let clauses: Vec<Clause> = (1u32..1 << literals.len())
        .map(|mask| {
            Clause::new(
                (0..literals.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| literals[i].clone())
                    .collect(),
            )
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    fn rec(
        clauses: &[Clause],
        from: usize,
        left: usize,
        pick: &mut Vec<usize>,
        out: &mut Vec<ClauseSet>,
    ) {
        if !pick.is_empty() {
            out.push(pick.iter().map(|&i| clauses[i].clone()).collect());
        }
        if left == 0 {
            return;
        }
        for i in from..clauses.len() {
            pick.push(i);
            rec(clauses, i + 1, left - 1, pick, out);
            pick.pop();
        }
    }
    rec(&clauses, 0, max_clauses, &mut pick, &mut out);
    out
}

/// A minimally unsatisfiable subset of a random unsatisfiable set.
pub fn random_minimal_unsat<R: Rng>(
    rng: &mut R,
    vars: (usize, usize),
    clauses: (usize, usize),
    oracle: &Oracle,
) -> Result<ClauseSet, OracleError> {
    loop {
        let gamma = random_cnf(rng, vars, clauses);
        match oracle.minimal_unsat_subset(&gamma) {
            Ok(core) => return Ok(core.clauses),
            Err(OracleError::Satisfiable) => continue,
            Err(e) => return Err(e),
        }
    }
}

fn random_term<R: Rng>(rng: &mut R, constants: &[&str]) -> Term {
    let leaf = |rng: &mut R| {
        if rng.gen_bool(0.5) {
            Term::var(["X", "Y"][rng.gen_range(0..2)])
        } else {
            Term::constant(constants[rng.gen_range(0..constants.len())])
        }
    };
    if rng.gen_bool(0.25) {
        Term::app("f", vec![leaf(rng)])
    } else {
        leaf(rng)
    }
}

/// A small first-order set over unary predicates `p`, `q`, `r`, the
/// constants `a` and sometimes `b`, and the unary function `f`.
pub fn random_fo<R: Rng>(rng: &mut R) -> ClauseSet {
    let constants: &[&str] = if rng.gen_bool(0.5) { &["a"] } else { &["a", "b"] };
    let m = rng.gen_range(3..=6);
    (0..m)
        .map(|_| {
            let len = rng.gen_range(1..=2);
            Clause::new(
                (0..len)
                    .map(|_| {
                        let pred = ["p", "q", "r"][rng.gen_range(0..3)];
                        Literal::new(rng.gen(), pred, vec![random_term(rng, constants)])
                    })
                    .collect(),
            )
        })
        .collect()
}
