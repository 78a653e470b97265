//! Fixed problem sets shared by the benchmarks.

use elim_core::generate::{random_cnf, random_minimal_unsat};
use elim_core::io::parse_fo;
use elim_core::{ClauseSet, Oracle};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn four_clauses() -> ClauseSet {
    parse_fo("p | q.\n~p | q.\np | ~q.\n~p | ~q.\n").unwrap().clauses
}

/// Every clause over three variables with all three present.
pub fn eight_clauses() -> ClauseSet {
    let mut text = String::new();
    for mask in 0..8 {
        let lit = |i: usize, name: &str| {
            if mask >> i & 1 == 1 {
                format!("~{name}")
            } else {
                name.to_string()
            }
        };
        text.push_str(&format!("{} | {} | {}.\n", lit(0, "p"), lit(1, "q"), lit(2, "r")));
    }
    parse_fo(&text).unwrap().clauses
}

pub fn successor_chain(n: usize) -> ClauseSet {
    let mut goal = "a".to_string();
    for _ in 0..n {
        goal = format!("f({goal})");
    }
    parse_fo(&format!("p(a).\n~p(X) | p(f(X)).\n~p({goal}).\n"))
        .unwrap()
        .clauses
}

pub fn random_sets(seed: u64, count: usize) -> Vec<ClauseSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_cnf(&mut rng, (3, 8), (3, 12))).collect()
}

pub fn minimal_sets(seed: u64, count: usize) -> Vec<ClauseSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let oracle = Oracle::default();
    (0..count)
        .map(|_| random_minimal_unsat(&mut rng, (3, 6), (6, 14), &oracle).unwrap())
        .collect()
}
