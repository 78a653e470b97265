//! Atom interning, a small DPLL procedure and exhaustive truth tables.

use std::collections::HashMap;

use crate::term::Literal;

/// Maps positive ground atoms to dense variable indices.
#[derive(Clone, Debug, Default)]
pub(crate) struct AtomTable {
    index: HashMap<Literal, usize>,
    atoms: Vec<Literal>,
}

impl AtomTable {
    pub(crate) fn intern(&mut self, lit: &Literal) -> usize {
        let key = lit.to_positive();
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.atoms.len();
        self.index.insert(key.clone(), i);
        self.atoms.push(key);
        i
    }

    pub(crate) fn get(&self, atom: &Literal) -> Option<usize> {
        self.index.get(atom).copied()
    }

    pub(crate) fn atoms(&self) -> &[Literal] {
        &self.atoms
    }

    pub(crate) fn len(&self) -> usize {
        self.atoms.len()
    }

    /// Encodes a clause as signed 1-based variable numbers.
    pub(crate) fn encode(&mut self, clause: &[Literal]) -> Vec<i32> {
        clause
            .iter()
            .map(|l| {
                let v = self.intern(l) as i32 + 1;
                if l.positive {
                    v
                } else {
                    -v
                }
            })
            .collect()
    }
}

/// DPLL with unit propagation. Returns a total assignment when satisfiable.
pub(crate) fn dpll(num_vars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    let mut assignment = vec![None; num_vars];
    if search(clauses, &mut assignment) {
        Some(assignment.into_iter().map(|v| v.unwrap_or(false)).collect())
    } else {
        None
    }
}

fn value(assignment: &[Option<bool>], lit: i32) -> Option<bool> {
    assignment[lit.unsigned_abs() as usize - 1].map(|v| v == (lit > 0))
}

fn search(clauses: &[Vec<i32>], assignment: &mut [Option<bool>]) -> bool {
    let mut trail = Vec::new();
    let result = loop {
        // Unit propagation to a fixpoint; `branch` keeps the first open
        // literal of the first open clause.
        let mut branch = None;
        let mut propagated = false;
        let mut conflict = false;
        for clause in clauses {
            let mut open = None;
            let mut open_count = 0;
            let mut satisfied = false;
            for &lit in clause {
                match value(assignment, lit) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open_count += 1;
                        open.get_or_insert(lit);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open_count {
                0 => {
                    conflict = true;
                    break;
                }
                1 => {
                    let lit = open.unwrap();
                    assignment[lit.unsigned_abs() as usize - 1] = Some(lit > 0);
                    trail.push(lit.unsigned_abs() as usize - 1);
                    propagated = true;
                }
                _ => {
                    branch.get_or_insert(open.unwrap());
                }
            }
        }
        if conflict {
            break false;
        }
        if propagated {
            continue;
        }
        match branch {
            None => break true,
            Some(lit) => {
                let var = lit.unsigned_abs() as usize - 1;
                for choice in [lit > 0, lit <= 0] {
                    assignment[var] = Some(choice);
                    if search(clauses, assignment) {
                        return true;
                    }
                }
                assignment[var] = None;
                break false;
            }
        }
    };
    if !result {
        for var in trail {
            assignment[var] = None;
        }
    }
    result
}

/// Exhaustive check over all `2^num_vars` assignments.
pub(crate) fn truth_table_satisfiable(
    num_vars: usize,
    clauses: &[Vec<i32>],
) -> Option<Vec<bool>> {
    assert!(num_vars < 32, "truth tables are limited to 31 variables");
    (0u64..1 << num_vars).find_map(|bits| {
        let assignment: Vec<bool> = (0..num_vars).map(|i| bits >> i & 1 == 1).collect();
        let sat = clauses.iter().all(|c| {
            c.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0))
        });
        sat.then_some(assignment)
    })
}
