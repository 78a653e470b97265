//! DIMACS CNF. Variable `i` becomes the zero-ary predicate `v<i>`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::chain::{Clause, ClauseSet};
use crate::term::{Literal, Symbol};

use super::{ParseError, ParseErrorKind, Problem, ProblemKind, SymbolTable};

pub fn parse_dimacs(text: &str) -> Result<Problem, ParseError> {
    let mut header: Option<(u64, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    let mut current_line = 0;
    let mut last_line = 0;
    let mut predicates: BTreeMap<Symbol, usize> = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        // SATLIB benchmark files end with a `%` line.
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::new(line, ParseErrorKind::MalformedHeader));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", vars, count] => vars.parse().ok().zip(count.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(ParseError::new(line, ParseErrorKind::MalformedHeader))?);
            continue;
        }
        let Some((nvars, _)) = header else {
            return Err(ParseError::new(line, ParseErrorKind::MissingHeader));
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| {
                ParseError::new(line, ParseErrorKind::InvalidToken(token.to_string()))
            })?;
            if value == 0 {
                if current.is_empty() {
                    return Err(ParseError::new(line, ParseErrorKind::EmptyClause));
                }
                clauses.push(Clause::new(std::mem::take(&mut current)));
                continue;
            }
            let var = value.unsigned_abs();
            if var > nvars {
                return Err(ParseError::new(
                    line,
                    ParseErrorKind::VariableOutOfRange {
                        var,
                        declared: nvars,
                    },
                ));
            }
            if current.is_empty() {
                current_line = line;
            }
            let name: Symbol = format!("v{var}").into();
            predicates.insert(name.clone(), 0);
            current.push(Literal {
                positive: value > 0,
                predicate: name,
                args: Vec::new(),
            });
        }
    }
    if !current.is_empty() {
        return Err(ParseError::new(current_line, ParseErrorKind::UnterminatedClause));
    }
    let Some((_, declared)) = header else {
        return Err(ParseError::new(last_line.max(1), ParseErrorKind::MissingHeader));
    };
    if declared != clauses.len() {
        return Err(ParseError::new(
            last_line.max(1),
            ParseErrorKind::ClauseCountMismatch {
                declared,
                found: clauses.len(),
            },
        ));
    }
    Ok(Problem {
        kind: ProblemKind::Propositional,
        clauses: ClauseSet::new(clauses),
        symbols: SymbolTable {
            predicates,
            functors: BTreeMap::new(),
        },
        source: String::new(),
    })
}

/// Writes a ground clause set as DIMACS, numbering atoms by first
/// occurrence. A `c <n> <atom>` comment line records each atom.
pub fn write_dimacs(clauses: &ClauseSet) -> String {
    let mut index: BTreeMap<Literal, usize> = BTreeMap::new();
    let mut atoms = Vec::new();
    for lit in clauses.iter().flat_map(Clause::literals) {
        let key = lit.to_positive();
        if !index.contains_key(&key) {
            atoms.push(key.clone());
            index.insert(key, atoms.len());
        }
    }
    let mut out = String::new();
    for (i, atom) in atoms.iter().enumerate() {
        writeln!(out, "c {} {atom}", i + 1).unwrap();
    }
    writeln!(out, "p cnf {} {}", atoms.len(), clauses.len()).unwrap();
    for clause in clauses {
        for lit in clause.literals() {
            let v = index[&lit.to_positive()];
            if lit.positive {
                write!(out, "{v} ").unwrap();
            } else {
                write!(out, "-{v} ").unwrap();
            }
        }
        out.push_str("0\n");
    }
    out
}
