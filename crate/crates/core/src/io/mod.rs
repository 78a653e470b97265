//! Input parsers, canonical printing, problem digests and trace files.

mod dimacs;
mod fo;
mod trace;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::chain::ClauseSet;
use crate::term::Symbol;

pub use dimacs::{parse_dimacs, write_dimacs};
pub use fo::{parse_chain, parse_clause, parse_fo, parse_literal, parse_substitution, parse_term};
pub use trace::{read_trace, write_trace, TraceError, TraceErrorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProblemKind {
    Propositional,
    FirstOrder,
}

/// Predicates and function symbols with their arities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    pub predicates: BTreeMap<Symbol, usize>,
    pub functors: BTreeMap<Symbol, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub kind: ProblemKind,
    pub clauses: ClauseSet,
    pub symbols: SymbolTable,
    pub source: String,
}

impl Problem {
    pub fn is_propositional(&self) -> bool {
        self.kind == ProblemKind::Propositional
    }

    pub fn digest(&self) -> String {
        digest(&self.clauses)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("malformed header")]
    MalformedHeader,
    #[error("header declares {declared} clauses but {found} were found")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("variable {var} exceeds the declared {declared} variables")]
    VariableOutOfRange { var: u64, declared: u64 },
    #[error("empty clause")]
    EmptyClause,
    #[error("clause is not terminated")]
    UnterminatedClause,
    #[error("statement is not terminated by `.`")]
    UnterminatedStatement,
    #[error("identifier `{0}` starts with a digit")]
    DigitIdentifier(String),
    #[error("invalid token `{0}`")]
    InvalidToken(String),
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("`{symbol}` used with arity {found}, earlier with arity {expected}")]
    ArityConflict {
        symbol: String,
        expected: usize,
        found: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line, kind }
    }
}

/// One clause per line in the first-order syntax, in input order.
pub fn print_clauses(clauses: &ClauseSet) -> String {
    let mut out = String::new();
    for c in clauses {
        writeln!(out, "{c}").unwrap();
    }
    out
}

pub fn print_problem(problem: &Problem) -> String {
    print_clauses(&problem.clauses)
}

/// Lowercase hex SHA-256 of the canonical printing.
pub fn digest(clauses: &ClauseSet) -> String {
    hex::encode(Sha256::digest(print_clauses(clauses).as_bytes()))
}
