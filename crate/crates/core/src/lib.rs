//! Model elimination over chains.
//!
//! A chain is a sequence of plain literals (B-entries) and scoped ancestor
//! literals (A-entries). Derivations grow chains by extension, shrink them by
//! reduction and removal, and succeed on the empty chain. Removal emits
//! lemmas, which are consequences of the input set.
//!
//! Besides the prover this crate carries an independent brute-force
//! [`oracle`] and the checks built on it in [`derivation`].

pub mod chain;
pub mod derivation;
pub mod formula;
pub mod generate;
pub mod io;
pub mod oracle;
pub mod search;
pub mod term;

pub use chain::{Chain, ChainError, Clause, ClauseSet, Entry, Extension, Lemma};
pub use derivation::{
    audit_derived_chain_property, certify_lemma, check_derivation_from, check_trace, is_instance,
    lift_derivation, AuditReport, CheckError, CheckReport, DerivationTrace, Step, StepKind,
};
pub use formula::Formula;
pub use io::{ParseError, Problem, ProblemKind};
pub use oracle::{Certification, Oracle, OracleError, Satisfiability};
pub use search::{prove, prove_from_each_start, LemmaPolicy, LemmaReuse, SearchConfig, SearchOutcome};
pub use term::{mgu, FreshVars, Literal, Substitution, Term};
