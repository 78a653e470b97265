//! Derivation traces and everything that checks them: step replay, the
//! derived-chain property audit, lemma certification and the instance test
//! used when lifting ground derivations.

use std::fmt;

use thiserror::Error;

use crate::chain::{Chain, ChainError, Clause, ClauseSet, Entry, Lemma};
use crate::formula::Formula;
use crate::io;
use crate::oracle::{
    ground, Certification, GroundingSpec, Oracle, OracleError, Signature,
};
use crate::term::{
    match_literal, substitutions_are_variants, FreshVars, HasVars, Substitutable, Substitution,
    Term, VariantMap,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    Start {
        clause: usize,
    },
    /// `clause` indexes the input set; indices at or past its length refer to
    /// the trace's assumed lemmas.
    Extension {
        clause: usize,
        position: usize,
        mgu: Substitution,
    },
    Reduction {
        a_index: usize,
        mgu: Substitution,
    },
    Removal,
}

impl StepKind {
    pub fn label(&self) -> &'static str {
        match self {
            StepKind::Start { .. } => "start",
            StepKind::Extension { .. } => "ext",
            StepKind::Reduction { .. } => "red",
            StepKind::Removal => "rem",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Start { clause } => write!(f, "start {clause}"),
            StepKind::Extension {
                clause,
                position,
                mgu,
            } => write!(f, "ext {clause} {position} {mgu}"),
            StepKind::Reduction { a_index, mgu } => write!(f, "red {a_index} {mgu}"),
            StepKind::Removal => f.write_str("rem"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub kind: StepKind,
    /// The chain this step produced.
    pub chain: Chain,
    /// Lemma emitted by a removal, when recorded.
    pub lemma: Option<Lemma>,
}

impl Step {
    pub fn new(kind: StepKind, chain: Chain) -> Step {
        Step {
            kind,
            chain,
            lemma: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DerivationTrace {
    pub problem_digest: String,
    /// Lemmas used as extension clauses without being derived by this trace
    /// before their first use.
    pub assumed: Vec<Lemma>,
    pub steps: Vec<Step>,
}

impl DerivationTrace {
    pub fn chains(&self) -> impl Iterator<Item = &Chain> {
        self.steps.iter().map(|s| &s.chain)
    }

    pub fn lemmas(&self) -> impl Iterator<Item = &Lemma> {
        self.steps.iter().filter_map(|s| s.lemma.as_ref())
    }

    pub fn final_chain(&self) -> Option<&Chain> {
        self.steps.last().map(|s| &s.chain)
    }

    pub fn ends_in_box(&self) -> bool {
        self.final_chain().is_some_and(Chain::is_empty)
    }

    pub fn count(&self, label: &str) -> usize {
        self.steps.iter().filter(|s| s.kind.label() == label).count()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("problem digest mismatch: trace has {recorded}, problem is {actual}")]
    DigestMismatch { recorded: String, actual: String },
    #[error("the trace has no steps")]
    Empty,
    #[error("the first step is not `start`")]
    MissingStart,
    #[error("start clause {index} is out of range ({clauses} clauses)")]
    StartOutOfRange { index: usize, clauses: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepVerdict {
    pub index: usize,
    pub kind: &'static str,
    pub ok: bool,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub verified: bool,
    /// One verdict per replayed step; replay stops at the first failure.
    pub verdicts: Vec<StepVerdict>,
    /// Chains accepted during replay, in order.
    pub chains: Vec<Chain>,
    /// Lemmas emitted by removals, in order.
    pub lemmas: Vec<Lemma>,
    /// Assumed lemmas used before any removal in the trace produced them.
    pub undischarged: Vec<usize>,
}

impl CheckReport {
    pub fn refutation(&self) -> bool {
        self.verified && self.chains.last().is_some_and(Chain::is_empty)
    }

    pub fn first_failure(&self) -> Option<&StepVerdict> {
        self.verdicts.iter().find(|v| !v.ok)
    }
}

fn same_shape(a: &Chain, b: &Chain) -> bool {
    let mut map = VariantMap::new();
    a.len() == b.len()
        && a.entries().iter().zip(b.entries()).all(|(x, y)| match (x, y) {
            (Entry::B(l), Entry::B(m)) => map.literals(l, m),
            (Entry::A(l, k), Entry::A(m, j)) => k == j && map.literals(l, m),
            _ => false,
        })
}

struct Replay<'a> {
    gamma: &'a ClauseSet,
    assumed: &'a [Lemma],
    used: Vec<bool>,
    fresh: FreshVars,
    report: CheckReport,
}

impl Replay<'_> {
    fn clause(&mut self, index: usize) -> Result<Clause, String> {
        if let Some(c) = self.gamma.get(index) {
            return Ok(c.clone());
        }
        let j = index - self.gamma.len();
        let lemma = self
            .assumed
            .get(j)
            .ok_or_else(|| format!("clause index {index} is out of range"))?;
        if !self.used[j] {
            self.used[j] = true;
            if !self.report.lemmas.iter().any(|l| l.same_multiset(lemma)) {
                self.report.undischarged.push(j);
            }
        }
        Ok(lemma.clone())
    }

    fn compare(expected: &Chain, recorded: &Chain) -> Result<String, String> {
        if expected == recorded {
            Ok(String::new())
        } else if same_shape(expected, recorded) {
            Ok("equal up to renaming".into())
        } else {
            Err(format!("expected `{expected}`, recorded `{recorded}`"))
        }
    }

    fn compare_mgu(expected: &Substitution, recorded: &Substitution) -> Result<(), String> {
        if expected == recorded || substitutions_are_variants(expected, recorded) {
            Ok(())
        } else {
            Err(format!("mgu mismatch: expected {expected}, recorded {recorded}"))
        }
    }

    fn step(&mut self, current: &Chain, step: &Step) -> Result<String, String> {
        let rule = |e: ChainError| e.to_string();
        match &step.kind {
            StepKind::Start { .. } => Err("`start` may only appear first".into()),
            StepKind::Extension {
                clause,
                position,
                mgu,
            } => {
                let c = self.clause(*clause)?;
                let ext = current
                    .extend_fo(&c, *position, &mut self.fresh)
                    .map_err(rule)?;
                Self::compare_mgu(&ext.mgu, mgu)?;
                Self::compare(&ext.chain, &step.chain)
            }
            StepKind::Reduction { a_index, mgu } => {
                let (chain, sigma) = current.reduce_fo(*a_index).map_err(rule)?;
                Self::compare_mgu(&sigma, mgu)?;
                Self::compare(&chain, &step.chain)
            }
            StepKind::Removal => {
                let (chain, lemma) = current.remove().map_err(rule)?;
                if let Some(recorded) = &step.lemma {
                    if !recorded.same_multiset(&lemma) {
                        return Err(format!(
                            "lemma mismatch: expected `{lemma}`, recorded `{recorded}`"
                        ));
                    }
                }
                let note = Self::compare(&chain, &step.chain)?;
                self.report.lemmas.push(lemma);
                Ok(note)
            }
        }
    }

    fn run(mut self, initial: &Chain, steps: &[Step], first_index: usize) -> CheckReport {
        let mut current = initial.clone();
        self.report.verified = true;
        for (offset, step) in steps.iter().enumerate() {
            let index = first_index + offset;
            match self.step(&current, step) {
                Ok(note) => {
                    self.report.verdicts.push(StepVerdict {
                        index,
                        kind: step.kind.label(),
                        ok: true,
                        note,
                    });
                    current = step.chain.clone();
                    self.report.chains.push(current.clone());
                }
                Err(note) => {
                    self.report.verdicts.push(StepVerdict {
                        index,
                        kind: step.kind.label(),
                        ok: false,
                        note,
                    });
                    self.report.verified = false;
                    break;
                }
            }
        }
        self.report
    }
}

/// Replays `steps` starting from an arbitrary chain. Indices in the verdicts
/// count from 1, the initial chain being step 0.
pub fn check_derivation_from(
    initial: &Chain,
    steps: &[Step],
    gamma: &ClauseSet,
    assumed: &[Lemma],
) -> CheckReport {
    let replay = Replay {
        gamma,
        assumed,
        used: vec![false; assumed.len()],
        fresh: FreshVars::new(),
        report: CheckReport {
            chains: vec![initial.clone()],
            ..CheckReport::default()
        },
    };
    replay.run(initial, steps, 1)
}

/// Replays a whole trace against the input clause set it claims to refute.
pub fn check_trace(trace: &DerivationTrace, gamma: &ClauseSet) -> Result<CheckReport, CheckError> {
    let actual = io::digest(gamma);
    if trace.problem_digest != actual {
        return Err(CheckError::DigestMismatch {
            recorded: trace.problem_digest.clone(),
            actual,
        });
    }
    let first = trace.steps.first().ok_or(CheckError::Empty)?;
    let StepKind::Start { clause } = first.kind else {
        return Err(CheckError::MissingStart);
    };
    let start = gamma.get(clause).ok_or(CheckError::StartOutOfRange {
        index: clause,
        clauses: gamma.len(),
    })?;
    let initial = start.to_chain();
    let mut report = check_derivation_from(&initial, &trace.steps[1..], gamma, &trace.assumed);
    let start_ok = first.chain == initial;
    report.verdicts.insert(
        0,
        StepVerdict {
            index: 0,
            kind: "start",
            ok: start_ok,
            note: if start_ok {
                String::new()
            } else {
                format!("expected `{initial}`, recorded `{}`", first.chain)
            },
        },
    );
    if !start_ok {
        report.verdicts.truncate(1);
        report.chains.truncate(1);
        report.lemmas.clear();
        report.verified = false;
    }
    Ok(report)
}

/// Result of checking one A-entry of a chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AncestorAudit {
    /// 1-based position among the chain's A-entries.
    pub ordinal: usize,
    /// The A-entry belongs to its own set of reduction witnesses.
    pub member: bool,
    /// The input set entails: witnesses imply the B-literals to the left.
    pub entailed: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub ancestors: Vec<AncestorAudit>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.ancestors.iter().all(|a| a.member && a.entailed)
    }
}

/// Checks the invariant that justifies lemma generation.
///
/// Writing the chain as `U1 [L1^k1] ... Un [Ln^kn] U(n+1)`, the witness set
/// of the `i`-th A-entry is `{ Lj | j >= i, j - i <= kj <= j - 1 }`. The
/// audit requires `Li` to be a witness of itself and the input set to entail
/// that the conjunction of the witnesses implies the disjunction of the
/// B-literals of `U1 ... Ui`. Ground chains only.
pub fn audit_derived_chain_property(
    chain: &Chain,
    gamma: &ClauseSet,
    oracle: &Oracle,
) -> Result<AuditReport, OracleError> {
    let mut ancestors = Vec::new();
    let mut prefixes = Vec::new();
    let mut b_literals = Vec::new();
    for entry in chain.entries() {
        match entry {
            Entry::B(l) => b_literals.push(l.clone()),
            Entry::A(l, k) => {
                ancestors.push((l.clone(), *k));
                prefixes.push(b_literals.len());
            }
        }
    }
    let mut report = AuditReport::default();
    for i in 1..=ancestors.len() {
        let witnesses: Vec<usize> = (i..=ancestors.len())
            .filter(|&j| {
                let k = ancestors[j - 1].1;
                j - i <= k && k + 1 <= j
            })
            .collect();
        let conj = Formula::conjunction(witnesses.iter().map(|&j| ancestors[j - 1].0.clone()));
        let disj = Formula::disjunction(b_literals[..prefixes[i - 1]].iter().cloned());
        report.ancestors.push(AncestorAudit {
            ordinal: i,
            member: witnesses.contains(&i),
            entailed: oracle.entails(gamma, &Formula::implies(conj, disj))?,
        });
    }
    Ok(report)
}

/// Decides whether the input set entails a lemma.
///
/// Ground inputs are decided exactly. Otherwise the lemma's variables are
/// replaced by fresh constants, its negation joins the input set, and the
/// result is grounded up to `ground_depth`: an unsatisfiable grounding
/// certifies the lemma's universal closure, anything else is `Unknown`.
pub fn certify_lemma(
    lemma: &Lemma,
    gamma: &ClauseSet,
    oracle: &Oracle,
    ground_depth: usize,
) -> Result<Certification, OracleError> {
    if gamma.is_ground() && lemma.is_ground() {
        return Ok(if oracle.entails(gamma, &lemma.formula())? {
            Certification::Certified
        } else {
            Certification::Refuted
        });
    }
    let mut signature = Signature::of(gamma);
    lemma.literals().iter().for_each(|l| signature.add_literal(l));
    let mut skolem = Substitution::new();
    for v in lemma.vars() {
        let name = signature.unused_name("sk");
        signature.functors.insert(name.clone(), 0);
        skolem = skolem.compose(&Substitution::from_pairs([(v, Term::App(name, Vec::new()))]));
    }
    let mut negated = gamma.clone();
    for l in lemma.apply(&skolem).literals() {
        negated.push(Clause::new(vec![l.opposite()]));
    }
    let spec = GroundingSpec::for_clauses(&negated, ground_depth);
    let grounding = match ground(&negated, &spec) {
        Ok(g) => g,
        Err(OracleError::GroundingTooLarge { .. }) => return Ok(Certification::Unknown),
        Err(e) => return Err(e),
    };
    match oracle.satisfiable(&grounding.clauses) {
        Ok(s) if !s.is_sat() => Ok(Certification::Certified),
        Ok(_) | Err(OracleError::TooManyVariables { .. }) => Ok(Certification::Unknown),
        Err(e) => Err(e),
    }
}

/// A substitution turning `general` into `ground`, entry by entry with equal
/// kinds and scopes; `None` if there is none or `ground` has variables.
pub fn is_instance(ground: &Chain, general: &Chain) -> Option<Substitution> {
    if !ground.is_ground() || ground.len() != general.len() {
        return None;
    }
    let mut sigma = Substitution::new();
    for (g, p) in ground.entries().iter().zip(general.entries()) {
        let ok = match (g, p) {
            (Entry::B(l), Entry::B(m)) => match_literal(&mut sigma, m, l),
            (Entry::A(l, k), Entry::A(m, j)) => k == j && match_literal(&mut sigma, m, l),
            _ => false,
        };
        if !ok {
            return None;
        }
    }
    Some(Substitution::from_pairs(
        sigma.iter().map(|(v, t)| (v.clone(), t.clone())),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("cannot lift step {step}: {reason}")]
pub struct LiftError {
    pub step: usize,
    pub reason: String,
}

/// Lifts a ground derivation from instances of `gamma` to a first-order
/// derivation from `gamma` itself.
///
/// `origins[i]` names the clause of `gamma` that ground clause `i` is an
/// instance of. Each lifted step applies the same rule with the same
/// parameters to the lifted chain; every ground chain must be an instance of
/// its lifted counterpart.
pub fn lift_derivation(
    ground_steps: &[Step],
    origins: &[usize],
    gamma: &ClauseSet,
) -> Result<Vec<Step>, LiftError> {
    let fail = |step: usize, reason: String| LiftError { step, reason };
    let mut lifted: Vec<Step> = Vec::with_capacity(ground_steps.len());
    let mut fresh = FreshVars::new();
    for (i, step) in ground_steps.iter().enumerate() {
        let origin = |c: usize| {
            origins
                .get(c)
                .and_then(|&o| gamma.get(o))
                .ok_or_else(|| fail(i, format!("clause {c} has no first-order origin")))
        };
        let next = match (&step.kind, lifted.last()) {
            (StepKind::Start { clause }, None) => Step::new(
                StepKind::Start {
                    clause: origins[*clause],
                },
                origin(*clause)?.to_chain(),
            ),
            (StepKind::Start { .. }, Some(_)) => {
                return Err(fail(i, "`start` may only appear first".into()))
            }
            (_, None) => return Err(fail(i, "derivation does not begin with `start`".into())),
            (
                StepKind::Extension {
                    clause, position, ..
                },
                Some(prev),
            ) => {
                let ext = prev
                    .chain
                    .extend_fo(origin(*clause)?, *position, &mut fresh)
                    .map_err(|e| fail(i, e.to_string()))?;
                Step::new(
                    StepKind::Extension {
                        clause: origins[*clause],
                        position: *position,
                        mgu: ext.mgu,
                    },
                    ext.chain,
                )
            }
            (StepKind::Reduction { a_index, .. }, Some(prev)) => {
                let (chain, mgu) = prev
                    .chain
                    .reduce_fo(*a_index)
                    .map_err(|e| fail(i, e.to_string()))?;
                Step::new(
                    StepKind::Reduction {
                        a_index: *a_index,
                        mgu,
                    },
                    chain,
                )
            }
            (StepKind::Removal, Some(prev)) => {
                let (chain, lemma) = prev.chain.remove().map_err(|e| fail(i, e.to_string()))?;
                Step {
                    kind: StepKind::Removal,
                    chain,
                    lemma: Some(lemma),
                }
            }
        };
        if is_instance(&step.chain, &next.chain).is_none() {
            return Err(fail(
                i,
                format!("`{}` is not an instance of `{}`", step.chain, next.chain),
            ));
        }
        lifted.push(next);
    }
    Ok(lifted)
}
