//! Line-oriented trace files.
//!
//! ```text
//! me-trace 1
//! problem <sha256 hex>
//! assume <clause>            optional, zero or more
//! start <i> => <chain>
//! ext <i> <pos> <mgu> => <chain>
//! red <a> <mgu> => <chain>
//! rem => <chain>
//! lemma <clause>             optional, only right after rem
//! qed                        exactly when the last chain is #box
//! ```
//!
//! Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::derivation::{DerivationTrace, Step, StepKind};

use super::fo::{parse_chain, parse_clause, parse_substitution};

const HEADER: &str = "me-trace 1";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TraceErrorKind {
    #[error("missing `{HEADER}` header")]
    MissingHeader,
    #[error("unsupported trace version `{0}`")]
    Version(String),
    #[error("missing `problem <digest>` line")]
    MissingProblem,
    #[error("unknown step keyword `{0}`")]
    UnknownKeyword(String),
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("`lemma` must directly follow `rem`")]
    StrayLemma,
    #[error("`assume` must precede the first step")]
    LateAssume,
    #[error("`qed` but the last chain is not #box")]
    QedWithoutBox,
    #[error("the last chain is #box but `qed` is missing")]
    MissingQed,
    #[error("content after `qed`")]
    AfterQed,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("trace line {line}: {kind}")]
pub struct TraceError {
    pub line: usize,
    pub kind: TraceErrorKind,
}

pub fn write_trace(trace: &DerivationTrace) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "problem {}", trace.problem_digest).unwrap();
    for lemma in &trace.assumed {
        writeln!(out, "assume {lemma}").unwrap();
    }
    for step in &trace.steps {
        writeln!(out, "{} => {}", step.kind, step.chain).unwrap();
        if let Some(lemma) = &step.lemma {
            writeln!(out, "lemma {lemma}").unwrap();
        }
    }
    if trace.ends_in_box() {
        out.push_str("qed\n");
    }
    out
}

fn number(text: &str, what: &str) -> Result<usize, TraceErrorKind> {
    text.parse()
        .map_err(|_| TraceErrorKind::Malformed(format!("expected {what}, found `{text}`")))
}

fn parse_step(line: &str) -> Result<Step, TraceErrorKind> {
    let (head, chain_text) = line
        .split_once(" => ")
        .ok_or_else(|| TraceErrorKind::Malformed("missing ` => <chain>`".into()))?;
    let chain = parse_chain(chain_text).map_err(|e| TraceErrorKind::Malformed(e.kind.to_string()))?;
    let mut fields = head.splitn(4, ' ');
    let keyword = fields.next().unwrap_or_default();
    let mut next = |what: &str| {
        fields
            .next()
            .ok_or_else(|| TraceErrorKind::Malformed(format!("missing {what}")))
    };
    let mgu = |text: &str| {
        parse_substitution(text).map_err(|e| TraceErrorKind::Malformed(e.kind.to_string()))
    };
    let kind = match keyword {
        "start" => StepKind::Start {
            clause: number(next("clause index")?, "clause index")?,
        },
        "ext" => StepKind::Extension {
            clause: number(next("clause index")?, "clause index")?,
            position: number(next("position")?, "position")?,
            mgu: mgu(next("unifier")?)?,
        },
        "red" => StepKind::Reduction {
            a_index: number(next("A-entry index")?, "A-entry index")?,
            mgu: mgu(next("unifier")?)?,
        },
        "rem" => StepKind::Removal,
        other => return Err(TraceErrorKind::UnknownKeyword(other.to_string())),
    };
    if fields.next().is_some() {
        return Err(TraceErrorKind::Malformed("trailing fields".into()));
    }
    Ok(Step::new(kind, chain))
}

pub fn read_trace(text: &str) -> Result<DerivationTrace, TraceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line, kind| TraceError { line, kind };

    match lines.next() {
        Some((_, HEADER)) => {}
        Some((n, l)) => match l.strip_prefix("me-trace ") {
            Some(v) => return Err(err(n, TraceErrorKind::Version(v.to_string()))),
            None => return Err(err(n, TraceErrorKind::MissingHeader)),
        },
        None => return Err(err(1, TraceErrorKind::MissingHeader)),
    }
    let mut trace = DerivationTrace::default();
    match lines.next() {
        Some((_, l)) if l.starts_with("problem ") => {
            trace.problem_digest = l["problem ".len()..].to_string();
        }
        Some((n, _)) => return Err(err(n, TraceErrorKind::MissingProblem)),
        None => return Err(err(1, TraceErrorKind::MissingProblem)),
    }

    let mut qed = None;
    let mut last = 1;
    for (n, line) in lines {
        last = n;
        if qed.is_some() {
            return Err(err(n, TraceErrorKind::AfterQed));
        }
        if line == "qed" {
            if !trace.ends_in_box() {
                return Err(err(n, TraceErrorKind::QedWithoutBox));
            }
            qed = Some(n);
        } else if let Some(rest) = line.strip_prefix("assume ") {
            if !trace.steps.is_empty() {
                return Err(err(n, TraceErrorKind::LateAssume));
            }
            let clause = parse_clause(rest)
                .map_err(|e| err(n, TraceErrorKind::Malformed(e.kind.to_string())))?;
            trace.assumed.push(clause);
        } else if let Some(rest) = line.strip_prefix("lemma ") {
            let slot = match trace.steps.last_mut() {
                Some(s) if s.kind == StepKind::Removal && s.lemma.is_none() => &mut s.lemma,
                _ => return Err(err(n, TraceErrorKind::StrayLemma)),
            };
            let clause = parse_clause(rest)
                .map_err(|e| err(n, TraceErrorKind::Malformed(e.kind.to_string())))?;
            *slot = Some(clause);
        } else {
            trace.steps.push(parse_step(line).map_err(|k| err(n, k))?);
        }
    }
    if qed.is_none() && trace.ends_in_box() {
        return Err(err(last, TraceErrorKind::MissingQed));
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_chain;

    fn sample() -> DerivationTrace {
        let c = |s: &str| parse_chain(s).unwrap();
        DerivationTrace {
            problem_digest: "ab12".into(),
            assumed: vec![parse_clause("~q(X).").unwrap()],
            steps: vec![
                Step::new(StepKind::Start { clause: 0 }, c("p(X) q(X)")),
                Step::new(
                    StepKind::Extension {
                        clause: 1,
                        position: 0,
                        mgu: parse_substitution("{X1->X}").unwrap(),
                    },
                    c("[p(X)]^0 q(X)"),
                ),
                Step {
                    kind: StepKind::Removal,
                    chain: c("q(X)"),
                    lemma: Some(parse_clause("~p(X).").unwrap()),
                },
                Step::new(
                    StepKind::Extension {
                        clause: 2,
                        position: 0,
                        mgu: parse_substitution("{}").unwrap(),
                    },
                    c("[q(X)]^0"),
                ),
                Step::new(StepKind::Removal, c("#box")),
            ],
        }
    }

    #[test]
    fn round_trip() {
        let t = sample();
        let text = write_trace(&t);
        assert!(text.starts_with("me-trace 1\nproblem ab12\nassume ~q(X).\nstart 0 => p(X) q(X)\n"));
        assert!(text.contains("ext 1 0 {X1->X} => [p(X)]^0 q(X)\nrem => q(X)\nlemma ~p(X).\n"));
        assert!(text.ends_with("rem => #box\nqed\n"));
        let back = read_trace(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(write_trace(&back), text);
    }

    #[test]
    fn comments_are_skipped() {
        let text = write_trace(&sample()).replace("rem => q(X)\n", "# note\nrem => q(X)\n\n");
        assert_eq!(read_trace(&text).unwrap(), sample());
    }

    #[test]
    fn errors() {
        let text = write_trace(&sample());
        let kind = |t: &str| read_trace(t).unwrap_err();

        let e = kind(&text.replace("rem => q(X)", "jump => q(X)"));
        assert_eq!(e.kind, TraceErrorKind::UnknownKeyword("jump".into()));
        assert_eq!(e.line, 6);
        assert_eq!(
            kind(&text.replace("me-trace 1", "me-trace 2")).kind,
            TraceErrorKind::Version("2".into())
        );
        assert_eq!(
            kind(&text.replace("rem => #box\n", "rem => q(X)\n")).kind,
            TraceErrorKind::QedWithoutBox
        );
        assert_eq!(
            kind(&text.replace("qed\n", "")).kind,
            TraceErrorKind::MissingQed
        );
        assert_eq!(kind(&format!("{text}rem => #box\n")).kind, TraceErrorKind::AfterQed);
        assert_eq!(
            kind(&text.replace("lemma ~p(X).\n", "").replace("start 0", "lemma p.\nstart 0")).kind,
            TraceErrorKind::StrayLemma
        );
        assert!(matches!(
            kind(&text.replace("{X1->X}", "{X1->}")).kind,
            TraceErrorKind::Malformed(_)
        ));
        assert!(matches!(
            kind(&text.replace("start 0 =>", "start x =>")).kind,
            TraceErrorKind::Malformed(_)
        ));
    }
}
