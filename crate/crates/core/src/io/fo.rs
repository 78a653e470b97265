//! The first-order clause language.
//!
//! ```text
//! % comment
//! ~p(X) | q(f(X)).
//! p(a).
//! ```
//!
//! Variables start with an uppercase letter or `_`; predicates, functors
//! and constants start with a lowercase letter. Arities are inferred from
//! first use and enforced across the whole problem.

use std::collections::BTreeMap;

use crate::chain::{Chain, Clause, ClauseSet, Entry};
use crate::term::{Literal, Substitution, Symbol, Term};

use super::{ParseError, ParseErrorKind, Problem, ProblemKind, SymbolTable};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Lower(String),
    Upper(String),
    LParen,
    RParen,
    Comma,
    Pipe,
    Tilde,
    Dot,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Lower(s) | Tok::Upper(s) => format!("`{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Dot => "`.`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut chars = text.char_indices().peekable();
    while let Some((start, c)) = chars.next() {
        let tok = match c {
            '\n' => {
                line += 1;
                continue;
            }
            c if c.is_whitespace() => continue,
            '%' => {
                while chars.peek().is_some_and(|(_, c)| *c != '\n') {
                    chars.next();
                }
                continue;
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '|' => Tok::Pipe,
            '~' => Tok::Tilde,
            '.' => Tok::Dot,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut end = start + c.len_utf8();
                while let Some(&(i, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        end = i + d.len_utf8();
                        chars.next();
                    } else {
                        break;
                    }
                }
                let word = text[start..end].to_string();
                if c.is_ascii_digit() {
                    return Err(ParseError::new(line, ParseErrorKind::DigitIdentifier(word)));
                }
                if c.is_ascii_uppercase() || c == '_' {
                    Tok::Upper(word)
                } else {
                    Tok::Lower(word)
                }
            }
            other => {
                return Err(ParseError::new(
                    line,
                    ParseErrorKind::InvalidToken(other.to_string()),
                ))
            }
        };
        out.push((tok, line));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    last_line: usize,
    symbols: SymbolTable,
}

impl Parser {
    fn new(text: &str) -> Result<Parser, ParseError> {
        let toks = lex(text)?;
        let last_line = toks.last().map_or(1, |(_, l)| *l);
        Ok(Parser {
            toks,
            pos: 0,
            last_line,
            symbols: SymbolTable::default(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn line(&self) -> usize {
        self.toks.get(self.pos).map_or(self.last_line, |(_, l)| *l)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.line(), kind)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        match self.peek() {
            Some(t) => self.error(ParseErrorKind::Unexpected {
                expected,
                found: t.describe(),
            }),
            None => self.error(ParseErrorKind::UnterminatedStatement),
        }
    }

    fn record(
        table: &mut BTreeMap<Symbol, usize>,
        name: &Symbol,
        arity: usize,
        line: usize,
    ) -> Result<(), ParseError> {
        match table.get(name) {
            Some(&expected) if expected != arity => Err(ParseError::new(
                line,
                ParseErrorKind::ArityConflict {
                    symbol: name.to_string(),
                    expected,
                    found: arity,
                },
            )),
            Some(_) => Ok(()),
            None => {
                table.insert(name.clone(), arity);
                Ok(())
            }
        }
    }

    fn arguments(&mut self) -> Result<Vec<Term>, ParseError> {
        let mut args = Vec::new();
        if self.peek() != Some(&Tok::LParen) {
            return Ok(args);
        }
        self.next();
        loop {
            args.push(self.term()?);
            match self.peek() {
                Some(Tok::Comma) => {
                    self.next();
                }
                Some(Tok::RParen) => {
                    self.next();
                    return Ok(args);
                }
                _ => return Err(self.unexpected("`,` or `)`")),
            }
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Upper(name)) => {
                self.next();
                Ok(Term::Var(name.into()))
            }
            Some(Tok::Lower(name)) => {
                let line = self.line();
                self.next();
                let args = self.arguments()?;
                let name: Symbol = name.into();
                Self::record(&mut self.symbols.functors, &name, args.len(), line)?;
                Ok(Term::App(name, args))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let positive = if self.peek() == Some(&Tok::Tilde) {
            self.next();
            false
        } else {
            true
        };
        match self.peek().cloned() {
            Some(Tok::Lower(name)) => {
                let line = self.line();
                self.next();
                let args = self.arguments()?;
                let name: Symbol = name.into();
                Self::record(&mut self.symbols.predicates, &name, args.len(), line)?;
                Ok(Literal {
                    positive,
                    predicate: name,
                    args,
                })
            }
            _ => Err(self.unexpected("a predicate")),
        }
    }

    /// `lit ('|' lit)*`, without the terminating dot.
    fn disjunction(&mut self) -> Result<Vec<Literal>, ParseError> {
        let mut lits = vec![self.literal()?];
        while self.peek() == Some(&Tok::Pipe) {
            self.next();
            lits.push(self.literal()?);
        }
        Ok(lits)
    }

    fn statement(&mut self) -> Result<Clause, ParseError> {
        if self.peek() == Some(&Tok::Dot) {
            return Err(self.error(ParseErrorKind::EmptyClause));
        }
        let lits = self.disjunction()?;
        match self.peek() {
            Some(Tok::Dot) => {
                self.next();
                Ok(Clause::new(lits))
            }
            None => Err(self.error(ParseErrorKind::UnterminatedStatement)),
            _ => Err(self.unexpected("`|` or `.`")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }
}

pub fn parse_fo(text: &str) -> Result<Problem, ParseError> {
    let mut parser = Parser::new(text)?;
    let mut clauses = Vec::new();
    while !parser.at_end() {
        clauses.push(parser.statement()?);
    }
    let kind = if parser.symbols.predicates.values().all(|&a| a == 0) {
        ProblemKind::Propositional
    } else {
        ProblemKind::FirstOrder
    };
    Ok(Problem {
        kind,
        clauses: ClauseSet::new(clauses),
        symbols: parser.symbols,
        source: String::new(),
    })
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut parser = Parser::new(text)?;
    let t = parser.term()?;
    parser.finish()?;
    Ok(t)
}

pub fn parse_literal(text: &str) -> Result<Literal, ParseError> {
    let mut parser = Parser::new(text)?;
    let l = parser.literal()?;
    parser.finish()?;
    Ok(l)
}

/// A single clause, `p | ~q.`; the trailing dot is required.
pub fn parse_clause(text: &str) -> Result<Clause, ParseError> {
    let mut parser = Parser::new(text)?;
    let c = parser.statement()?;
    parser.finish()?;
    Ok(c)
}

fn malformed(found: &str, expected: &'static str) -> ParseError {
    ParseError::new(
        1,
        ParseErrorKind::Unexpected {
            expected,
            found: format!("`{found}`"),
        },
    )
}

/// Canonical chain printing: space-separated entries, `[lit]^k` for
/// A-entries, `#box` for the empty chain.
pub fn parse_chain(text: &str) -> Result<Chain, ParseError> {
    if text == "#box" {
        return Ok(Chain::empty());
    }
    let mut entries = Vec::new();
    for token in text.split(' ') {
        if let Some(rest) = token.strip_prefix('[') {
            let (lit, scope) = rest
                .rsplit_once("]^")
                .ok_or_else(|| malformed(token, "`[literal]^scope`"))?;
            let scope = scope
                .parse::<usize>()
                .map_err(|_| malformed(token, "a scope"))?;
            entries.push(Entry::A(parse_literal(lit)?, scope));
        } else if token.is_empty() {
            return Err(malformed(text, "single spaces between entries"));
        } else {
            entries.push(Entry::B(parse_literal(token)?));
        }
    }
    Ok(Chain::new(entries))
}

/// `{X->t,Y->u}` as printed by [`Substitution`]'s `Display`.
pub fn parse_substitution(text: &str) -> Result<Substitution, ParseError> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| malformed(text, "`{...}`"))?;
    if inner.is_empty() {
        return Ok(Substitution::new());
    }
    let mut pairs = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    let mut parts = Vec::new();
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    for part in parts {
        let (var, term) = part
            .split_once("->")
            .ok_or_else(|| malformed(part, "`Var->term`"))?;
        match parse_term(var)? {
            Term::Var(v) => pairs.push((v, parse_term(term)?)),
            _ => return Err(malformed(var, "a variable")),
        }
    }
    let subst = Substitution::from_pairs(pairs.iter().cloned());
    if subst.len() != pairs.len() {
        return Err(malformed(text, "distinct non-identity bindings"));
    }
    Ok(subst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_example() {
        let p = parse_fo("~p(X) | q(f(X)).\np(a).\n~q(Y).\n").unwrap();
        assert_eq!(p.clauses.len(), 3);
        assert_eq!(p.kind, ProblemKind::FirstOrder);
        assert_eq!(p.symbols.functors.get("f"), Some(&1));
        assert_eq!(p.symbols.functors.get("a"), Some(&0));
        assert_eq!(p.symbols.predicates.get("p"), Some(&1));
    }

    #[test]
    fn arity_conflict() {
        let err = parse_fo("p(X, X).\np(a).\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::ArityConflict { expected: 2, found: 1, .. }));
    }

    #[test]
    fn zero_ary_predicates() {
        let p = parse_fo("p | ~p.").unwrap();
        assert_eq!(p.kind, ProblemKind::Propositional);
        assert_eq!(p.clauses.clauses()[0].to_string(), "p | ~p.");
    }

    #[test]
    fn errors() {
        assert_eq!(parse_fo("p.\n.\n").unwrap_err().kind, ParseErrorKind::EmptyClause);
        assert_eq!(
            parse_fo("p | q").unwrap_err().kind,
            ParseErrorKind::UnterminatedStatement
        );
        assert_eq!(
            parse_fo("p(1a).").unwrap_err().kind,
            ParseErrorKind::DigitIdentifier("1a".into())
        );
        assert!(matches!(
            parse_fo("P(a).").unwrap_err().kind,
            ParseErrorKind::Unexpected { .. }
        ));
        assert_eq!(parse_fo("% only a comment\n").unwrap().clauses.len(), 0);
    }

    #[test]
    fn underscore_variables() {
        let l = parse_literal("p(_,_G1,a)").unwrap();
        assert!(l.args[0].is_var() && l.args[1].is_var() && !l.args[2].is_var());
    }

    #[test]
    fn chain_and_substitution_syntax() {
        let c = parse_chain("~q [p]^0 [q(X,f(a))]^2 r").unwrap();
        assert_eq!(c.to_string(), "~q [p]^0 [q(X,f(a))]^2 r");
        assert_eq!(parse_chain("#box").unwrap(), Chain::empty());
        assert!(parse_chain("p  q").is_err());
        assert!(parse_chain("[p]0").is_err());

        let s = parse_substitution("{X->f(a,Y),Y->b}").unwrap();
        assert_eq!(s.to_string(), "{X->f(a,Y),Y->b}");
        assert!(parse_substitution("{}").unwrap().is_empty());
        assert!(parse_substitution("{X->X}").is_err());
        assert!(parse_substitution("{a->b}").is_err());
    }
}
