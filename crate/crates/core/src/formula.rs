//! Quantifier-free formulas over literals, with clausification by distribution.

use std::collections::BTreeSet;
use std::fmt;

use crate::term::Literal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    False,
    True,
    Lit(Literal),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn lit(l: Literal) -> Formula {
        Formula::Lit(l)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    /// Left-nested conjunction; `True` when empty.
    pub fn conjunction<I: IntoIterator<Item = Literal>>(lits: I) -> Formula {
        lits.into_iter()
            .fold(Formula::True, |acc, l| Formula::and(acc, Formula::Lit(l)))
    }

    /// Left-nested disjunction; `False` when empty.
    pub fn disjunction<I: IntoIterator<Item = Literal>>(lits: I) -> Formula {
        lits.into_iter()
            .fold(Formula::False, |acc, l| Formula::or(acc, Formula::Lit(l)))
    }

    /// Positive forms of every literal occurring in the formula.
    pub fn atoms(&self, out: &mut BTreeSet<Literal>) {
        match self {
            Formula::False | Formula::True => {}
            Formula::Lit(l) => {
                out.insert(l.to_positive());
            }
            Formula::Not(a) => a.atoms(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.atoms(out);
                b.atoms(out);
            }
        }
    }

    /// Evaluates under an assignment of truth values to positive atoms.
    pub fn eval(&self, value_of: &dyn Fn(&Literal) -> bool) -> bool {
        match self {
            Formula::False => false,
            Formula::True => true,
            Formula::Lit(l) => value_of(&l.to_positive()) == l.positive,
            Formula::Not(a) => !a.eval(value_of),
            Formula::And(a, b) => a.eval(value_of) && b.eval(value_of),
            Formula::Or(a, b) => a.eval(value_of) || b.eval(value_of),
        }
    }

    /// Conjunctive normal form by negation pushing and naive distribution.
    /// `True` yields no clauses; `False` yields one empty clause.
    pub fn to_cnf(&self) -> Vec<Vec<Literal>> {
        cnf(self, true)
    }
}

fn cnf(f: &Formula, polarity: bool) -> Vec<Vec<Literal>> {
    match (f, polarity) {
        (Formula::True, true) | (Formula::False, false) => Vec::new(),
        (Formula::False, true) | (Formula::True, false) => vec![Vec::new()],
        (Formula::Lit(l), true) => vec![vec![l.clone()]],
        (Formula::Lit(l), false) => vec![vec![l.opposite()]],
        (Formula::Not(a), pol) => cnf(a, !pol),
        (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
            let mut out = cnf(a, polarity);
            out.extend(cnf(b, polarity));
            out
        }
        (Formula::Or(a, b), true) | (Formula::And(a, b), false) => {
            let left = cnf(a, polarity);
            let right = cnf(b, polarity);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for l in &left {
                for r in &right {
                    let mut clause = l.clone();
                    clause.extend(r.iter().cloned());
                    out.push(clause);
                }
            }
            out
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::False => f.write_str("$false"),
            Formula::True => f.write_str("$true"),
            Formula::Lit(l) => write!(f, "{l}"),
            Formula::Not(a) => write!(f, "~({a})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Literal {
        Literal::atom(name)
    }

    #[test]
    fn cnf_of_constants() {
        assert!(Formula::True.to_cnf().is_empty());
        assert_eq!(Formula::False.to_cnf(), vec![Vec::<Literal>::new()]);
        assert_eq!(Formula::not(Formula::False).to_cnf(), Vec::<Vec<Literal>>::new());
    }

    #[test]
    fn cnf_distributes() {
        // (p & q) | r  ==  (p | r) & (q | r)
        let f = Formula::or(
            Formula::and(Formula::lit(v("p")), Formula::lit(v("q"))),
            Formula::lit(v("r")),
        );
        assert_eq!(f.to_cnf(), vec![vec![v("p"), v("r")], vec![v("q"), v("r")]]);
    }

    #[test]
    fn cnf_agrees_with_eval() {
        let f = Formula::implies(
            Formula::and(Formula::lit(v("p")), Formula::lit(v("q").opposite())),
            Formula::or(Formula::lit(v("r")), Formula::False),
        );
        let atoms = ["p", "q", "r"];
        for bits in 0..8u32 {
            let value = |l: &Literal| {
                let i = atoms.iter().position(|a| **a == *l.predicate).unwrap();
                bits >> i & 1 == 1
            };
            let by_cnf = f
                .to_cnf()
                .iter()
                .all(|c| c.iter().any(|l| value(&l.to_positive()) == l.positive));
            assert_eq!(by_cnf, f.eval(&value), "assignment {bits:03b}");
        }
    }
}
