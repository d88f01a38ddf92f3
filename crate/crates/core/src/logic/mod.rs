//! First-order logic over graphs with selection and highlighting relations.
//!
//! Signature: `E(x,y)` edge relation, `S(x)`/`H(x)` selected/highlighted
//! nodes, `SE(x,y)`/`HE(x,y)` selected/highlighted edges, and equality.
//! Quantifiers range over the nodes of the graph. `E(x,x)` is always false
//! since graphs have no self-loops.

mod eval;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use eval::evaluate;
pub use parse::{parse_formula, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Edge(String, String),
    Selected(String),
    Highlighted(String),
    SelectedEdge(String, String),
    HighlightedEdge(String, String),
    Eq(String, String),
    True,
    False,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Atom(Atom),
}

impl Formula {
    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    /// Variables occurring outside the scope of any binding quantifier.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut free = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut free);
        free
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, free: &mut BTreeSet<String>) {
        let mut check = |v: &String, bound: &Vec<&str>| {
            if !bound.contains(&v.as_str()) {
                free.insert(v.clone());
            }
        };
        match self {
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v);
                body.collect_free(bound, free);
                bound.pop();
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, free);
                b.collect_free(bound, free);
            }
            Formula::Not(a) => a.collect_free(bound, free),
            Formula::Atom(atom) => match atom {
                Atom::Edge(x, y) | Atom::SelectedEdge(x, y) | Atom::HighlightedEdge(x, y) | Atom::Eq(x, y) => {
                    check(x, bound);
                    check(y, bound);
                }
                Atom::Selected(x) | Atom::Highlighted(x) => check(x, bound),
                Atom::True | Atom::False => {}
            },
        }
    }

    /// Maximum nesting of quantifiers.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Forall(_, b) | Formula::Exists(_, b) => 1 + b.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.quantifier_depth().max(b.quantifier_depth())
            }
            Formula::Not(a) => a.quantifier_depth(),
            Formula::Atom(_) => 0,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, top: bool) -> fmt::Result {
        match self {
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let q = if matches!(self, Formula::Forall(..)) { "forall" } else { "exists" };
                if !top {
                    f.write_str("(")?;
                }
                write!(f, "{q} {v}. ")?;
                body.write(f, true)?;
                if !top {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::And(a, b) => binary(f, a, "&", b),
            Formula::Or(a, b) => binary(f, a, "|", b),
            Formula::Implies(a, b) => binary(f, a, "->", b),
            Formula::Iff(a, b) => binary(f, a, "<->", b),
            Formula::Not(a) => {
                f.write_str("!")?;
                a.write(f, false)
            }
            Formula::Atom(atom) => write!(f, "{atom}"),
        }
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula) -> fmt::Result {
    f.write_str("(")?;
    a.write(f, false)?;
    write!(f, " {op} ")?;
    b.write(f, false)?;
    f.write_str(")")
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Edge(x, y) => write!(f, "E({x},{y})"),
            Atom::Selected(x) => write!(f, "S({x})"),
            Atom::Highlighted(x) => write!(f, "H({x})"),
            Atom::SelectedEdge(x, y) => write!(f, "SE({x},{y})"),
            Atom::HighlightedEdge(x, y) => write!(f, "HE({x},{y})"),
            Atom::Eq(x, y) => write!(f, "{x} = {y}"),
            Atom::True => f.write_str("true"),
            Atom::False => f.write_str("false"),
        }
    }
}

/// Renders in the concrete syntax accepted by [`parse_formula`], fully
/// parenthesized.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, true)
    }
}

/// `forall u. forall v. (E(u,v) -> (S(u) | S(v)))`
pub fn vertex_cover_sentence() -> Formula {
    parse_formula("forall u. forall v. (E(u,v) -> (S(u) | S(v)))").expect("canned sentence")
}

/// `forall v. (S(v) | exists u. (S(u) & E(u,v)))`
pub fn dominating_set_sentence() -> Formula {
    parse_formula("forall v. (S(v) | exists u. (S(u) & E(u,v)))").expect("canned sentence")
}

/// `forall u. forall v. (!(S(u) & S(v) & E(u,v)))`
pub fn independent_set_sentence() -> Formula {
    parse_formula("forall u. forall v. (!(S(u) & S(v) & E(u,v)))").expect("canned sentence")
}
