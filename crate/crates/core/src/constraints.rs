//! Constraints on constructed graphs and selections, with per-leaf feedback.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{isomorphic, Graph, Mark};
use crate::logic::{evaluate, parse_formula, Formula, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Scope {
    Nodes,
    Edges,
    SelectedNodes,
    SelectedEdges,
    HighlightedNodes,
    HighlightedEdges,
}

impl Scope {
    pub fn measure(self, g: &Graph) -> usize {
        match self {
            Scope::Nodes => g.node_count(),
            Scope::Edges => g.edge_count(),
            Scope::SelectedNodes => g.marked_nodes(Mark::Selected).len(),
            Scope::SelectedEdges => g.marked_edges(Mark::Selected).len(),
            Scope::HighlightedNodes => g.marked_nodes(Mark::Highlighted).len(),
            Scope::HighlightedEdges => g.marked_edges(Mark::Highlighted).len(),
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Scope::Nodes => "nodes",
            Scope::Edges => "edges",
            Scope::SelectedNodes => "selected nodes",
            Scope::SelectedEdges => "selected edges",
            Scope::HighlightedNodes => "highlighted nodes",
            Scope::HighlightedEdges => "highlighted edges",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error("cardinality bounds are inverted: min {min} > max {max}")]
    InvertedBounds { min: u64, max: u64 },
    #[error("{0} needs at least one member")]
    EmptyCombinator(&'static str),
    #[error("formula: {0}")]
    Formula(#[from] ParseError),
}

/// A logical leaf keeps the author's text next to the parsed sentence so
/// definitions serialize back as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    text: String,
    formula: Formula,
}

impl Sentence {
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(Sentence {
            text: text.to_string(),
            formula: parse_formula(text)?,
        })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }
}

impl From<Formula> for Sentence {
    fn from(formula: Formula) -> Self {
        Sentence {
            text: formula.to_string(),
            formula,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Kind {
    Isomorphy { target: Graph, respect_marks: bool },
    Cardinality { scope: Scope, min: u64, max: Option<u64> },
    Logical(Sentence),
    Not(Box<Constraint>),
    All(Vec<Constraint>),
    Any(Vec<Constraint>),
    None(Vec<Constraint>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConstraintRepr", into = "ConstraintRepr")]
pub struct Constraint {
    kind: Kind,
    message: Option<String>,
}

impl Constraint {
    pub fn new(kind: Kind) -> Result<Self, ConstraintError> {
        match &kind {
            Kind::Cardinality {
                min, max: Some(max), ..
            } if min > max => {
                return Err(ConstraintError::InvertedBounds { min: *min, max: *max });
            }
            Kind::All(v) | Kind::Any(v) | Kind::None(v) if v.is_empty() => {
                return Err(ConstraintError::EmptyCombinator(kind_name(&kind)));
            }
            _ => {}
        }
        Ok(Constraint { kind, message: None })
    }

    pub fn isomorphy(target: Graph, respect_marks: bool) -> Self {
        Constraint::new(Kind::Isomorphy { target, respect_marks }).expect("always valid")
    }

    pub fn cardinality(scope: Scope, min: u64, max: Option<u64>) -> Result<Self, ConstraintError> {
        Constraint::new(Kind::Cardinality { scope, min, max })
    }

    pub fn logical(formula: impl Into<Sentence>) -> Self {
        Constraint::new(Kind::Logical(formula.into())).expect("always valid")
    }

    pub fn logical_text(text: &str) -> Result<Self, ConstraintError> {
        Ok(Constraint::logical(Sentence::parse(text)?))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(c: Constraint) -> Self {
        Constraint::new(Kind::Not(Box::new(c))).expect("always valid")
    }

    pub fn all(cs: Vec<Constraint>) -> Result<Self, ConstraintError> {
        Constraint::new(Kind::All(cs))
    }

    pub fn any(cs: Vec<Constraint>) -> Result<Self, ConstraintError> {
        Constraint::new(Kind::Any(cs))
    }

    pub fn none(cs: Vec<Constraint>) -> Result<Self, ConstraintError> {
        Constraint::new(Kind::None(cs))
    }

    pub fn with_message(mut self, message: impl Into<String>) -> Self {
        self.message = Some(message.into());
        self
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn message(&self) -> Option<&str> {
        self.message.as_deref()
    }

    pub fn name(&self) -> &'static str {
        kind_name(&self.kind)
    }

    /// Truth value only, without collecting feedback.
    pub fn holds(&self, g: &Graph) -> bool {
        match &self.kind {
            Kind::Isomorphy { target, respect_marks } => {
                matches!(isomorphic(g, target, *respect_marks), Ok(Some(_)))
            }
            Kind::Cardinality { scope, min, max } => {
                let n = scope.measure(g) as u64;
                n >= *min && max.map_or(true, |m| n <= m)
            }
            Kind::Logical(s) => evaluate(&s.formula, g),
            Kind::Not(c) => !c.holds(g),
            Kind::All(cs) => cs.iter().all(|c| c.holds(g)),
            Kind::Any(cs) => cs.iter().any(|c| c.holds(g)),
            Kind::None(cs) => !cs.iter().any(|c| c.holds(g)),
        }
    }

    pub fn check(&self, g: &Graph) -> Verdict {
        let mut violations = Vec::new();
        self.collect(g, self.name().to_string(), &mut violations);
        Verdict {
            satisfied: violations.is_empty(),
            violations,
        }
    }

    fn collect(&self, g: &Graph, path: String, out: &mut Vec<Violation>) {
        let child_path = |i: usize, c: &Constraint| format!("{path}[{i}].{}", c.name());
        match &self.kind {
            Kind::Isomorphy { .. } | Kind::Cardinality { .. } | Kind::Logical(_) => {
                if !self.holds(g) {
                    out.push(Violation {
                        path,
                        message: self.feedback(g),
                    });
                }
            }
            Kind::Not(c) => {
                if c.holds(g) {
                    out.push(Violation {
                        path,
                        message: self.feedback(g),
                    });
                }
            }
            Kind::All(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    c.collect(g, child_path(i, c), out);
                }
            }
            Kind::Any(cs) => {
                let mut best: Option<Vec<Violation>> = None;
                for (i, c) in cs.iter().enumerate() {
                    let mut v = Vec::new();
                    c.collect(g, child_path(i, c), &mut v);
                    if v.is_empty() {
                        return;
                    }
                    if best.as_ref().map_or(true, |b| v.len() < b.len()) {
                        best = Some(v);
                    }
                }
                out.extend(best.unwrap_or_default());
            }
            Kind::None(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if c.holds(g) {
                        out.push(Violation {
                            path: child_path(i, c),
                            message: self.message.clone().unwrap_or_else(|| {
                                format!("must not hold: {}", c.default_message(g))
                            }),
                        });
                    }
                }
            }
        }
    }

    fn feedback(&self, g: &Graph) -> String {
        self.message.clone().unwrap_or_else(|| self.default_message(g))
    }

    /// Description of the requirement this node states.
    fn default_message(&self, g: &Graph) -> String {
        match &self.kind {
            Kind::Isomorphy { target, respect_marks } => format!(
                "the graph must be isomorphic to the given {}-node graph{}",
                target.node_count(),
                if *respect_marks { " including its marks" } else { "" }
            ),
            Kind::Cardinality { scope, min, max } => {
                let want = match max {
                    Some(max) if max == min => format!("exactly {min}"),
                    Some(max) => format!("between {min} and {max}"),
                    None => format!("at least {min}"),
                };
                format!("expected {want} {}, found {}", scope.describe(), scope.measure(g))
            }
            Kind::Logical(s) => format!("the formula {} must hold", s.text),
            Kind::Not(c) => format!("must not hold: {}", c.default_message(g)),
            Kind::All(_) => "all members must hold".to_string(),
            Kind::Any(_) => "at least one member must hold".to_string(),
            Kind::None(_) => "no member may hold".to_string(),
        }
    }
}

fn kind_name(kind: &Kind) -> &'static str {
    match kind {
        Kind::Isomorphy { .. } => "Isomorphy",
        Kind::Cardinality { .. } => "Cardinality",
        Kind::Logical(_) => "Logical",
        Kind::Not(_) => "Not",
        Kind::All(_) => "All",
        Kind::Any(_) => "Any",
        Kind::None(_) => "None",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub satisfied: bool,
    pub violations: Vec<Violation>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase", deny_unknown_fields)]
enum ConstraintRepr {
    Isomorphy {
        target: Graph,
        #[serde(rename = "respectMarks", default)]
        respect_marks: bool,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        message: Option<String>,
    },
    Cardinality {
        scope: Scope,
        #[serde(default)]
        min: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        message: Option<String>,
    },
    Logical {
        formula: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        message: Option<String>,
    },
    Not {
        constraint: Box<Constraint>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        message: Option<String>,
    },
    All {
        constraints: Vec<Constraint>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        message: Option<String>,
    },
    Any {
        constraints: Vec<Constraint>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        message: Option<String>,
    },
    None {
        constraints: Vec<Constraint>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        message: Option<String>,
    },
}

impl TryFrom<ConstraintRepr> for Constraint {
    type Error = ConstraintError;

    fn try_from(r: ConstraintRepr) -> Result<Self, ConstraintError> {
        let (kind, message) = match r {
            ConstraintRepr::Isomorphy {
                target,
                respect_marks,
                message,
            } => (Kind::Isomorphy { target, respect_marks }, message),
            ConstraintRepr::Cardinality {
                scope,
                min,
                max,
                message,
            } => (Kind::Cardinality { scope, min, max }, message),
            ConstraintRepr::Logical { formula, message } => (Kind::Logical(Sentence::parse(&formula)?), message),
            ConstraintRepr::Not { constraint, message } => (Kind::Not(constraint), message),
            ConstraintRepr::All { constraints, message } => (Kind::All(constraints), message),
            ConstraintRepr::Any { constraints, message } => (Kind::Any(constraints), message),
            ConstraintRepr::None { constraints, message } => (Kind::None(constraints), message),
        };
        let mut c = Constraint::new(kind)?;
        c.message = message;
        Ok(c)
    }
}

impl From<Constraint> for ConstraintRepr {
    fn from(c: Constraint) -> Self {
        let message = c.message;
        match c.kind {
            Kind::Isomorphy { target, respect_marks } => ConstraintRepr::Isomorphy {
                target,
                respect_marks,
                message,
            },
            Kind::Cardinality { scope, min, max } => ConstraintRepr::Cardinality {
                scope,
                min,
                max,
                message,
            },
            Kind::Logical(s) => ConstraintRepr::Logical {
                formula: s.text,
                message,
            },
            Kind::Not(constraint) => ConstraintRepr::Not { constraint, message },
            Kind::All(constraints) => ConstraintRepr::All { constraints, message },
            Kind::Any(constraints) => ConstraintRepr::Any { constraints, message },
            Kind::None(constraints) => ConstraintRepr::None { constraints, message },
        }
    }
}
