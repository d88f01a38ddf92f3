//! Recursive-descent parser for the ASCII formula syntax.
//!
//! ```text
//! formula := quant | iff
//! quant   := ("forall" | "exists") IDENT "." formula
//! iff     := impl {"<->" impl}
//! impl    := disj ["->" impl]
//! disj    := conj {"|" conj}
//! conj    := neg {"&" neg}
//! neg     := "!" neg | quant | primary
//! primary := "(" formula ")" | atom
//! atom    := E(x,y) | S(x) | H(x) | SE(x,y) | HE(x,y) | x = y | true | false
//! ```
//!
//! A quantifier in operand position extends as far right as possible, so
//! `S(v) | exists u. A & B` reads as `S(v) | (exists u. (A & B))`.

use thiserror::Error;

use super::{Atom, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unbound variables: {}", .0.join(", "))]
    Unbound(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    Comma,
    Dot,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DoubleArrow,
    Equals,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Dot => "'.'".into(),
            Tok::Bang => "'!'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Pipe => "'|'".into(),
            Tok::Arrow => "'->'".into(),
            Tok::DoubleArrow => "'<->'".into(),
            Tok::Equals => "'='".into(),
            Tok::End => "end of input".into(),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Pipe,
            b'=' => Tok::Equals,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::DoubleArrow
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character '{ch}'")));
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const KEYWORDS: [&str; 4] = ["forall", "exists", "true", "false"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.offset(),
                format!("expected {}, found {}", want.describe(), self.peek().describe()),
            ))
        }
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                Ok(name)
            }
            other => Err(syntax(
                self.offset(),
                format!("expected variable, found {}", other.describe()),
            )),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        if let Some(q) = self.quantifier()? {
            return Ok(q);
        }
        self.iff()
    }

    fn quantifier(&mut self) -> Result<Option<Formula>, ParseError> {
        let universal = match self.peek() {
            Tok::Ident(k) if k == "forall" => true,
            Tok::Ident(k) if k == "exists" => false,
            _ => return Ok(None),
        };
        self.bump();
        let var = self.variable()?;
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(Some(if universal {
            Formula::Forall(var, Box::new(body))
        } else {
            Formula::Exists(var, Box::new(body))
        }))
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.implication()?;
        while *self.peek() == Tok::DoubleArrow {
            self.bump();
            let right = self.implication()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.implication()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.negation()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.negation()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn negation(&mut self) -> Result<Formula, ParseError> {
        if *self.peek() == Tok::Bang {
            self.bump();
            return Ok(Formula::not(self.negation()?));
        }
        if let Some(q) = self.quantifier()? {
            return Ok(q);
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "true" => return Ok(Formula::Atom(Atom::True)),
                    "false" => return Ok(Formula::Atom(Atom::False)),
                    _ => {}
                }
                if *self.peek() == Tok::LParen {
                    return self.relation(&name, at);
                }
                if *self.peek() == Tok::Equals {
                    self.bump();
                    let rhs = self.variable()?;
                    return Ok(Formula::Atom(Atom::Eq(name, rhs)));
                }
                Err(syntax(
                    self.offset(),
                    format!(
                        "expected '(' or '=' after '{name}', found {}",
                        self.peek().describe()
                    ),
                ))
            }
            other => Err(syntax(at, format!("expected formula, found {}", other.describe()))),
        }
    }

    fn relation(&mut self, name: &str, at: usize) -> Result<Formula, ParseError> {
        let arity = match name {
            "S" | "H" => 1,
            "E" | "SE" | "HE" => 2,
            _ => return Err(syntax(at, format!("unknown relation '{name}'"))),
        };
        self.expect(Tok::LParen)?;
        let x = self.variable()?;
        let y = if arity == 2 {
            self.expect(Tok::Comma)?;
            Some(self.variable()?)
        } else {
            None
        };
        self.expect(Tok::RParen)?;
        let atom = match (name, y) {
            ("S", None) => Atom::Selected(x),
            ("H", None) => Atom::Highlighted(x),
            ("E", Some(y)) => Atom::Edge(x, y),
            ("SE", Some(y)) => Atom::SelectedEdge(x, y),
            ("HE", Some(y)) => Atom::HighlightedEdge(x, y),
            _ => unreachable!("arity checked above"),
        };
        Ok(Formula::Atom(atom))
    }
}

/// Parses a sentence. Positions in errors are byte offsets into `text`.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(syntax(
            p.offset(),
            format!("unexpected {} after formula", p.peek().describe()),
        ));
    }
    let free = f.free_variables();
    if !free.is_empty() {
        return Err(ParseError::Unbound(free.into_iter().collect()));
    }
    Ok(f)
}
