use crate::graph::{Graph, Mark};

use super::{Atom, Formula};

/// Dense view of a graph as a finite relational structure.
struct Structure {
    n: usize,
    edge: Vec<bool>,
    sel_edge: Vec<bool>,
    hl_edge: Vec<bool>,
    sel: Vec<bool>,
    hl: Vec<bool>,
}

impl Structure {
    fn new(g: &Graph) -> Self {
        let n = g.node_count();
        let index = g.node_index();
        let mut s = Structure {
            n,
            edge: vec![false; n * n],
            sel_edge: vec![false; n * n],
            hl_edge: vec![false; n * n],
            sel: vec![false; n],
            hl: vec![false; n],
        };
        for e in g.edges() {
            let (a, b) = (index[&e.0], index[&e.1]);
            let flags = [
                (&mut s.edge, true),
                (&mut s.sel_edge, g.marked_edges(Mark::Selected).contains(e)),
                (&mut s.hl_edge, g.marked_edges(Mark::Highlighted).contains(e)),
            ];
            for (rel, on) in flags {
                if on {
                    rel[a * n + b] = true;
                    if !g.is_directed() {
                        rel[b * n + a] = true;
                    }
                }
            }
        }
        for (i, name) in g.nodes().iter().enumerate() {
            s.sel[i] = g.marked_nodes(Mark::Selected).contains(name);
            s.hl[i] = g.marked_nodes(Mark::Highlighted).contains(name);
        }
        s
    }
}

struct Env<'f> {
    bindings: Vec<(&'f str, usize)>,
}

impl<'f> Env<'f> {
    fn lookup(&self, var: &str) -> Option<usize> {
        self.bindings
            .iter()
            .rev()
            .find(|(name, _)| *name == var)
            .map(|&(_, v)| v)
    }
}

/// Model-checks a sentence on `g` by direct recursive enumeration.
///
/// Quantifiers range over the nodes of `g`; on the empty graph universals
/// are vacuously true and existentials false. `f` must be a sentence: an
/// atom mentioning an unbound variable evaluates to false.
pub fn evaluate(f: &Formula, g: &Graph) -> bool {
    debug_assert!(f.is_sentence(), "evaluate expects a sentence: {f}");
    let s = Structure::new(g);
    let mut env = Env { bindings: Vec::new() };
    eval(f, &s, &mut env)
}

fn eval<'f>(f: &'f Formula, s: &Structure, env: &mut Env<'f>) -> bool {
    match f {
        Formula::Forall(v, body) => (0..s.n).all(|d| {
            env.bindings.push((v, d));
            let r = eval(body, s, env);
            env.bindings.pop();
            r
        }),
        Formula::Exists(v, body) => (0..s.n).any(|d| {
            env.bindings.push((v, d));
            let r = eval(body, s, env);
            env.bindings.pop();
            r
        }),
        Formula::And(a, b) => eval(a, s, env) && eval(b, s, env),
        Formula::Or(a, b) => eval(a, s, env) || eval(b, s, env),
        Formula::Implies(a, b) => !eval(a, s, env) || eval(b, s, env),
        Formula::Iff(a, b) => eval(a, s, env) == eval(b, s, env),
        Formula::Not(a) => !eval(a, s, env),
        Formula::Atom(atom) => atom_holds(atom, s, env).unwrap_or(false),
    }
}

fn atom_holds(atom: &Atom, s: &Structure, env: &Env<'_>) -> Option<bool> {
    let pair = |rel: &[bool], x: &str, y: &str| -> Option<bool> {
        Some(rel[env.lookup(x)? * s.n + env.lookup(y)?])
    };
    match atom {
        Atom::True => Some(true),
        Atom::False => Some(false),
        Atom::Edge(x, y) => pair(&s.edge, x, y),
        Atom::SelectedEdge(x, y) => pair(&s.sel_edge, x, y),
        Atom::HighlightedEdge(x, y) => pair(&s.hl_edge, x, y),
        Atom::Selected(x) => Some(s.sel[env.lookup(x)?]),
        Atom::Highlighted(x) => Some(s.hl[env.lookup(x)?]),
        Atom::Eq(x, y) => Some(env.lookup(x)? == env.lookup(y)?),
    }
}
