//! Random sentences and graphs, and a truth oracle that enumerates
//! assignments over its own relation tables.
#![allow(dead_code)]

use gadgetlab::graph::{graph_from_mask, pair_list, Graph, Mark};
use gadgetlab::logic::{Atom, Formula};

pub const VARS: [&str; 3] = ["x", "y", "z"];

pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        // xorshift64*
        self.0 ^= self.0 >> 12;
        self.0 ^= self.0 << 25;
        self.0 ^= self.0 >> 27;
        self.0.wrapping_mul(0x2545_f491_4f6c_dd1d)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// A random sentence: atoms only mention variables bound above them.
pub fn formula(rng: &mut Rng, bound: &mut Vec<&'static str>, quantifiers: usize, size: usize) -> Formula {
    let choice = rng.below(if size == 0 { 1 } else { 8 });
    match choice {
        0 => atom(rng, bound),
        1 | 2 if quantifiers > 0 => {
            let v = VARS[rng.below(3) as usize];
            bound.push(v);
            let body = formula(rng, bound, quantifiers - 1, size - 1);
            bound.pop();
            if choice == 1 {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            }
        }
        3 => Formula::not(formula(rng, bound, quantifiers, size - 1)),
        _ => {
            let a = formula(rng, bound, quantifiers, size / 2);
            let b = formula(rng, bound, quantifiers, size / 2);
            match rng.below(4) {
                0 => Formula::and(a, b),
                1 => Formula::or(a, b),
                2 => Formula::implies(a, b),
                _ => Formula::iff(a, b),
            }
        }
    }
}

fn atom(rng: &mut Rng, bound: &[&'static str]) -> Formula {
    if bound.is_empty() {
        return Formula::Atom(if rng.below(2) == 0 { Atom::True } else { Atom::False });
    }
    let kind = rng.below(8);
    let mut var = || bound[rng.below(bound.len() as u64) as usize].to_string();
    let a = match kind {
        0 | 1 => Atom::Edge(var(), var()),
        2 => Atom::Selected(var()),
        3 => Atom::Highlighted(var()),
        4 => Atom::SelectedEdge(var(), var()),
        5 => Atom::HighlightedEdge(var(), var()),
        6 => Atom::Eq(var(), var()),
        _ => Atom::True,
    };
    Formula::Atom(a)
}

pub fn graph(rng: &mut Rng) -> Graph {
    let n = rng.below(5) as usize;
    let directed = rng.below(2) == 0;
    let width = pair_list(n, directed).len();
    let mut g = graph_from_mask(n, directed, rng.next() & ((1u64 << width) - 1));
    let names: Vec<String> = g.nodes().iter().map(|v| v.to_string()).collect();
    for v in &names {
        if rng.below(2) == 0 {
            g.mark_node(Mark::Selected, v).unwrap();
        }
        if rng.below(3) == 0 {
            g.mark_node(Mark::Highlighted, v).unwrap();
        }
    }
    let edges: Vec<(String, String)> = g.edges().iter().map(|e| (e.0.to_string(), e.1.to_string())).collect();
    for (a, b) in &edges {
        if rng.below(2) == 0 {
            g.mark_edge(Mark::Selected, a, b).unwrap();
        }
        if rng.below(3) == 0 {
            g.mark_edge(Mark::Highlighted, a, b).unwrap();
        }
    }
    g
}

/// Tables of the graph's relations over node indices.
struct Tables {
    n: usize,
    edge: Vec<Vec<bool>>,
    sel_edge: Vec<Vec<bool>>,
    hl_edge: Vec<Vec<bool>>,
    sel: Vec<bool>,
    hl: Vec<bool>,
}

fn tables(g: &Graph) -> Tables {
    let names: Vec<&str> = g.nodes().iter().map(|v| v.as_str()).collect();
    let n = names.len();
    let rel = |f: &dyn Fn(&str, &str) -> bool| {
        (0..n).map(|i| (0..n).map(|j| f(names[i], names[j])).collect()).collect()
    };
    Tables {
        n,
        edge: rel(&|a, b| g.has_edge(a, b)),
        sel_edge: rel(&|a, b| a != b && g.edge_is_marked(Mark::Selected, a, b)),
        hl_edge: rel(&|a, b| a != b && g.edge_is_marked(Mark::Highlighted, a, b)),
        sel: names.iter().map(|v| g.selected_nodes().contains(*v)).collect(),
        hl: names.iter().map(|v| g.highlighted_nodes().contains(*v)).collect(),
    }
}

/// Truth under one total assignment of `x`, `y`, `z`; quantifiers rerun the
/// formula under every reassignment of their variable.
fn oracle(f: &Formula, t: &Tables, assignment: [usize; 3]) -> bool {
    let val = |v: &str| assignment[VARS.iter().position(|w| *w == v).unwrap()];
    let reassign = |v: &str, d: usize| {
        let mut a = assignment;
        a[VARS.iter().position(|w| *w == v).unwrap()] = d;
        a
    };
    match f {
        Formula::Forall(v, b) => (0..t.n).all(|d| oracle(b, t, reassign(v, d))),
        Formula::Exists(v, b) => (0..t.n).any(|d| oracle(b, t, reassign(v, d))),
        Formula::And(a, b) => oracle(a, t, assignment) && oracle(b, t, assignment),
        Formula::Or(a, b) => oracle(a, t, assignment) || oracle(b, t, assignment),
        Formula::Implies(a, b) => !oracle(a, t, assignment) || oracle(b, t, assignment),
        Formula::Iff(a, b) => oracle(a, t, assignment) == oracle(b, t, assignment),
        Formula::Not(a) => !oracle(a, t, assignment),
        Formula::Atom(a) => match a {
            Atom::Edge(x, y) => t.edge[val(x)][val(y)],
            Atom::SelectedEdge(x, y) => t.sel_edge[val(x)][val(y)],
            Atom::HighlightedEdge(x, y) => t.hl_edge[val(x)][val(y)],
            Atom::Selected(x) => t.sel[val(x)],
            Atom::Highlighted(x) => t.hl[val(x)],
            Atom::Eq(x, y) => val(x) == val(y),
            Atom::True => true,
            Atom::False => false,
        },
    }
}

/// A sentence's truth value: the same under every assignment, so any one
/// will do; the empty universe only admits the vacuous reading.
pub fn oracle_sentence(f: &Formula, g: &Graph) -> bool {
    oracle(f, &tables(g), [0, 0, 0])
}

/// Sentences whose only atoms are `S(x)`, combined without negation.
pub fn positive(rng: &mut Rng, bound: &mut Vec<&'static str>, quantifiers: usize, size: usize) -> Formula {
    let choice = rng.below(if size == 0 { 1 } else { 5 });
    match choice {
        0 if bound.is_empty() => Formula::Atom(Atom::True),
        0 => Formula::Atom(Atom::Selected(bound[rng.below(bound.len() as u64) as usize].to_string())),
        1 | 2 if quantifiers > 0 => {
            let v = VARS[rng.below(3) as usize];
            bound.push(v);
            let body = positive(rng, bound, quantifiers - 1, size - 1);
            bound.pop();
            if choice == 1 {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            }
        }
        _ => {
            let a = positive(rng, bound, quantifiers, size / 2);
            let b = positive(rng, bound, quantifiers, size / 2);
            if rng.below(2) == 0 {
                Formula::and(a, b)
            } else {
                Formula::or(a, b)
            }
        }
    }
}
