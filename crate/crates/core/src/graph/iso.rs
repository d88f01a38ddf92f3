use std::collections::BTreeMap;

use super::{Graph, GraphError, Mark, NodeId};

/// Node mapping from the first graph onto the second.
pub type Bijection = BTreeMap<NodeId, NodeId>;

struct Dense {
    n: usize,
    adj: Vec<bool>,
    sel_edge: Vec<bool>,
    hl_edge: Vec<bool>,
    out_deg: Vec<usize>,
    in_deg: Vec<usize>,
    class: Vec<u8>,
}

impl Dense {
    fn new(g: &Graph, respect_marks: bool) -> Self {
        let n = g.node_count();
        let index = g.node_index();
        let mut d = Dense {
            n,
            adj: vec![false; n * n],
            sel_edge: vec![false; n * n],
            hl_edge: vec![false; n * n],
            out_deg: vec![0; n],
            in_deg: vec![0; n],
            class: vec![0; n],
        };
        for e in g.edges() {
            let (a, b) = (index[&e.0], index[&e.1]);
            let sel = respect_marks && g.marked_edges(Mark::Selected).contains(e);
            let hl = respect_marks && g.marked_edges(Mark::Highlighted).contains(e);
            let mut put = |x: usize, y: usize| {
                d.adj[x * n + y] = true;
                d.sel_edge[x * n + y] = sel;
                d.hl_edge[x * n + y] = hl;
                d.out_deg[x] += 1;
                d.in_deg[y] += 1;
            };
            put(a, b);
            if !g.is_directed() {
                put(b, a);
            }
        }
        if respect_marks {
            for (i, name) in g.nodes().iter().enumerate() {
                let sel = g.marked_nodes(Mark::Selected).contains(name) as u8;
                let hl = g.marked_nodes(Mark::Highlighted).contains(name) as u8;
                d.class[i] = sel | (hl << 1);
            }
        }
        d
    }

    fn at(&self, m: &[bool], a: usize, b: usize) -> bool {
        m[a * self.n + b]
    }
}

/// Finds the lexicographically least isomorphism from `g1` onto `g2`.
///
/// Nodes of `g1` are assigned in name order and candidates in `g2` are tried
/// in name order, so the first complete assignment is the least one. With
/// `respect_marks`, selected/highlighted membership of nodes and edges must
/// be preserved as well.
pub fn isomorphic(g1: &Graph, g2: &Graph, respect_marks: bool) -> Result<Option<Bijection>, GraphError> {
    if g1.is_directed() != g2.is_directed() {
        return Err(GraphError::DirectednessMismatch);
    }
    if g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    if respect_marks {
        for mark in [Mark::Selected, Mark::Highlighted] {
            if g1.marked_nodes(mark).len() != g2.marked_nodes(mark).len()
                || g1.marked_edges(mark).len() != g2.marked_edges(mark).len()
            {
                return Ok(None);
            }
        }
    }
    let (d1, d2) = (Dense::new(g1, respect_marks), Dense::new(g2, respect_marks));
    let mut sig1: Vec<_> = (0..d1.n).map(|i| (d1.out_deg[i], d1.in_deg[i], d1.class[i])).collect();
    let mut sig2: Vec<_> = (0..d2.n).map(|i| (d2.out_deg[i], d2.in_deg[i], d2.class[i])).collect();
    sig1.sort_unstable();
    sig2.sort_unstable();
    if sig1 != sig2 {
        return Ok(None);
    }

    let mut map = vec![usize::MAX; d1.n];
    let mut used = vec![false; d2.n];
    if !extend(&d1, &d2, 0, &mut map, &mut used) {
        return Ok(None);
    }
    let names2: Vec<&NodeId> = g2.nodes().iter().collect();
    Ok(Some(
        g1.nodes()
            .iter()
            .zip(map)
            .map(|(a, b)| (a.clone(), names2[b].clone()))
            .collect(),
    ))
}

fn extend(d1: &Dense, d2: &Dense, v: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    if v == d1.n {
        return true;
    }
    for c in 0..d2.n {
        if used[c]
            || d1.out_deg[v] != d2.out_deg[c]
            || d1.in_deg[v] != d2.in_deg[c]
            || d1.class[v] != d2.class[c]
        {
            continue;
        }
        let consistent = (0..v).all(|p| {
            let q = map[p];
            [(p, v, q, c), (v, p, c, q)].iter().all(|&(a, b, x, y)| {
                d1.at(&d1.adj, a, b) == d2.at(&d2.adj, x, y)
                    && d1.at(&d1.sel_edge, a, b) == d2.at(&d2.sel_edge, x, y)
                    && d1.at(&d1.hl_edge, a, b) == d2.at(&d2.hl_edge, x, y)
            })
        });
        if !consistent {
            continue;
        }
        map[v] = c;
        used[c] = true;
        if extend(d1, d2, v + 1, map, used) {
            return true;
        }
        used[c] = false;
    }
    map[v] = usize::MAX;
    false
}
