//! Exact solvers over bitmask graphs.
//!
//! The bounded-search verifier decides hundreds of thousands of small target
//! instances; these branch-and-bound routines do that without materializing
//! named graphs. They are exact, but unlike [`crate::problems::decide`] they
//! make no promise about which optimal solution they return.

use crate::graph::{Graph, NodeId};

pub type Mask = u128;

/// Largest graph the kernel handles.
pub const MAX_NODES: usize = 128;

#[inline]
fn bit(v: usize) -> Mask {
    1 << v
}

#[inline]
fn count(m: Mask) -> usize {
    m.count_ones() as usize
}

fn iter(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitGraph {
    pub n: usize,
    pub directed: bool,
    /// Successors (neighbors when undirected).
    pub out: Vec<Mask>,
    /// Predecessors (equal to `out` when undirected).
    pub inc: Vec<Mask>,
}

impl BitGraph {
    pub fn new(n: usize, directed: bool) -> Self {
        assert!(n <= MAX_NODES, "bitmask graphs hold at most {MAX_NODES} nodes");
        BitGraph {
            n,
            directed,
            out: vec![0; n],
            inc: vec![0; n],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        self.out[a] |= bit(b);
        self.inc[b] |= bit(a);
        if !self.directed {
            self.out[b] |= bit(a);
            self.inc[a] |= bit(b);
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.out[a] & bit(b) != 0
    }

    pub fn all(&self) -> Mask {
        if self.n == MAX_NODES {
            Mask::MAX
        } else {
            bit(self.n) - 1
        }
    }

    /// Index-based copy of `g`; node `i` is the `i`-th name in order.
    /// Returns `None` if `g` has more than [`MAX_NODES`] nodes.
    pub fn from_graph(g: &Graph) -> Option<(BitGraph, Vec<NodeId>)> {
        if g.node_count() > MAX_NODES {
            return None;
        }
        let index = g.node_index();
        let mut b = BitGraph::new(g.node_count(), g.is_directed());
        for e in g.edges() {
            b.add_edge(index[&e.0], index[&e.1]);
        }
        Some((b, g.nodes().iter().cloned().collect()))
    }

    pub fn complement(&self) -> BitGraph {
        let mut c = BitGraph::new(self.n, self.directed);
        let all = self.all();
        for v in 0..self.n {
            c.out[v] = all & !self.out[v] & !bit(v);
            c.inc[v] = all & !self.inc[v] & !bit(v);
        }
        c
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = self.out.iter().map(|&m| count(m)).sum();
        if self.directed {
            total
        } else {
            total / 2
        }
    }
}

/// Names of the nodes in `m`, in index order.
pub fn mask_to_names(m: Mask, names: &[NodeId]) -> Vec<NodeId> {
    iter(m).map(|i| names[i].clone()).collect()
}

pub fn mask_len(m: Mask) -> usize {
    count(m)
}

// ---------------------------------------------------------------------------
// Vertex cover

/// A minimum vertex cover of an undirected graph, if one of size `<= cap` exists.
pub fn min_vertex_cover(g: &BitGraph, cap: usize) -> Option<Mask> {
    (0..=cap).find_map(|b| vc_search(g, g.all(), b))
}

fn vc_search(g: &BitGraph, alive: Mask, budget: usize) -> Option<Mask> {
    // pick the alive vertex of maximum alive degree
    let mut best = None;
    let mut best_deg = 0;
    for v in iter(alive) {
        let d = count(g.out[v] & alive);
        if d > best_deg {
            best_deg = d;
            best = Some(v);
        }
        if d == 1 {
            // its neighbor is always safe to take
            let w = (g.out[v] & alive).trailing_zeros() as usize;
            if budget == 0 {
                return None;
            }
            return vc_search(g, alive & !bit(w), budget - 1).map(|s| s | bit(w));
        }
    }
    let Some(v) = best else {
        return Some(0);
    };
    if budget == 0 {
        return None;
    }
    // edges left exceed what `budget` vertices of degree <= best_deg can cover
    let edges: usize = iter(alive).map(|u| count(g.out[u] & alive)).sum::<usize>() / 2;
    if edges > budget * best_deg {
        return None;
    }
    if let Some(s) = vc_search(g, alive & !bit(v), budget - 1) {
        return Some(s | bit(v));
    }
    let nbrs = g.out[v] & alive;
    let k = count(nbrs);
    if k <= budget {
        if let Some(s) = vc_search(g, alive & !nbrs & !bit(v), budget - k) {
            return Some(s | nbrs);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Dominating set

/// A minimum dominating set of an undirected graph, if one of size `<= cap` exists.
pub fn min_dominating_set(g: &BitGraph, cap: usize) -> Option<Mask> {
    let closed: Vec<Mask> = (0..g.n).map(|v| g.out[v] | bit(v)).collect();
    let max_cover = closed.iter().map(|&m| count(m)).max().unwrap_or(0);
    (0..=cap).find_map(|b| ds_search(&closed, max_cover, g.all(), 0, b))
}

fn ds_search(closed: &[Mask], max_cover: usize, undominated: Mask, chosen: Mask, budget: usize) -> Option<Mask> {
    if undominated == 0 {
        return Some(chosen);
    }
    if budget == 0 || count(undominated) > budget * max_cover {
        return None;
    }
    // the undominated vertex with the fewest possible dominators
    let u = iter(undominated)
        .min_by_key(|&u| count(closed[u]))
        .expect("nonempty");
    let mut options: Vec<usize> = iter(closed[u]).collect();
    options.sort_by_key(|&w| std::cmp::Reverse(count(closed[w] & undominated)));
    for w in options {
        if let Some(s) = ds_search(closed, max_cover, undominated & !closed[w], chosen | bit(w), budget - 1) {
            return Some(s);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Feedback vertex set (undirected)

/// Strips vertices of degree at most one until none remain. What is left is
/// empty iff the alive subgraph is a forest.
fn two_core(g: &BitGraph, mut alive: Mask) -> Mask {
    loop {
        let mut changed = false;
        for v in iter(alive) {
            if count(g.out[v] & alive) <= 1 {
                alive &= !bit(v);
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

pub fn is_forest(g: &BitGraph, alive: Mask) -> bool {
    two_core(g, alive) == 0
}

/// Shortest cycle in the alive subgraph, via BFS from every vertex.
fn shortest_cycle(g: &BitGraph, alive: Mask) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    let mut parent = vec![usize::MAX; g.n];
    let mut depth = vec![usize::MAX; g.n];
    for root in iter(alive) {
        for v in iter(alive) {
            parent[v] = usize::MAX;
            depth[v] = usize::MAX;
        }
        depth[root] = 0;
        let mut frontier = vec![root];
        let mut found: Option<(usize, usize)> = None;
        'bfs: while !frontier.is_empty() {
            let mut next = Vec::new();
            for &v in &frontier {
                for w in iter(g.out[v] & alive) {
                    if w == parent[v] {
                        continue;
                    }
                    if depth[w] == usize::MAX {
                        depth[w] = depth[v] + 1;
                        parent[w] = v;
                        next.push(w);
                    } else {
                        found = Some((v, w));
                        break 'bfs;
                    }
                }
            }
            frontier = next;
        }
        if let Some((a, b)) = found {
            // walk both ends up to their common ancestor
            let (mut x, mut y) = (a, b);
            let mut left = vec![x];
            let mut right = vec![y];
            while x != y {
                if depth[x] >= depth[y] {
                    x = parent[x];
                    left.push(x);
                } else {
                    y = parent[y];
                    right.push(y);
                }
            }
            right.pop();
            right.reverse();
            left.extend(right);
            let cycle = left;
            if best.as_ref().map_or(true, |c| cycle.len() < c.len()) {
                let done = cycle.len() == 3;
                best = Some(cycle);
                if done {
                    break;
                }
            }
        }
    }
    best
}

/// A minimum feedback vertex set of an undirected graph, if one of size
/// `<= cap` exists.
///
/// Works on a multigraph view: degree-2 vertices are bypassed, which may
/// create double edges (2-cycles), and a vertex whose only neighbor is
/// doubly attached forces that neighbor into the solution.
pub fn min_feedback_vertex_set(g: &BitGraph, cap: usize) -> Option<Mask> {
    let start = Multi {
        adj: (0..g.n).map(|v| g.out[v]).collect(),
        dbl: vec![0; g.n],
        alive: g.all(),
    };
    (0..=cap).find_map(|b| fvs_search(start.clone(), b))
}

#[derive(Clone)]
struct Multi {
    adj: Vec<Mask>,
    /// Pairs joined by at least two parallel edges; a subset of `adj`.
    dbl: Vec<Mask>,
    alive: Mask,
}

impl Multi {
    fn degree(&self, v: usize) -> usize {
        count(self.adj[v]) + count(self.dbl[v])
    }

    fn delete(&mut self, v: usize) {
        for w in iter(self.adj[v]) {
            self.adj[w] &= !bit(v);
            self.dbl[w] &= !bit(v);
        }
        self.adj[v] = 0;
        self.dbl[v] = 0;
        self.alive &= !bit(v);
    }

    /// Applies the reduction rules; returns the forced vertices, or `None`
    /// when they exceed `budget`.
    fn reduce(&mut self, budget: &mut usize) -> Option<Mask> {
        let mut forced = 0;
        let mut changed = true;
        while changed {
            changed = false;
            for v in iter(self.alive) {
                if self.alive & bit(v) == 0 {
                    continue;
                }
                match self.degree(v) {
                    0 | 1 => self.delete(v),
                    2 if self.dbl[v] != 0 => {
                        let a = self.dbl[v].trailing_zeros() as usize;
                        if *budget == 0 {
                            return None;
                        }
                        *budget -= 1;
                        forced |= bit(a);
                        self.delete(a);
                        self.delete(v);
                    }
                    2 => {
                        let a = self.adj[v].trailing_zeros() as usize;
                        let b = (self.adj[v] & !bit(a)).trailing_zeros() as usize;
                        self.delete(v);
                        if self.adj[a] & bit(b) != 0 {
                            self.dbl[a] |= bit(b);
                            self.dbl[b] |= bit(a);
                        } else {
                            self.adj[a] |= bit(b);
                            self.adj[b] |= bit(a);
                        }
                    }
                    _ => continue,
                }
                changed = true;
            }
        }
        Some(forced)
    }
}

fn fvs_search(mut m: Multi, mut budget: usize) -> Option<Mask> {
    let forced = m.reduce(&mut budget)?;
    if m.alive == 0 {
        return Some(forced);
    }
    if budget == 0 {
        return None;
    }
    // removing one vertex of degree d lowers |E| - |V| + 1 by at most d - 1
    let degrees: Vec<usize> = iter(m.alive).map(|v| m.degree(v)).collect();
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    let edges = degrees.iter().sum::<usize>() / 2;
    let excess = (edges + 1).saturating_sub(count(m.alive));
    if excess > budget * (max_deg - 1) {
        return None;
    }
    let branch: Vec<usize> = match iter(m.alive).find(|&v| m.dbl[v] != 0) {
        Some(a) => vec![a, m.dbl[a].trailing_zeros() as usize],
        None => {
            let simple = BitGraph {
                n: m.adj.len(),
                directed: false,
                out: m.adj.clone(),
                inc: Vec::new(),
            };
            shortest_cycle(&simple, m.alive).expect("min degree 3 implies a cycle")
        }
    };
    for v in branch {
        let mut next = m.clone();
        next.delete(v);
        if let Some(s) = fvs_search(next, budget - 1) {
            return Some(forced | s | bit(v));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Clique / independent set

/// A maximum clique (Bron-Kerbosch with pivoting).
pub fn max_clique(g: &BitGraph) -> Mask {
    let mut best = 0;
    bron_kerbosch(g, 0, g.all(), 0, &mut best);
    best
}

fn bron_kerbosch(g: &BitGraph, r: Mask, mut p: Mask, mut x: Mask, best: &mut Mask) {
    if p == 0 {
        if x == 0 && count(r) > count(*best) {
            *best = r;
        }
        return;
    }
    if count(r) + count(p) <= count(*best) {
        return;
    }
    let pivot = iter(p | x).max_by_key(|&u| count(g.out[u] & p)).expect("nonempty");
    for v in iter(p & !g.out[pivot]) {
        bron_kerbosch(g, r | bit(v), p & g.out[v], x & g.out[v], best);
        p &= !bit(v);
        x |= bit(v);
    }
}

pub fn max_independent_set(g: &BitGraph) -> Mask {
    max_clique(&g.complement())
}

// ---------------------------------------------------------------------------
// Hamiltonian cycles

/// A Hamiltonian cycle as a vertex order starting at vertex 0. Graphs with
/// fewer than three vertices have none.
pub fn hamiltonian_cycle(g: &BitGraph) -> Option<Vec<usize>> {
    if g.n < 3 {
        return None;
    }
    let all = g.all();
    for v in 0..g.n {
        let ok = if g.directed {
            g.out[v] != 0 && g.inc[v] != 0
        } else {
            count(g.out[v]) >= 2
        };
        if !ok {
            return None;
        }
    }
    let mut path = vec![0];
    if ham_extend(g, all & !1, 0, &mut path) {
        Some(path)
    } else {
        None
    }
}

fn ham_extend(g: &BitGraph, unvisited: Mask, cur: usize, path: &mut Vec<usize>) -> bool {
    if unvisited == 0 {
        return g.has_edge(cur, 0);
    }
    // every unvisited vertex must still be enterable and leavable
    for w in iter(unvisited) {
        if g.directed {
            if g.inc[w] & (unvisited | bit(cur)) == 0 || g.out[w] & (unvisited | 1) == 0 {
                return false;
            }
        } else {
            let avail = g.out[w] & (unvisited | bit(cur) | 1);
            if count(avail) < 2 && !(count(unvisited) == 1 && avail == (bit(cur) | 1)) {
                return false;
            }
        }
    }
    for w in iter(g.out[cur] & unvisited) {
        path.push(w);
        if ham_extend(g, unvisited & !bit(w), w, path) {
            return true;
        }
        path.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_edges(n: usize, directed: bool, edges: &[(usize, usize)]) -> BitGraph {
        let mut g = BitGraph::new(n, directed);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    fn cycle(n: usize) -> BitGraph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        from_edges(n, false, &e)
    }

    fn brute_min(g: &BitGraph, ok: impl Fn(Mask) -> bool) -> usize {
        (0..(1u32 << g.n))
            .filter(|&s| ok(s as Mask))
            .map(|s| s.count_ones() as usize)
            .min()
            .unwrap()
    }

    fn all_graphs(n: usize) -> impl Iterator<Item = BitGraph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (0u32..(1 << pairs.len())).map(move |m| {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(b, _)| m >> b & 1 == 1).map(|(_, &p)| p).collect();
            from_edges(n, false, &e)
        })
    }

    #[test]
    fn shortest_cycle_lengths() {
        assert_eq!(shortest_cycle(&cycle(5), cycle(5).all()).unwrap().len(), 5);
        let mut g = cycle(6);
        g.add_edge(0, 3);
        let c = shortest_cycle(&g, g.all()).unwrap();
        assert_eq!(c.len(), 4);
        for w in c.windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
        assert!(g.has_edge(c[0], *c.last().unwrap()));
    }

    #[test]
    fn subset_solvers_match_brute_force() {
        for n in 1..=6 {
            for g in all_graphs(n).step_by(if n == 6 { 7 } else { 1 }) {
                let edges: Vec<(usize, usize)> =
                    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| g.has_edge(a, b)).collect();
                let vc = brute_min(&g, |s| edges.iter().all(|&(a, b)| s & (bit(a) | bit(b)) != 0));
                let got = min_vertex_cover(&g, n).unwrap();
                assert_eq!(count(got), vc);
                assert!(min_vertex_cover(&g, vc.saturating_sub(1)).is_none() || vc == 0);

                let ds = brute_min(&g, |s| (0..n).all(|v| s & (g.out[v] | bit(v)) != 0));
                assert_eq!(count(min_dominating_set(&g, n).unwrap()), ds);

                let fvs = brute_min(&g, |s| is_forest(&g, g.all() & !s));
                let sol = min_feedback_vertex_set(&g, n).unwrap();
                assert_eq!(count(sol), fvs);
                assert!(is_forest(&g, g.all() & !sol));

                let clique = (0..(1u32 << n))
                    .filter(|&s| {
                        let s = s as Mask;
                        iter(s).all(|a| iter(s).all(|b| a == b || g.has_edge(a, b)))
                    })
                    .map(|s| s.count_ones() as usize)
                    .max()
                    .unwrap();
                assert_eq!(count(max_clique(&g)), clique);
            }
        }
    }

    #[test]
    fn hamiltonian_cycles() {
        assert!(hamiltonian_cycle(&cycle(9)).is_some());
        let mut path = cycle(5);
        path.out[0] &= !bit(4);
        path.out[4] &= !bit(0);
        assert!(hamiltonian_cycle(&path).is_none());
        let k2 = from_edges(2, false, &[(0, 1)]);
        assert!(hamiltonian_cycle(&k2).is_none());
        let directed = from_edges(3, true, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(hamiltonian_cycle(&directed), Some(vec![0, 1, 2]));
        let transitive = from_edges(3, true, &[(0, 1), (0, 2), (1, 2)]);
        assert!(hamiltonian_cycle(&transitive).is_none());
        // Petersen graph is not Hamiltonian
        let mut p = BitGraph::new(10, false);
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5);
            p.add_edge(i, i + 5);
            p.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        assert!(hamiltonian_cycle(&p).is_none());
    }

    #[test]
    fn feedback_vertex_set_on_random_larger_graphs() {
        // deterministic xorshift stream; graphs up to 11 nodes of varying density
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for round in 0..300 {
            let n = 6 + round % 6;
            let mut g = BitGraph::new(n, false);
            let density = 20 + next() % 50;
            for a in 0..n {
                for b in a + 1..n {
                    if next() % 100 < density {
                        g.add_edge(a, b);
                    }
                }
            }
            let fvs = brute_min(&g, |s| is_forest(&g, g.all() & !s));
            let sol = min_feedback_vertex_set(&g, n).unwrap();
            assert_eq!(count(sol), fvs, "round {round}");
            assert!(is_forest(&g, g.all() & !sol));
            if fvs > 0 {
                assert!(min_feedback_vertex_set(&g, fvs - 1).is_none());
            }
        }
    }
}
