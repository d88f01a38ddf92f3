//! Brute-force answers for the graph problems, written against plain
//! adjacency bitmasks so they share nothing with the library's solvers.
#![allow(dead_code)]

use gadgetlab::graph::{Graph, NodeId, ProblemInstance};
use gadgetlab::problems::ProblemId;

pub struct Adj {
    pub n: usize,
    pub directed: bool,
    /// `out[i]` has bit `j` set when there is an edge from `i` to `j`.
    pub out: Vec<u32>,
    pub names: Vec<NodeId>,
}

impl Adj {
    pub fn new(g: &Graph) -> Adj {
        let names: Vec<NodeId> = g.nodes().iter().cloned().collect();
        let n = names.len();
        let mut out = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && g.has_edge(names[i].as_str(), names[j].as_str()) {
                    out[i] |= 1 << j;
                }
            }
        }
        Adj {
            n,
            directed: g.is_directed(),
            out,
            names,
        }
    }

    fn all(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    fn edge(&self, i: usize, j: usize) -> bool {
        self.out[i] >> j & 1 == 1
    }

    pub fn mask_of<'a>(&self, set: impl IntoIterator<Item = &'a NodeId>) -> u32 {
        set.into_iter()
            .map(|v| 1u32 << self.names.iter().position(|w| w == v).expect("node of the graph"))
            .fold(0, |a, b| a | b)
    }

    pub fn names_of(&self, mask: u32) -> std::collections::BTreeSet<NodeId> {
        (0..self.n).filter(|i| mask >> i & 1 == 1).map(|i| self.names[i].clone()).collect()
    }

    /// Whether the nodes in `keep` induce an acyclic undirected graph,
    /// by repeatedly deleting nodes of degree at most one.
    fn forest(&self, mut keep: u32) -> bool {
        loop {
            let leaf = (0..self.n).find(|&i| keep >> i & 1 == 1 && (self.out[i] & keep).count_ones() <= 1);
            match leaf {
                Some(i) => keep &= !(1 << i),
                None => return keep == 0,
            }
        }
    }

    /// Whether `set` is a solution of `p` with budget `k`, sizes included.
    pub fn valid(&self, p: ProblemId, set: u32, k: u64) -> bool {
        let size = set.count_ones() as u64;
        let all = self.all();
        match p {
            ProblemId::VertexCover => {
                size <= k && (0..self.n).all(|i| set >> i & 1 == 1 || self.out[i] & !set == 0)
            }
            ProblemId::DominatingSet => {
                size <= k && (0..self.n).all(|i| set >> i & 1 == 1 || self.out[i] & set != 0)
            }
            ProblemId::FeedbackVertexSet => size <= k && self.forest(all & !set),
            ProblemId::Clique => {
                size >= k && (0..self.n).filter(|i| set >> i & 1 == 1).all(|i| set & !(self.out[i] | 1 << i) == 0)
            }
            ProblemId::IndependentSet => {
                size >= k && (0..self.n).filter(|i| set >> i & 1 == 1).all(|i| self.out[i] & set == 0)
            }
            _ => panic!("not a set problem"),
        }
    }

    /// Whether `order` (node indices) is a Hamiltonian cycle.
    pub fn ham_order(&self, order: &[usize]) -> bool {
        order.len() >= 3
            && order.len() == self.n
            && (0..order.len()).all(|i| self.edge(order[i], order[(i + 1) % order.len()]))
    }

    /// Every permutation of `0..n` starting at node 0; each cycle has a
    /// rotation among them.
    pub fn rooted_orders(&self) -> Vec<Vec<usize>> {
        fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for v in 1..n {
                if !prefix.contains(&v) {
                    prefix.push(v);
                    go(prefix, n, out);
                    prefix.pop();
                }
            }
        }
        let mut out = Vec::new();
        if self.n > 0 {
            go(&mut vec![0], self.n, &mut out);
        }
        out
    }

    pub fn answer(&self, p: ProblemId, budget: Option<u64>) -> bool {
        if p.is_cycle_problem() {
            return self.rooted_orders().iter().any(|o| self.ham_order(o));
        }
        let k = budget.expect("set problems have a budget");
        (0..=self.all()).any(|s| self.valid(p, s, k))
    }
}

pub fn answer(p: ProblemId, inst: &ProblemInstance) -> bool {
    Adj::new(&inst.graph).answer(p, inst.budget)
}

use gadgetlab::graph::{graph_from_mask, pair_list};
use gadgetlab::problems::{decide_bounded, verify_candidate, verify_cycle, Decision, Solution};
use rayon::prelude::*;

/// Budgets tried per graph: every meaningful one plus one past the end.
fn budgets(p: ProblemId, n: usize) -> Vec<Option<u64>> {
    if p.is_cycle_problem() {
        vec![None]
    } else {
        (0..=n as u64 + 1).map(Some).collect()
    }
}

/// Checks the library's `decide` and candidate checks against the oracle on
/// every labeled graph with up to `max_nodes` nodes and every budget:
/// every node set (rooted order for the cycle problems) is accepted by the
/// library exactly when the oracle accepts it, and `decide` is positive
/// exactly when some set is, returning an accepted solution. Returns the
/// number of instances checked.
pub fn cross_check(p: ProblemId, max_nodes: usize) -> Result<usize, String> {
    let directed = p.directed_input();
    let mut checked = 0;
    for n in 1..=max_nodes {
        let masks = 1u64 << pair_list(n, directed).len();
        checked += (0..masks)
            .into_par_iter()
            .map(|mask| check_graph(p, &graph_from_mask(n, directed, mask)).map_err(|e| format!("{p} n={n} mask={mask}: {e}")))
            .try_reduce(|| 0, |a, b| Ok(a + b))?;
    }
    Ok(checked)
}

fn check_graph(p: ProblemId, g: &Graph) -> Result<usize, String> {
    let adj = Adj::new(g);
    let mut checked = 0;
    for budget in budgets(p, adj.n) {
        let inst = ProblemInstance::new(g.clone(), budget);
        let decision = decide_bounded(p, &inst, 10).map_err(|e| e.to_string())?;
        let expected;
        if p.is_cycle_problem() {
            let mut any = false;
            for order in adj.rooted_orders() {
                let names: Vec<NodeId> = order.iter().map(|&i| adj.names[i].clone()).collect();
                let ours = adj.ham_order(&order);
                if verify_cycle(p, g, &names).map_err(|e| e.to_string())? != ours {
                    return Err(format!("verify_cycle disagrees on {names:?}"));
                }
                any |= ours;
            }
            expected = any;
            if let Decision::Positive { solution } = &decision {
                let Solution::Cycle(order) = solution else {
                    return Err("cycle problem returned a node set".into());
                };
                if !verify_cycle(p, g, order).map_err(|e| e.to_string())? {
                    return Err(format!("returned order {order:?} is not a cycle"));
                }
            }
        } else {
            let k = budget.expect("set problem");
            let mut any = false;
            for set in 0..1u32 << adj.n {
                let ours = adj.valid(p, set, k);
                let theirs = verify_candidate(p, &inst, &adj.names_of(set)).map_err(|e| e.to_string())?.is_valid();
                if ours != theirs {
                    return Err(format!("k={k}: verify_candidate says {theirs} on {:?}", adj.names_of(set)));
                }
                any |= ours;
            }
            expected = any;
            if let Decision::Positive { solution } = &decision {
                let Solution::Nodes(set) = solution else {
                    return Err("set problem returned a cycle".into());
                };
                if !adj.valid(p, adj.mask_of(set), k) {
                    return Err(format!("k={k}: returned solution {set:?} is not valid"));
                }
            }
        }
        if decision.is_positive() != expected {
            return Err(format!("budget {budget:?}: decide says {}", decision.is_positive()));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Clique on `g` with budget `k` agrees with IndependentSet on the
/// complement, for every graph up to `max_nodes` nodes.
pub fn complement_duality(max_nodes: usize) -> Result<usize, String> {
    let mut checked = 0;
    for n in 1..=max_nodes {
        for mask in 0..1u64 << pair_list(n, false).len() {
            let g = graph_from_mask(n, false, mask);
            let h = g.complement();
            for k in 0..=n as u64 + 1 {
                let clique = decide_bounded(ProblemId::Clique, &ProblemInstance::new(g.clone(), Some(k)), 10);
                let is = decide_bounded(ProblemId::IndependentSet, &ProblemInstance::new(h.clone(), Some(k)), 10);
                let (a, b) = (clique.map_err(|e| e.to_string())?, is.map_err(|e| e.to_string())?);
                if a.is_positive() != b.is_positive() {
                    return Err(format!("n={n} mask={mask} k={k}"));
                }
                // and the witnesses carry over
                if let Decision::Positive { solution: Solution::Nodes(s) } = a {
                    let inst = ProblemInstance::new(h.clone(), Some(k));
                    if !verify_candidate(ProblemId::IndependentSet, &inst, &s).map_err(|e| e.to_string())?.is_valid() {
                        return Err(format!("n={n} mask={mask} k={k}: clique {s:?} not independent in the complement"));
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}
