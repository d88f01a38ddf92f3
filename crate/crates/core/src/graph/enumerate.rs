use super::{Edge, Graph, NodeId, ProblemInstance};

/// Whether enumerated instances carry a budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arity {
    GraphOnly,
    GraphAndBudget,
}

/// Candidate node pairs on `n` nodes in lexicographic order. Bit `i` of an
/// edge mask selects `pair_list(n, directed)[i]`.
pub fn pair_list(n: usize, directed: bool) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && (directed || i < j) {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

pub(crate) fn enumerated_name(i: usize) -> NodeId {
    NodeId(format!("v{}", i + 1))
}

/// Labeled graph on `v1..vn` whose edges are the pairs selected by `mask`.
pub fn graph_from_mask(n: usize, directed: bool, mask: u64) -> Graph {
    let names: Vec<NodeId> = (0..n).map(enumerated_name).collect();
    let mut g = Graph::new(directed);
    g.nodes = names.iter().cloned().collect();
    for (bit, &(i, j)) in pair_list(n, directed).iter().enumerate() {
        if mask >> bit & 1 == 1 {
            g.edges
                .insert(Edge(names[i].clone(), names[j].clone()).canonical(directed));
        }
    }
    g
}

/// Stream of every labeled instance up to `max_nodes` nodes.
///
/// Order: ascending node count, then edge masks ascending, then budget
/// ascending over `0..=n` (for [`Arity::GraphAndBudget`]).
pub fn enumerate_instances(arity: Arity, directed: bool, max_nodes: usize) -> InstanceIter {
    InstanceIter {
        arity,
        directed,
        max_nodes,
        n: 1,
        mask: 0,
        budget: 0,
        current: None,
    }
}

pub struct InstanceIter {
    arity: Arity,
    directed: bool,
    max_nodes: usize,
    n: usize,
    mask: u64,
    budget: u64,
    current: Option<Graph>,
}

impl Iterator for InstanceIter {
    type Item = ProblemInstance;

    fn next(&mut self) -> Option<ProblemInstance> {
        loop {
            if self.n > self.max_nodes {
                return None;
            }
            let pairs = pair_list(self.n, self.directed).len();
            if pairs >= 64 {
                // masks would not fit; such sizes are far beyond any oracle bound
                return None;
            }
            if self.mask >= 1u64 << pairs {
                self.n += 1;
                self.mask = 0;
                continue;
            }
            let graph = self
                .current
                .get_or_insert_with(|| graph_from_mask(self.n, self.directed, self.mask))
                .clone();
            match self.arity {
                Arity::GraphOnly => {
                    self.current = None;
                    self.mask += 1;
                    return Some(ProblemInstance::new(graph, None));
                }
                Arity::GraphAndBudget => {
                    let k = self.budget;
                    if k as usize >= self.n {
                        self.budget = 0;
                        self.current = None;
                        self.mask += 1;
                    } else {
                        self.budget += 1;
                    }
                    return Some(ProblemInstance::new(graph, Some(k)));
                }
            }
        }
    }
}
