//! Finite graphs with named nodes and selection/highlighting marks.
//!
//! A [`Graph`] is the exchange object of the whole engine: students submit
//! them, constraints and formulas inspect them, reductions produce them and
//! the verifier enumerates them. Nodes are identified by name and kept in
//! lexicographic order, which makes the canonical JSON form a pure function
//! of the value.

mod dot;
mod enumerate;
mod iso;
mod json;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{enumerate_instances, graph_from_mask, pair_list, Arity, InstanceIter};
pub use iso::{isomorphic, Bijection};
pub use json::parse_graph;
pub(crate) use enumerate::enumerated_name;

/// Name of a node. Never empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(name: impl Into<String>) -> Result<Self, GraphError> {
        let name = name.into();
        if name.is_empty() {
            return Err(GraphError::EmptyNodeId);
        }
        Ok(NodeId(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::borrow::Borrow<str> for NodeId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl From<&str> for NodeId {
    /// Panics on the empty string; use [`NodeId::new`] for untrusted input.
    fn from(s: &str) -> Self {
        NodeId::new(s).expect("node ids are nonempty")
    }
}

/// An edge `(from, to)`. Undirected edges are stored with `from < to`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge(pub NodeId, pub NodeId);

impl Edge {
    pub fn new(from: impl Into<NodeId>, to: impl Into<NodeId>) -> Self {
        Edge(from.into(), to.into())
    }

    fn canonical(self, directed: bool) -> Self {
        if !directed && self.1 < self.0 {
            Edge(self.1, self.0)
        } else {
            self
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("node ids must be nonempty")]
    EmptyNodeId,
    #[error("duplicate node {0}")]
    DuplicateNode(String),
    #[error("undeclared endpoint {0}")]
    UndeclaredEndpoint(String),
    #[error("self-loop on {0}")]
    SelfLoop(String),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(String, String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("{set} entry ({from}, {to}) is not an edge of the graph")]
    MarkedNonEdge {
        set: &'static str,
        from: String,
        to: String,
    },
    #[error("duplicate entry {entry} in {set}")]
    DuplicateMark { set: &'static str, entry: String },
    #[error("graphs differ in directedness")]
    DirectednessMismatch,
}

/// Which marking relation a node or edge set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Mark {
    Selected,
    Highlighted,
}

/// Finite simple graph, directed or undirected, with marked nodes and edges.
///
/// Invariants (enforced by every constructor and mutator): endpoints are
/// declared nodes, there are no self-loops or duplicate edges, undirected
/// edges are stored in canonical orientation, and marks are subsets of the
/// nodes/edges they mark.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    directed: bool,
    nodes: BTreeSet<NodeId>,
    edges: BTreeSet<Edge>,
    selected_nodes: BTreeSet<NodeId>,
    highlighted_nodes: BTreeSet<NodeId>,
    selected_edges: BTreeSet<Edge>,
    highlighted_edges: BTreeSet<Edge>,
}

impl Graph {
    pub fn new(directed: bool) -> Self {
        Graph {
            directed,
            nodes: BTreeSet::new(),
            edges: BTreeSet::new(),
            selected_nodes: BTreeSet::new(),
            highlighted_nodes: BTreeSet::new(),
            selected_edges: BTreeSet::new(),
            highlighted_edges: BTreeSet::new(),
        }
    }

    /// Builds an unmarked graph from node names and edge pairs.
    pub fn from_parts<'a>(
        directed: bool,
        nodes: impl IntoIterator<Item = &'a str>,
        edges: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::new(directed);
        for n in nodes {
            g.add_node(NodeId::new(n)?)?;
        }
        for (a, b) in edges {
            g.add_edge(NodeId::new(a)?, NodeId::new(b)?)?;
        }
        Ok(g)
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn marked_nodes(&self, mark: Mark) -> &BTreeSet<NodeId> {
        match mark {
            Mark::Selected => &self.selected_nodes,
            Mark::Highlighted => &self.highlighted_nodes,
        }
    }

    pub fn marked_edges(&self, mark: Mark) -> &BTreeSet<Edge> {
        match mark {
            Mark::Selected => &self.selected_edges,
            Mark::Highlighted => &self.highlighted_edges,
        }
    }

    pub fn selected_nodes(&self) -> &BTreeSet<NodeId> {
        &self.selected_nodes
    }

    pub fn highlighted_nodes(&self) -> &BTreeSet<NodeId> {
        &self.highlighted_nodes
    }

    pub fn selected_edges(&self) -> &BTreeSet<Edge> {
        &self.selected_edges
    }

    pub fn highlighted_edges(&self) -> &BTreeSet<Edge> {
        &self.highlighted_edges
    }

    pub fn contains_node(&self, id: &str) -> bool {
        self.nodes.contains(id)
    }

    pub fn add_node(&mut self, id: NodeId) -> Result<(), GraphError> {
        if !self.nodes.insert(id.clone()) {
            return Err(GraphError::DuplicateNode(id.0));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, from: NodeId, to: NodeId) -> Result<(), GraphError> {
        let edge = self.checked_edge(from, to)?;
        if self.edges.contains(&edge) {
            return Err(GraphError::DuplicateEdge(edge.0 .0, edge.1 .0));
        }
        self.edges.insert(edge);
        Ok(())
    }

    /// Adds an edge unless it is already present. Returns whether it was new.
    pub fn insert_edge(&mut self, from: NodeId, to: NodeId) -> Result<bool, GraphError> {
        let edge = self.checked_edge(from, to)?;
        Ok(self.edges.insert(edge))
    }

    fn checked_edge(&self, from: NodeId, to: NodeId) -> Result<Edge, GraphError> {
        for end in [&from, &to] {
            if !self.nodes.contains(end) {
                return Err(GraphError::UndeclaredEndpoint(end.0.clone()));
            }
        }
        if from == to {
            return Err(GraphError::SelfLoop(from.0));
        }
        Ok(Edge(from, to).canonical(self.directed))
    }

    pub fn mark_node(&mut self, mark: Mark, id: &str) -> Result<(), GraphError> {
        let id = self
            .nodes
            .get(id)
            .cloned()
            .ok_or_else(|| GraphError::UnknownNode(id.to_string()))?;
        match mark {
            Mark::Selected => self.selected_nodes.insert(id),
            Mark::Highlighted => self.highlighted_nodes.insert(id),
        };
        Ok(())
    }

    pub fn mark_edge(&mut self, mark: Mark, from: &str, to: &str) -> Result<(), GraphError> {
        let edge = self.find_edge(from, to).ok_or_else(|| GraphError::MarkedNonEdge {
            set: mark_edge_set_name(mark),
            from: from.to_string(),
            to: to.to_string(),
        })?;
        match mark {
            Mark::Selected => self.selected_edges.insert(edge),
            Mark::Highlighted => self.highlighted_edges.insert(edge),
        };
        Ok(())
    }

    /// Drops every selection and highlighting.
    pub fn clear_marks(&mut self) {
        self.selected_nodes.clear();
        self.highlighted_nodes.clear();
        self.selected_edges.clear();
        self.highlighted_edges.clear();
    }

    /// Copy of the graph without marks.
    pub fn unmarked(&self) -> Graph {
        let mut g = self.clone();
        g.clear_marks();
        g
    }

    /// Same nodes and edges (marks ignored).
    pub fn same_structure(&self, other: &Graph) -> bool {
        self.directed == other.directed && self.nodes == other.nodes && self.edges == other.edges
    }

    fn find_edge(&self, from: &str, to: &str) -> Option<Edge> {
        let (a, b) = if !self.directed && to < from {
            (to, from)
        } else {
            (from, to)
        };
        let probe = Edge(NodeId(a.to_string()), NodeId(b.to_string()));
        self.edges.get(&probe).cloned()
    }

    /// Whether `from -> to` is an edge; direction is ignored for undirected graphs.
    pub fn has_edge(&self, from: &str, to: &str) -> bool {
        from != to && self.find_edge(from, to).is_some()
    }

    pub fn edge_is_marked(&self, mark: Mark, from: &str, to: &str) -> bool {
        match self.find_edge(from, to) {
            Some(e) => self.marked_edges(mark).contains(&e),
            None => false,
        }
    }

    /// Neighbors of `id` (successors for directed graphs).
    pub fn neighbors<'a>(&'a self, id: &'a str) -> impl Iterator<Item = &'a NodeId> + 'a {
        self.edges.iter().filter_map(move |Edge(a, b)| {
            if a.as_str() == id {
                Some(b)
            } else if !self.directed && b.as_str() == id {
                Some(a)
            } else {
                None
            }
        })
    }

    /// Position of every node in lexicographic order.
    pub fn node_index(&self) -> BTreeMap<&NodeId, usize> {
        self.nodes.iter().enumerate().map(|(i, n)| (n, i)).collect()
    }

    /// Complement graph on the same nodes (marks dropped).
    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.directed);
        g.nodes = self.nodes.clone();
        for a in &self.nodes {
            for b in &self.nodes {
                if a == b || (!self.directed && b < a) {
                    continue;
                }
                if !self.has_edge(a.as_str(), b.as_str()) {
                    g.edges.insert(Edge(a.clone(), b.clone()));
                }
            }
        }
        g
    }

    /// Whether the graph has no cycle.
    ///
    /// Undirected: a forest, i.e. `|E| = |V| - #components`. Directed: no
    /// directed cycle (2-cycles `u -> v -> u` count).
    pub fn is_acyclic(&self) -> bool {
        if self.directed {
            self.is_dag()
        } else {
            self.edges.len() + self.component_count() == self.nodes.len()
        }
    }

    fn component_count(&self) -> usize {
        let index = self.node_index();
        let mut parent: Vec<usize> = (0..self.nodes.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = self.nodes.len();
        for Edge(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, index[a]), find(&mut parent, index[b]));
            if ra != rb {
                parent[ra] = rb;
                components -= 1;
            }
        }
        components
    }

    fn is_dag(&self) -> bool {
        let index = self.node_index();
        let n = self.nodes.len();
        let mut indegree = vec![0usize; n];
        let mut succ = vec![Vec::new(); n];
        for Edge(a, b) in &self.edges {
            succ[index[a]].push(index[b]);
            indegree[index[b]] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &succ[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push(w);
                }
            }
        }
        seen == n
    }

    /// Induced subgraph on `nodes \ victims`; marks are restricted accordingly.
    pub fn remove_nodes<'a>(
        &self,
        victims: impl IntoIterator<Item = &'a str>,
    ) -> Result<Graph, GraphError> {
        let mut gone = BTreeSet::new();
        for v in victims {
            if !self.nodes.contains(v) {
                return Err(GraphError::UnknownNode(v.to_string()));
            }
            gone.insert(v);
        }
        let keep_node = |n: &NodeId| !gone.contains(n.as_str());
        let keep_edge = |e: &Edge| keep_node(&e.0) && keep_node(&e.1);
        Ok(Graph {
            directed: self.directed,
            nodes: self.nodes.iter().filter(|n| keep_node(n)).cloned().collect(),
            edges: self.edges.iter().filter(|e| keep_edge(e)).cloned().collect(),
            selected_nodes: self.selected_nodes.iter().filter(|n| keep_node(n)).cloned().collect(),
            highlighted_nodes: self
                .highlighted_nodes
                .iter()
                .filter(|n| keep_node(n))
                .cloned()
                .collect(),
            selected_edges: self.selected_edges.iter().filter(|e| keep_edge(e)).cloned().collect(),
            highlighted_edges: self
                .highlighted_edges
                .iter()
                .filter(|e| keep_edge(e))
                .cloned()
                .collect(),
        })
    }

    /// Canonical compact JSON: sorted nodes and edges, empty mark sets omitted.
    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization is infallible")
    }

    pub fn to_dot(&self) -> String {
        dot::render(self)
    }
}

fn mark_edge_set_name(mark: Mark) -> &'static str {
    match mark {
        Mark::Selected => "selectedEdges",
        Mark::Highlighted => "highlightedEdges",
    }
}

/// A graph together with the optional budget `k` of a parameterized problem.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInstance {
    pub graph: Graph,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

impl ProblemInstance {
    pub fn new(graph: Graph, budget: Option<u64>) -> Self {
        ProblemInstance { graph, budget }
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("instance serialization is infallible")
    }
}
