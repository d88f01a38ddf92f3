//! Gadget reductions: edge (and non-edge) gadgets, node gadgets and global
//! gadgets, applied deterministically to source instances.
//!
//! Fresh target nodes are named `g@u|v` (edge family, pair `u < v`), `g@v`
//! (node family) and `g@global` (global family), where `g` is the gadget
//! node. A fresh name that clashes with another target node is rejected.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, NodeId, ProblemInstance};
use crate::problems::{check_instance, verify_candidate, CandidateCheck, ProblemError, ProblemId, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid gadget: {0}")]
    InvalidGadget(String),
    #[error("invalid reduction: {0}")]
    InvalidSpec(String),
    #[error("fresh node name {0} collides with an existing node")]
    NameCollision(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error("source solution is invalid: {0}")]
    InvalidSourceSolution(Witness),
    #[error("node absent from target: {0}")]
    NodeAbsent(NodeId),
    #[error("solution transfer needs a subset problem, not {0}")]
    NotTransferable(ProblemId),
}

type Result<T> = std::result::Result<T, ReductionError>;

fn gadget_err(msg: impl Into<String>) -> ReductionError {
    ReductionError::InvalidGadget(msg.into())
}

/// Gadget substituted for each source edge (or non-edge); the terminals are
/// identified with the pair's endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "EdgeGadgetRepr", into = "EdgeGadgetRepr")]
pub struct EdgeGadget {
    body: Graph,
    terminal_u: NodeId,
    terminal_v: NodeId,
}

impl EdgeGadget {
    pub fn new(body: Graph, terminal_u: NodeId, terminal_v: NodeId) -> Result<Self> {
        if body.is_directed() {
            return Err(gadget_err("edge gadgets are undirected"));
        }
        if body.node_count() < 2 {
            return Err(gadget_err("edge gadget needs at least two nodes"));
        }
        for t in [&terminal_u, &terminal_v] {
            if !body.contains_node(t.as_str()) {
                return Err(gadget_err(format!("terminal {t} is not a gadget node")));
            }
        }
        if terminal_u == terminal_v {
            return Err(gadget_err("terminals must differ"));
        }
        Ok(EdgeGadget {
            body: body.unmarked(),
            terminal_u,
            terminal_v,
        })
    }

    pub fn body(&self) -> &Graph {
        &self.body
    }

    pub fn terminals(&self) -> (&NodeId, &NodeId) {
        (&self.terminal_u, &self.terminal_v)
    }

    /// Gadget nodes other than the two terminals, in name order.
    pub fn inner_nodes(&self) -> impl Iterator<Item = &NodeId> {
        self.body
            .nodes()
            .iter()
            .filter(move |n| **n != self.terminal_u && **n != self.terminal_v)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeGadgetRepr {
    graph: Graph,
    terminals: [NodeId; 2],
}

impl TryFrom<EdgeGadgetRepr> for EdgeGadget {
    type Error = ReductionError;
    fn try_from(r: EdgeGadgetRepr) -> Result<Self> {
        let [u, v] = r.terminals;
        EdgeGadget::new(r.graph, u, v)
    }
}

impl From<EdgeGadget> for EdgeGadgetRepr {
    fn from(g: EdgeGadget) -> Self {
        EdgeGadgetRepr {
            graph: g.body,
            terminals: [g.terminal_u, g.terminal_v],
        }
    }
}

/// Gadget substituted for each source node; incoming source edges attach at
/// `port_in`, outgoing ones at `port_out`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NodeGadgetRepr", into = "NodeGadgetRepr")]
pub struct NodeGadget {
    body: Graph,
    port_in: NodeId,
    port_out: NodeId,
    carrier: Option<NodeId>,
}

impl NodeGadget {
    pub fn new(body: Graph, port_in: NodeId, port_out: NodeId, carrier: Option<NodeId>) -> Result<Self> {
        if body.is_directed() {
            return Err(gadget_err("node gadgets are undirected"));
        }
        for p in [Some(&port_in), Some(&port_out), carrier.as_ref()].into_iter().flatten() {
            if !body.contains_node(p.as_str()) {
                return Err(gadget_err(format!("port {p} is not a gadget node")));
            }
        }
        Ok(NodeGadget {
            body: body.unmarked(),
            port_in,
            port_out,
            carrier,
        })
    }

    pub fn body(&self) -> &Graph {
        &self.body
    }

    pub fn port_in(&self) -> &NodeId {
        &self.port_in
    }

    pub fn port_out(&self) -> &NodeId {
        &self.port_out
    }

    /// Node that represents a source node in transferred solutions.
    pub fn carrier(&self) -> &NodeId {
        self.carrier.as_ref().unwrap_or(&self.port_in)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Ports {
    #[serde(rename = "in")]
    port_in: NodeId,
    out: NodeId,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeGadgetRepr {
    graph: Graph,
    ports: Ports,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    carrier: Option<NodeId>,
}

impl TryFrom<NodeGadgetRepr> for NodeGadget {
    type Error = ReductionError;
    fn try_from(r: NodeGadgetRepr) -> Result<Self> {
        NodeGadget::new(r.graph, r.ports.port_in, r.ports.out, r.carrier)
    }
}

impl From<NodeGadget> for NodeGadgetRepr {
    fn from(g: NodeGadget) -> Self {
        NodeGadgetRepr {
            graph: g.body,
            ports: Ports {
                port_in: g.port_in,
                out: g.port_out,
            },
            carrier: g.carrier,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// Connect the gadget node to every source node.
    #[serde(alias = "ALL")]
    All,
    /// Leave the gadget node unconnected to the source.
    #[serde(alias = "NONE")]
    None,
}

/// A single gadget added once next to the source graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GlobalGadgetRepr", into = "GlobalGadgetRepr")]
pub struct GlobalGadget {
    body: Graph,
    policy: BTreeMap<NodeId, Policy>,
}

impl GlobalGadget {
    pub fn new(body: Graph, policy: BTreeMap<NodeId, Policy>) -> Result<Self> {
        if let Some(n) = body.nodes().iter().find(|n| !policy.contains_key(*n)) {
            return Err(gadget_err(format!("no policy for gadget node {n}")));
        }
        if let Some(n) = policy.keys().find(|n| !body.contains_node(n.as_str())) {
            return Err(gadget_err(format!("policy names unknown node {n}")));
        }
        Ok(GlobalGadget {
            body: body.unmarked(),
            policy,
        })
    }

    pub fn body(&self) -> &Graph {
        &self.body
    }

    pub fn policy(&self) -> &BTreeMap<NodeId, Policy> {
        &self.policy
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlobalGadgetRepr {
    graph: Graph,
    policy: BTreeMap<NodeId, Policy>,
}

impl TryFrom<GlobalGadgetRepr> for GlobalGadget {
    type Error = ReductionError;
    fn try_from(r: GlobalGadgetRepr) -> Result<Self> {
        GlobalGadget::new(r.graph, r.policy)
    }
}

impl From<GlobalGadget> for GlobalGadgetRepr {
    fn from(g: GlobalGadget) -> Self {
        GlobalGadgetRepr {
            graph: g.body,
            policy: g.policy,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Global(GlobalGadget),
    Edge { edge: EdgeGadget, non_edge: Option<EdgeGadget> },
    Node(NodeGadget),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FamilyTag {
    Global,
    Edge,
    Node,
}

impl Family {
    pub fn tag(&self) -> FamilyTag {
        match self {
            Family::Global(_) => FamilyTag::Global,
            Family::Edge { .. } => FamilyTag::Edge,
            Family::Node(_) => FamilyTag::Node,
        }
    }
}

/// Target budget `k' = alpha*k + beta*|V| + gamma*|E| + delta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 4]", into = "[i64; 4]")]
pub struct ParamMap {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
}

impl ParamMap {
    pub const IDENTITY: ParamMap = ParamMap {
        alpha: 1,
        beta: 0,
        gamma: 0,
        delta: 0,
    };

    pub fn constant(delta: i64) -> Self {
        ParamMap {
            alpha: 0,
            beta: 0,
            gamma: 0,
            delta,
        }
    }

    /// Evaluates the map, clamping negative results to zero.
    pub fn apply(&self, k: u64, nodes: usize, edges: usize) -> u64 {
        let v = self.alpha as i128 * k as i128
            + self.beta as i128 * nodes as i128
            + self.gamma as i128 * edges as i128
            + self.delta as i128;
        v.clamp(0, u64::MAX as i128) as u64
    }
}

impl From<[i64; 4]> for ParamMap {
    fn from([alpha, beta, gamma, delta]: [i64; 4]) -> Self {
        ParamMap {
            alpha,
            beta,
            gamma,
            delta,
        }
    }
}

impl From<ParamMap> for [i64; 4] {
    fn from(p: ParamMap) -> Self {
        [p.alpha, p.beta, p.gamma, p.delta]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecRepr", into = "SpecRepr")]
pub struct ReductionSpec {
    family: Family,
    source: ProblemId,
    target: ProblemId,
    param_map: Option<ParamMap>,
    source_budget: Option<u64>,
}

impl ReductionSpec {
    /// Validates family/problem compatibility. `param_map` defaults to the
    /// identity for budgeted targets and must be absent otherwise.
    /// `source_budget` pins the source budget to a constant, as in a
    /// reduction from 3-Clique.
    pub fn new(
        family: Family,
        source: ProblemId,
        target: ProblemId,
        param_map: Option<ParamMap>,
        source_budget: Option<u64>,
    ) -> Result<Self> {
        let invalid = |m: &str| Err(ReductionError::InvalidSpec(m.to_string()));
        if !target.requires_budget() && param_map.is_some() {
            return invalid("paramMap given for a target without budget");
        }
        if !source.requires_budget() && source_budget.is_some() {
            return invalid("sourceBudget given for a source without budget");
        }
        let param_map = target.requires_budget().then(|| param_map.unwrap_or(ParamMap::IDENTITY));
        if let Some(pm) = param_map {
            if !source.requires_budget() && pm.alpha != 0 {
                return invalid("paramMap refers to k but the source has no budget");
            }
        }
        match &family {
            Family::Edge { .. } => {
                if source.directed_input() || target.directed_input() {
                    return invalid("the edge family maps undirected graphs to undirected graphs");
                }
            }
            Family::Node(_) => {
                if !source.directed_input() || target.directed_input() {
                    return invalid("the node family maps directed graphs to undirected graphs");
                }
            }
            Family::Global(g) => {
                if source.directed_input() != target.directed_input() {
                    return invalid("the global family keeps the source's directedness");
                }
                if g.body.is_directed() != source.directed_input() {
                    return invalid("global gadget directedness must match the source");
                }
            }
        }
        Ok(ReductionSpec {
            family,
            source,
            target,
            param_map,
            source_budget,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn source_problem(&self) -> ProblemId {
        self.source
    }

    pub fn target_problem(&self) -> ProblemId {
        self.target
    }

    pub fn param_map(&self) -> Option<ParamMap> {
        self.param_map
    }

    pub fn source_budget(&self) -> Option<u64> {
        self.source_budget
    }

    pub fn to_canonical_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct SpecRepr {
    family: FamilyTag,
    source_problem: ProblemId,
    target_problem: ProblemId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edge_gadget: Option<EdgeGadget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    non_edge_gadget: Option<EdgeGadget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    node_gadget: Option<NodeGadget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    global_gadget: Option<GlobalGadget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    param_map: Option<ParamMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source_budget: Option<u64>,
}

impl TryFrom<SpecRepr> for ReductionSpec {
    type Error = ReductionError;
    fn try_from(r: SpecRepr) -> Result<Self> {
        let stray = |present: bool, field: &str| {
            if present {
                Err(ReductionError::InvalidSpec(format!("{field} does not belong to the {:?} family", r.family)))
            } else {
                Ok(())
            }
        };
        let missing = |field: &str| ReductionError::InvalidSpec(format!("missing {field}"));
        let family = match r.family {
            FamilyTag::Edge => {
                stray(r.node_gadget.is_some(), "nodeGadget")?;
                stray(r.global_gadget.is_some(), "globalGadget")?;
                Family::Edge {
                    edge: r.edge_gadget.ok_or_else(|| missing("edgeGadget"))?,
                    non_edge: r.non_edge_gadget,
                }
            }
            FamilyTag::Node => {
                stray(r.edge_gadget.is_some() || r.non_edge_gadget.is_some(), "edgeGadget")?;
                stray(r.global_gadget.is_some(), "globalGadget")?;
                Family::Node(r.node_gadget.ok_or_else(|| missing("nodeGadget"))?)
            }
            FamilyTag::Global => {
                stray(r.edge_gadget.is_some() || r.non_edge_gadget.is_some(), "edgeGadget")?;
                stray(r.node_gadget.is_some(), "nodeGadget")?;
                Family::Global(r.global_gadget.ok_or_else(|| missing("globalGadget"))?)
            }
        };
        ReductionSpec::new(family, r.source_problem, r.target_problem, r.param_map, r.source_budget)
    }
}

impl From<ReductionSpec> for SpecRepr {
    fn from(s: ReductionSpec) -> Self {
        let mut r = SpecRepr {
            family: s.family.tag(),
            source_problem: s.source,
            target_problem: s.target,
            edge_gadget: None,
            non_edge_gadget: None,
            node_gadget: None,
            global_gadget: None,
            param_map: s.param_map,
            source_budget: s.source_budget,
        };
        match s.family {
            Family::Edge { edge, non_edge } => {
                r.edge_gadget = Some(edge);
                r.non_edge_gadget = non_edge;
            }
            Family::Node(g) => r.node_gadget = Some(g),
            Family::Global(g) => r.global_gadget = Some(g),
        }
        r
    }
}

/// Incrementally builds a target graph, rejecting duplicate node names.
struct Builder<'s> {
    graph: Graph,
    source: &'s Graph,
}

impl Builder<'_> {
    fn keep(&mut self, id: &NodeId) {
        self.graph.add_node(id.clone()).expect("source nodes are distinct");
    }

    fn node(&mut self, name: String) -> Result<NodeId> {
        let id = NodeId::new(name.clone()).expect("fresh names are nonempty");
        if self.graph.contains_node(&name) || self.source.contains_node(&name) {
            return Err(ReductionError::NameCollision(name));
        }
        self.graph.add_node(id.clone()).expect("checked");
        Ok(id)
    }

    fn edge(&mut self, a: &NodeId, b: &NodeId) {
        self.graph.insert_edge(a.clone(), b.clone()).expect("endpoints declared, distinct");
    }
}

/// Builds the target instance of `spec` on `src`.
pub fn apply_reduction(spec: &ReductionSpec, src: &ProblemInstance) -> Result<ProblemInstance> {
    check_instance(spec.source, src)?;
    let g = &src.graph;
    let mut b = Builder {
        graph: Graph::new(spec.target.directed_input()),
        source: g,
    };
    match &spec.family {
        Family::Edge { edge, non_edge } => {
            let nodes: Vec<&NodeId> = g.nodes().iter().collect();
            let mut pairs = Vec::new();
            for (i, u) in nodes.iter().enumerate() {
                for v in &nodes[i + 1..] {
                    let gadget = if g.has_edge(u.as_str(), v.as_str()) {
                        Some(edge)
                    } else {
                        non_edge.as_ref()
                    };
                    if let Some(gadget) = gadget {
                        pairs.push((*u, *v, gadget));
                    }
                }
            }
            // source nodes: all of them when non-edges are processed, else those on a gadget
            let kept: BTreeSet<&NodeId> = if non_edge.is_some() {
                nodes.iter().copied().collect()
            } else {
                pairs.iter().flat_map(|(u, v, _)| [*u, *v]).collect()
            };
            for n in kept {
                b.keep(n);
            }
            for (u, v, gadget) in pairs {
                let mut name = BTreeMap::new();
                name.insert(&gadget.terminal_u, u.clone());
                name.insert(&gadget.terminal_v, v.clone());
                for inner in gadget.inner_nodes() {
                    name.insert(inner, b.node(format!("{inner}@{u}|{v}"))?);
                }
                for Edge(x, y) in gadget.body.edges() {
                    b.edge(&name[x], &name[y]);
                }
            }
        }
        Family::Node(gadget) => {
            let mut copies: BTreeMap<&NodeId, BTreeMap<&NodeId, NodeId>> = BTreeMap::new();
            for v in g.nodes() {
                let mut name = BTreeMap::new();
                for n in gadget.body.nodes() {
                    name.insert(n, b.node(format!("{n}@{v}"))?);
                }
                for Edge(x, y) in gadget.body.edges() {
                    b.edge(&name[x], &name[y]);
                }
                copies.insert(v, name);
            }
            for Edge(u, v) in g.edges() {
                b.edge(&copies[u][&gadget.port_out], &copies[v][&gadget.port_in]);
            }
        }
        Family::Global(gadget) => {
            for n in g.nodes() {
                b.keep(n);
            }
            for Edge(x, y) in g.edges() {
                b.edge(x, y);
            }
            let mut name = BTreeMap::new();
            for n in gadget.body.nodes() {
                name.insert(n, b.node(format!("{n}@global"))?);
            }
            for Edge(x, y) in gadget.body.edges() {
                b.edge(&name[x], &name[y]);
            }
            for (n, policy) in &gadget.policy {
                if *policy == Policy::All {
                    for s in g.nodes() {
                        b.edge(&name[n], s);
                        if g.is_directed() {
                            b.edge(s, &name[n]);
                        }
                    }
                }
            }
        }
    }
    let budget = spec
        .param_map
        .map(|pm| pm.apply(src.budget.unwrap_or(0), g.node_count(), g.edge_count()));
    Ok(ProblemInstance::new(b.graph, budget))
}

/// Maps a valid source solution to its image in the target: source names
/// for the edge and global families, carrier copies for the node family.
/// The image is a candidate; it need not solve the target.
pub fn transfer_solution(
    spec: &ReductionSpec,
    src: &ProblemInstance,
    solution: &BTreeSet<NodeId>,
) -> Result<BTreeSet<NodeId>> {
    for p in [spec.source, spec.target] {
        if p.is_cycle_problem() {
            return Err(ReductionError::NotTransferable(p));
        }
    }
    if let CandidateCheck::Invalid { witness } = verify_candidate(spec.source, src, solution)? {
        return Err(ReductionError::InvalidSourceSolution(witness));
    }
    let target = apply_reduction(spec, src)?;
    let image: BTreeSet<NodeId> = match &spec.family {
        Family::Node(gadget) => solution
            .iter()
            .map(|v| NodeId::new(format!("{}@{v}", gadget.carrier())).expect("nonempty"))
            .collect(),
        _ => solution.clone(),
    };
    if let Some(absent) = image.iter().find(|n| !target.graph.contains_node(n.as_str())) {
        return Err(ReductionError::NodeAbsent(absent.clone()));
    }
    Ok(image)
}

/// Ready-made gadgets used in fixtures and tests.
pub mod catalog {
    use super::*;

    fn graph(nodes: &[&str], edges: &[(&str, &str)]) -> Graph {
        Graph::from_parts(false, nodes.iter().copied(), edges.iter().copied()).expect("valid gadget")
    }

    /// Terminals `u`, `v` and a third node `w` forming a triangle.
    pub fn triangle() -> EdgeGadget {
        EdgeGadget::new(
            graph(&["u", "v", "w"], &[("u", "v"), ("v", "w"), ("u", "w")]),
            "u".into(),
            "v".into(),
        )
        .expect("valid")
    }

    /// The single edge `u`-`v`.
    pub fn bare_edge() -> EdgeGadget {
        EdgeGadget::new(graph(&["u", "v"], &[("u", "v")]), "u".into(), "v".into()).expect("valid")
    }

    /// Terminals `u`, `v` without an edge.
    pub fn no_edge() -> EdgeGadget {
        EdgeGadget::new(graph(&["u", "v"], &[]), "u".into(), "v".into()).expect("valid")
    }

    pub fn vc_to_fvs(edge: EdgeGadget) -> ReductionSpec {
        ReductionSpec::new(
            Family::Edge { edge, non_edge: None },
            ProblemId::VertexCover,
            ProblemId::FeedbackVertexSet,
            Some(ParamMap::IDENTITY),
            None,
        )
        .expect("valid")
    }

    pub fn vc_to_ds_triangle() -> ReductionSpec {
        ReductionSpec::new(
            Family::Edge {
                edge: triangle(),
                non_edge: None,
            },
            ProblemId::VertexCover,
            ProblemId::DominatingSet,
            Some(ParamMap::IDENTITY),
            None,
        )
        .expect("valid")
    }

    /// Clique to IndependentSet by complementing: edges become non-edges
    /// and non-edges become edges.
    pub fn clique_to_is_complement() -> ReductionSpec {
        ReductionSpec::new(
            Family::Edge {
                edge: no_edge(),
                non_edge: Some(bare_edge()),
            },
            ProblemId::Clique,
            ProblemId::IndependentSet,
            Some(ParamMap::IDENTITY),
            None,
        )
        .expect("valid")
    }

    /// 3-Clique to 4-Clique with one global node under `policy`.
    pub fn three_to_four_clique(policy: Policy) -> ReductionSpec {
        let body = graph(&["x"], &[]);
        let gadget = GlobalGadget::new(body, [("x".into(), policy)].into_iter().collect()).expect("valid");
        ReductionSpec::new(
            Family::Global(gadget),
            ProblemId::Clique,
            ProblemId::Clique,
            Some(ParamMap {
                alpha: 1,
                beta: 0,
                gamma: 0,
                delta: 1,
            }),
            Some(3),
        )
        .expect("valid")
    }

    /// Directed to undirected HamCycle with the path `in - mid - out`.
    pub fn ham_path_gadget() -> ReductionSpec {
        let body = graph(&["in", "mid", "out"], &[("in", "mid"), ("mid", "out")]);
        ham_node_gadget(NodeGadget::new(body, "in".into(), "out".into(), None).expect("valid"))
    }

    /// Each source node becomes a single node serving as both ports.
    pub fn ham_identity_gadget() -> ReductionSpec {
        let body = graph(&["x"], &[]);
        ham_node_gadget(NodeGadget::new(body, "x".into(), "x".into(), None).expect("valid"))
    }

    pub fn ham_node_gadget(gadget: NodeGadget) -> ReductionSpec {
        ReductionSpec::new(
            Family::Node(gadget),
            ProblemId::HamCycleDirected,
            ProblemId::HamCycleUndirected,
            None,
            None,
        )
        .expect("valid")
    }
}
