//! Correctness checks for submitted reductions.
//!
//! Two methods: the exact characterization of edge gadgets for
//! VertexCover to FeedbackVertexSet, and a bounded counterexample search
//! that compares source and target answers on every source instance up to a
//! node bound. A search result of "correct" only means no counterexample
//! exists up to that bound.
//!
//! Search order is the order of [`crate::graph::enumerate_instances`]:
//! node count, then edge bitmask, then budget. Sources of the Hamiltonian
//! cycle problems start at three nodes since smaller graphs have no
//! Hamiltonian cycle by convention. The first disagreement in this order is
//! the reported counterexample, independent of parallel scheduling.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{graph_from_mask, pair_list, Edge, Graph, ProblemInstance};
use crate::kernel::{self, BitGraph, Mask};
use crate::problems::{least_cycle, BudgetSense, ProblemId, Solution};
use crate::reductions::{apply_reduction, catalog, EdgeGadget, Family, FamilyTag, ParamMap, Policy, ReductionError, ReductionSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifierError {
    #[error("unsupported triple: {from} to {to} with the {family:?} family")]
    Unsupported {
        from: ProblemId,
        to: ProblemId,
        family: FamilyTag,
    },
    #[error("the characterization needs the identity parameter map")]
    NotIdentity,
    #[error("bound {bound} exceeds the oracle bound {max} for {problem}")]
    BoundTooLarge { bound: usize, max: usize, problem: ProblemId },
    #[error("target instances reach {0} nodes, more than the search supports")]
    TargetTooLarge(usize),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Method {
    CharacterizationAndSearch,
    Search,
}

/// How a supported reduction is verified, and the default search bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Support {
    pub method: Method,
    pub default_bound: usize,
}

/// Looks up the verification method for the spec's problem pair and family.
pub fn support(spec: &ReductionSpec) -> Result<Support, VerifierError> {
    use ProblemId::*;
    let search = |default_bound| Support {
        method: Method::Search,
        default_bound,
    };
    let (s, t) = (spec.source_problem(), spec.target_problem());
    match (s, t, spec.family()) {
        (VertexCover, FeedbackVertexSet, Family::Edge { non_edge: None, .. })
            if spec.param_map() == Some(ParamMap::IDENTITY) =>
        {
            Ok(Support {
                method: Method::CharacterizationAndSearch,
                default_bound: 6,
            })
        }
        (VertexCover, FeedbackVertexSet, Family::Edge { .. })
        | (VertexCover, DominatingSet, Family::Edge { .. })
        | (Clique, IndependentSet, Family::Edge { .. })
        | (Clique, Clique, Family::Global(_)) => Ok(search(6)),
        (HamCycleDirected, HamCycleUndirected, Family::Node(_)) => Ok(search(5)),
        (from, to, family) => Err(VerifierError::Unsupported {
            from,
            to,
            family: family.tag(),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Direction {
    /// The source instance is positive, its target negative.
    PositiveLost,
    /// The source instance is negative, its target positive.
    NegativeGained,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Counterexample {
    pub source: ProblemInstance,
    pub target: ProblemInstance,
    pub direction: Direction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_witness: Option<Solution>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_witness: Option<Solution>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyViolation {
    pub property: u8,
    pub explanation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "camelCase")]
pub enum VerifierVerdict {
    #[serde(rename_all = "camelCase")]
    Correct {
        /// Every source instance with up to this many nodes was checked;
        /// absent when no search ran.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound_checked: Option<usize>,
        /// The bound that was asked for; larger than `bound_checked` when
        /// the time budget ran out.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound_requested: Option<usize>,
        characterization: bool,
    },
    Incorrect {
        counterexample: Counterexample,
    },
    CharacterizationViolation {
        violations: Vec<PropertyViolation>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        counterexample: Option<Counterexample>,
    },
}

impl VerifierVerdict {
    pub fn is_correct(&self) -> bool {
        matches!(self, VerifierVerdict::Correct { .. })
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            VerifierVerdict::Correct { .. } => None,
            VerifierVerdict::Incorrect { counterexample } => Some(counterexample),
            VerifierVerdict::CharacterizationViolation { counterexample, .. } => counterexample.as_ref(),
        }
    }
}

/// Verifies `spec` with the method from [`support`]: for characterized
/// reductions the characterization first, then the search.
pub fn verify(spec: &ReductionSpec, bound: Option<usize>, time_budget: Option<Duration>) -> Result<VerifierVerdict, VerifierError> {
    let sup = support(spec)?;
    let bound = bound.unwrap_or(sup.default_bound);
    if sup.method == Method::CharacterizationAndSearch {
        let Family::Edge { edge, .. } = spec.family() else {
            unreachable!("characterized reductions use edge gadgets")
        };
        let violations = characterize_vc_to_fvs(edge);
        if !violations.is_empty() {
            let counterexample = verify_by_search(spec, bound, time_budget)?.counterexample().cloned();
            return Ok(VerifierVerdict::CharacterizationViolation {
                violations,
                counterexample,
            });
        }
        return Ok(match verify_by_search(spec, bound, time_budget)? {
            VerifierVerdict::Correct {
                bound_checked,
                bound_requested,
                ..
            } => VerifierVerdict::Correct {
                bound_checked,
                bound_requested,
                characterization: true,
            },
            other => other,
        });
    }
    verify_by_search(spec, bound, time_budget)
}

/// The two properties an edge gadget needs for VertexCover to
/// FeedbackVertexSet with unchanged budget: (1) the gadget contains a cycle
/// and (2) removing either terminal leaves it acyclic. Returns the violated
/// properties.
pub fn characterize_vc_to_fvs(gadget: &EdgeGadget) -> Vec<PropertyViolation> {
    let body = gadget.body();
    let (u, v) = gadget.terminals();
    let mut out = Vec::new();
    if body.is_acyclic() {
        out.push(PropertyViolation {
            property: 1,
            explanation: format!(
                "The gadget for the edge ({u}, {v}) does not contain a cycle. Then any negative source instance (G, k) \
                 with fewer than k cycles is a counterexample: its target has fewer than k cycles and is positive."
            ),
        });
    }
    let mut survivors = Vec::new();
    for t in [u, v] {
        let rest = body.remove_nodes([t.as_str()]).expect("terminal exists");
        if let Some(cycle) = least_cycle(&rest) {
            let names: Vec<&str> = cycle.iter().map(|n| n.as_str()).collect();
            survivors.push(format!("removing {t} leaves the cycle {}", names.join(" - ")));
        }
    }
    if !survivors.is_empty() {
        out.push(PropertyViolation {
            property: 2,
            explanation: format!(
                "In the gadget, {}. Every gadget cycle must pass through both terminals; otherwise positive \
                 source instances have negative target instances, since selecting an endpoint of an edge no \
                 longer breaks all cycles of its gadget.",
                survivors.join(" and ")
            ),
        });
    }
    out
}

/// Runs the characterization for VertexCover to FeedbackVertexSet with the
/// identity parameter map. Violations come with the first counterexample of
/// a search up to six nodes.
pub fn verify_vc_to_fvs_edge_gadget(gadget: &EdgeGadget) -> VerifierVerdict {
    verify_vc_to_fvs_spec(&catalog::vc_to_fvs(gadget.clone())).expect("identity map on a supported triple")
}

/// [`verify_vc_to_fvs_edge_gadget`] for a full spec, rejecting specs the
/// characterization does not apply to.
pub fn verify_vc_to_fvs_spec(spec: &ReductionSpec) -> Result<VerifierVerdict, VerifierError> {
    let sup = support(spec)?;
    if spec.source_problem() != ProblemId::VertexCover || spec.target_problem() != ProblemId::FeedbackVertexSet {
        return Err(VerifierError::Unsupported {
            from: spec.source_problem(),
            to: spec.target_problem(),
            family: spec.family().tag(),
        });
    }
    if sup.method != Method::CharacterizationAndSearch {
        return Err(VerifierError::NotIdentity);
    }
    let Family::Edge { edge, .. } = spec.family() else {
        unreachable!()
    };
    let violations = characterize_vc_to_fvs(edge);
    if violations.is_empty() {
        return Ok(VerifierVerdict::Correct {
            bound_checked: None,
            bound_requested: None,
            characterization: true,
        });
    }
    let counterexample = verify_by_search(spec, sup.default_bound, None)?.counterexample().cloned();
    Ok(VerifierVerdict::CharacterizationViolation {
        violations,
        counterexample,
    })
}

/// Searches all source instances with up to `max_nodes` nodes for one whose
/// answer differs from its target's. With a time budget, the search stops at
/// the deadline and reports the largest node count it completed.
pub fn verify_by_search(
    spec: &ReductionSpec,
    max_nodes: usize,
    time_budget: Option<Duration>,
) -> Result<VerifierVerdict, VerifierError> {
    support(spec)?;
    let sp = spec.source_problem();
    if max_nodes > sp.default_oracle_bound() {
        return Err(VerifierError::BoundTooLarge {
            bound: max_nodes,
            max: sp.default_oracle_bound(),
            problem: sp,
        });
    }
    let compiled = Compiled::new(spec);
    let largest = compiled.target_size(max_nodes);
    if largest > kernel::MAX_NODES {
        return Err(VerifierError::TargetTooLarge(largest));
    }
    let deadline = time_budget.map(|d| Instant::now() + d);
    let directed = sp.directed_input();
    let first: usize = if sp.is_cycle_problem() { 3 } else { 1 };
    let mut completed = first.saturating_sub(1).min(max_nodes);

    for n in first..=max_nodes {
        let pairs = pair_list(n, directed).len();
        let total: u64 = 1 << pairs;
        let chunk: u64 = 1024;
        let chunks: Vec<(u64, u64)> = (0..total.div_ceil(chunk))
            .map(|c| (c * chunk, ((c + 1) * chunk).min(total)))
            .collect();
        let batch = (rayon::current_num_threads() * 4).max(1);
        for group in chunks.chunks(batch) {
            let hit = group
                .par_iter()
                .find_map_first(|&(lo, hi)| (lo..hi).find_map(|mask| compiled.check(n, mask)));
            if let Some((mask, k)) = hit {
                return Ok(VerifierVerdict::Incorrect {
                    counterexample: materialize(spec, n, mask, k)?,
                });
            }
            if deadline.is_some_and(|d| Instant::now() >= d) {
                let last = group.last().expect("nonempty").1;
                if last < total {
                    return Ok(VerifierVerdict::Correct {
                        bound_checked: Some(completed),
                        bound_requested: Some(max_nodes),
                        characterization: false,
                    });
                }
            }
        }
        completed = n;
    }
    Ok(VerifierVerdict::Correct {
        bound_checked: Some(completed),
        bound_requested: Some(max_nodes),
        characterization: false,
    })
}

/// Optimal value of a problem on one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Value {
    /// Minimum solution size, `None` when above the cap it was computed with.
    Min(Option<usize>),
    Max(usize),
    Cycle(bool),
}

impl Value {
    fn positive(self, budget: Option<u64>) -> bool {
        match self {
            Value::Min(opt) => opt.is_some_and(|o| o as u64 <= budget.expect("budgeted")),
            Value::Max(opt) => opt as u64 >= budget.expect("budgeted"),
            Value::Cycle(found) => found,
        }
    }
}

fn solve(p: ProblemId, g: &BitGraph, cap: usize) -> Value {
    let len = |m: Option<Mask>| m.map(kernel::mask_len);
    match p {
        ProblemId::VertexCover => Value::Min(len(kernel::min_vertex_cover(g, cap))),
        ProblemId::DominatingSet => Value::Min(len(kernel::min_dominating_set(g, cap))),
        ProblemId::FeedbackVertexSet => Value::Min(len(kernel::min_feedback_vertex_set(g, cap))),
        ProblemId::Clique => Value::Max(kernel::mask_len(kernel::max_clique(g))),
        ProblemId::IndependentSet => Value::Max(kernel::mask_len(kernel::max_independent_set(g))),
        ProblemId::HamCycleDirected | ProblemId::HamCycleUndirected => Value::Cycle(kernel::hamiltonian_cycle(g).is_some()),
    }
}

/// A witness for a positive instance, computed with the exact solvers.
fn witness(p: ProblemId, inst: &ProblemInstance) -> Option<Solution> {
    let (g, names) = BitGraph::from_graph(&inst.graph)?;
    let nodes = |m: Mask| Solution::Nodes(kernel::mask_to_names(m, &names).into_iter().collect());
    let budget = inst.budget.map(|b| b.min(g.n as u64) as usize);
    match p {
        ProblemId::VertexCover => kernel::min_vertex_cover(&g, budget?).map(nodes),
        ProblemId::DominatingSet => kernel::min_dominating_set(&g, budget?).map(nodes),
        ProblemId::FeedbackVertexSet => kernel::min_feedback_vertex_set(&g, budget?).map(nodes),
        ProblemId::Clique | ProblemId::IndependentSet => {
            let best = if p == ProblemId::Clique {
                kernel::max_clique(&g)
            } else {
                kernel::max_independent_set(&g)
            };
            (kernel::mask_len(best) as u64 >= inst.budget?).then(|| nodes(best))
        }
        ProblemId::HamCycleDirected | ProblemId::HamCycleUndirected => {
            kernel::hamiltonian_cycle(&g).map(|c| Solution::Cycle(c.into_iter().map(|i| names[i].clone()).collect()))
        }
    }
}

fn materialize(spec: &ReductionSpec, n: usize, mask: u64, k: Option<u64>) -> Result<Counterexample, VerifierError> {
    let (sp, tp) = (spec.source_problem(), spec.target_problem());
    let source = ProblemInstance::new(graph_from_mask(n, sp.directed_input(), mask), k);
    let target = apply_reduction(spec, &source)?;
    let source_witness = witness(sp, &source);
    let target_witness = witness(tp, &target);
    let direction = match (source_witness.is_some(), target_witness.is_some()) {
        (true, false) => Direction::PositiveLost,
        (false, true) => Direction::NegativeGained,
        _ => unreachable!("compiled and materialized targets disagree at n={n} mask={mask} k={k:?}"),
    };
    Ok(Counterexample {
        source,
        target,
        direction,
        source_witness,
        target_witness,
    })
}

/// A spec lowered to index arithmetic so targets can be built straight from
/// source bitmasks. Target node numbering differs from the named
/// construction, which does not matter for the answers.
struct Compiled<'a> {
    spec: &'a ReductionSpec,
    layout: Layout,
}

enum Layout {
    Edge {
        edge: GadgetShape,
        non_edge: Option<GadgetShape>,
    },
    Node {
        size: usize,
        edges: Vec<(usize, usize)>,
        port_in: usize,
        port_out: usize,
    },
    Global {
        size: usize,
        edges: Vec<(usize, usize)>,
        universal: Vec<usize>,
    },
}

/// Edge gadget with local indices: 0 is terminal u, 1 is terminal v, then
/// the inner nodes.
struct GadgetShape {
    inner: usize,
    edges: Vec<(usize, usize)>,
}

impl GadgetShape {
    fn new(g: &EdgeGadget) -> Self {
        let (u, v) = g.terminals();
        let mut order = vec![u, v];
        order.extend(g.inner_nodes());
        let local = |n| order.iter().position(|&x| x == n).expect("gadget node");
        GadgetShape {
            inner: order.len() - 2,
            edges: g.body().edges().iter().map(|Edge(a, b)| (local(a), local(b))).collect(),
        }
    }
}

fn local_edges(body: &Graph) -> Vec<(usize, usize)> {
    let index = body.node_index();
    body.edges().iter().map(|Edge(a, b)| (index[a], index[b])).collect()
}

impl<'a> Compiled<'a> {
    fn new(spec: &'a ReductionSpec) -> Self {
        let layout = match spec.family() {
            Family::Edge { edge, non_edge } => Layout::Edge {
                edge: GadgetShape::new(edge),
                non_edge: non_edge.as_ref().map(GadgetShape::new),
            },
            Family::Node(g) => {
                let index = g.body().node_index();
                Layout::Node {
                    size: g.body().node_count(),
                    edges: local_edges(g.body()),
                    port_in: index[g.port_in()],
                    port_out: index[g.port_out()],
                }
            }
            Family::Global(g) => {
                let index = g.body().node_index();
                Layout::Global {
                    size: g.body().node_count(),
                    edges: local_edges(g.body()),
                    universal: g
                        .policy()
                        .iter()
                        .filter(|(_, p)| **p == Policy::All)
                        .map(|(n, _)| index[n])
                        .collect(),
                }
            }
        };
        Compiled { spec, layout }
    }

    /// Largest target over sources with `n` nodes.
    fn target_size(&self, n: usize) -> usize {
        match &self.layout {
            Layout::Edge { edge, non_edge } => {
                let pairs = n * n.saturating_sub(1) / 2;
                n + pairs * edge.inner.max(non_edge.as_ref().map_or(0, |g| g.inner))
            }
            Layout::Node { size, .. } => n * size,
            Layout::Global { size, .. } => n + size,
        }
    }

    fn target(&self, src: &BitGraph) -> BitGraph {
        let n = src.n;
        match &self.layout {
            Layout::Edge { edge, non_edge } => {
                let mut work = Vec::new();
                for (i, j) in pair_list(n, false) {
                    // enumerated names compare as strings, which differs from index order past v9
                    let (u, v) = if crate::graph::enumerated_name(i) < crate::graph::enumerated_name(j) {
                        (i, j)
                    } else {
                        (j, i)
                    };
                    let shape = if src.has_edge(i, j) { Some(edge) } else { non_edge.as_ref() };
                    if let Some(shape) = shape {
                        work.push((u, v, shape));
                    }
                }
                let mut index = vec![usize::MAX; n];
                let mut next = 0;
                for s in 0..n {
                    let kept = non_edge.is_some() || work.iter().any(|&(u, v, _)| u == s || v == s);
                    if kept {
                        index[s] = next;
                        next += 1;
                    }
                }
                let total = next + work.iter().map(|(_, _, g)| g.inner).sum::<usize>();
                let mut t = BitGraph::new(total, false);
                for (u, v, shape) in work {
                    let base = next;
                    next += shape.inner;
                    let map = |l: usize| match l {
                        0 => index[u],
                        1 => index[v],
                        _ => base + l - 2,
                    };
                    for &(a, b) in &shape.edges {
                        t.add_edge(map(a), map(b));
                    }
                }
                t
            }
            Layout::Node {
                size,
                edges,
                port_in,
                port_out,
            } => {
                let mut t = BitGraph::new(n * size, false);
                for s in 0..n {
                    for &(a, b) in edges {
                        t.add_edge(s * size + a, s * size + b);
                    }
                }
                for s in 0..n {
                    for w in 0..n {
                        if src.has_edge(s, w) {
                            let (a, b) = (s * size + port_out, w * size + port_in);
                            if a != b {
                                t.add_edge(a, b);
                            }
                        }
                    }
                }
                t
            }
            Layout::Global { size, edges, universal } => {
                let mut t = BitGraph::new(n + size, src.directed);
                for s in 0..n {
                    t.out[s] = src.out[s];
                    t.inc[s] = src.inc[s];
                }
                for &(a, b) in edges {
                    t.add_edge(n + a, n + b);
                }
                for &x in universal {
                    for s in 0..n {
                        t.add_edge(n + x, s);
                        if src.directed {
                            t.add_edge(s, n + x);
                        }
                    }
                }
                t
            }
        }
    }

    /// First budget at which source and target disagree for this graph.
    fn check(&self, n: usize, mask: u64) -> Option<(u64, Option<u64>)> {
        let (sp, tp) = (self.spec.source_problem(), self.spec.target_problem());
        let src = source_bitgraph(n, sp.directed_input(), mask);
        let edges = src.edge_count();
        let budgets: Vec<Option<u64>> = if !sp.requires_budget() {
            vec![None]
        } else if let Some(b) = self.spec.source_budget() {
            vec![Some(b)]
        } else {
            (0..=n as u64).map(Some).collect()
        };
        let target_budget = |k: Option<u64>| {
            self.spec
                .param_map()
                .map(|pm| pm.apply(k.unwrap_or(0), n, edges))
        };
        let tgt = self.target(&src);
        let src_value = solve(sp, &src, n);
        let cap = match tp.budget_sense() {
            Some(BudgetSense::AtMost) => budgets
                .iter()
                .map(|&k| target_budget(k).expect("budgeted target") as usize)
                .max()
                .unwrap_or(0)
                .min(tgt.n),
            _ => 0,
        };
        let tgt_value = solve(tp, &tgt, cap);
        budgets
            .into_iter()
            .find(|&k| src_value.positive(k) != tgt_value.positive(target_budget(k)))
            .map(|k| (mask, k))
    }
}

fn source_bitgraph(n: usize, directed: bool, mask: u64) -> BitGraph {
    let mut g = BitGraph::new(n, directed);
    for (bit, (a, b)) in pair_list(n, directed).into_iter().enumerate() {
        if mask >> bit & 1 == 1 {
            g.add_edge(a, b);
        }
    }
    g
}

/// Human-readable account of a verdict.
pub fn explain(v: &VerifierVerdict) -> String {
    match v {
        VerifierVerdict::Correct {
            bound_checked,
            bound_requested,
            characterization,
        } => {
            let mut s = String::new();
            if let Some(n) = bound_checked {
                write!(s, "No counterexample up to {n} nodes").unwrap();
                if let Some(r) = bound_requested.filter(|r| r > n) {
                    write!(s, " (time budget ran out before {r} nodes)").unwrap();
                }
                s.push_str(if *characterization {
                    "; characterization satisfied."
                } else {
                    "."
                });
            } else {
                s.push_str("Characterization satisfied.");
            }
            s
        }
        VerifierVerdict::Incorrect { counterexample } => describe_counterexample(counterexample),
        VerifierVerdict::CharacterizationViolation {
            violations,
            counterexample,
        } => {
            let mut s = String::new();
            for pv in violations {
                writeln!(s, "Property ({}) is violated. {}", pv.property, pv.explanation).unwrap();
            }
            if let Some(c) = counterexample {
                s.push_str(&describe_counterexample(c));
            }
            s.trim_end().to_string()
        }
    }
}

fn describe_graph(g: &Graph) -> String {
    let nodes: Vec<&str> = g.nodes().iter().map(|n| n.as_str()).collect();
    let arrow = if g.is_directed() { "->" } else { "-" };
    let edges: Vec<String> = g.edges().iter().map(|Edge(a, b)| format!("{a}{arrow}{b}")).collect();
    format!(
        "{} graph with nodes {{{}}} and edges {{{}}}",
        if g.is_directed() { "directed" } else { "undirected" },
        nodes.join(", "),
        edges.join(", ")
    )
}

fn describe_solution(s: &Solution) -> String {
    match s {
        Solution::Nodes(set) if set.is_empty() => "the empty set".to_string(),
        Solution::Nodes(set) => {
            let names: Vec<&str> = set.iter().map(|n| n.as_str()).collect();
            format!("{{{}}}", names.join(", "))
        }
        Solution::Cycle(order) => {
            let names: Vec<&str> = order.iter().map(|n| n.as_str()).collect();
            format!("the cycle {}", names.join(" - "))
        }
    }
}

fn describe_counterexample(c: &Counterexample) -> String {
    let budget = |b: Option<u64>| b.map(|k| format!(" with k = {k}")).unwrap_or_default();
    let mut s = format!(
        "Counterexample: the source instance is the {}{}.",
        describe_graph(&c.source.graph),
        budget(c.source.budget)
    );
    let plural = |n: usize, noun: &str| format!("{n} {noun}{}", if n == 1 { "" } else { "s" });
    let target = format!(
        "{}, {}{}",
        plural(c.target.graph.node_count(), "node"),
        plural(c.target.graph.edge_count(), "edge"),
        c.target.budget.map(|k| format!(", k = {k}")).unwrap_or_default()
    );
    match c.direction {
        Direction::PositiveLost => {
            write!(s, " It is positive").unwrap();
            if let Some(w) = &c.source_witness {
                write!(s, ", witnessed by {}", describe_solution(w)).unwrap();
            }
            write!(s, ", but its target instance ({}) is negative.", target).unwrap();
        }
        Direction::NegativeGained => {
            write!(s, " It is negative, but its target instance ({}) is positive", target).unwrap();
            match &c.target_witness {
                Some(w) => write!(s, ", witnessed by {}.", describe_solution(w)).unwrap(),
                None => s.push('.'),
            }
        }
    }
    s
}
