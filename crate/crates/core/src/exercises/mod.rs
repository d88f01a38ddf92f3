//! Multi-step exercises: workflows of tasks whose inputs may be outputs of
//! earlier tasks, and sessions that grade attempts and unlock tasks.

mod grade;
mod session;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constraints::Constraint;
use crate::graph::{Graph, NodeId, ProblemInstance};
use crate::problems::{check_instance, verify_candidate, ProblemId};
use crate::reductions::{EdgeGadget, Family, FamilyTag, GlobalGadget, NodeGadget, ParamMap, Policy, ReductionSpec};
use crate::verifier::{self, Method};

pub use grade::{Check, Grade, GradingContext};
pub use session::{Output, AttemptOutcome, AttemptRecord, Session, SessionError, Snapshot, Status, TaskSnapshot};

/// Reference to the output of an earlier task.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskRef {
    #[serde(rename = "ref")]
    pub task: String,
}

/// A task input given inline or taken from an earlier task's output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Input<T> {
    Ref(TaskRef),
    Inline(T),
}

impl<T> Input<T> {
    pub fn reference(&self) -> Option<&str> {
        match self {
            Input::Ref(r) => Some(&r.task),
            Input::Inline(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SelectionMode {
    Nodes,
    Edges,
}

/// Grades a node selection as a candidate solution of a problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemCheck {
    pub problem: ProblemId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "camelCase", deny_unknown_fields)]
pub enum VerifierChoice {
    Characterization,
    #[serde(rename_all = "camelCase")]
    Search {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_nodes: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum TaskKind {
    /// Build (or mark up) a graph satisfying constraints.
    #[serde(rename_all = "camelCase")]
    GraphConstruction {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        initial: Option<Input<Graph>>,
        #[serde(default = "default_true")]
        editable: bool,
        #[serde(default)]
        directed: bool,
        constraints: Constraint,
    },
    /// Select nodes or edges of a given graph.
    #[serde(rename_all = "camelCase")]
    Selection {
        graph: Input<Graph>,
        mode: SelectionMode,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        constraints: Option<Constraint>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        problem: Option<ProblemCheck>,
    },
    /// Design a gadget; the submission is verified as a reduction.
    #[serde(rename_all = "camelCase")]
    ReductionDesign {
        family: FamilyTag,
        source_problem: ProblemId,
        target_problem: ProblemId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        param_map: Option<ParamMap>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        source_budget: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sample_instance: Option<ProblemInstance>,
        verifier: VerifierChoice,
    },
    /// Construct the target instance of a reduction on a source instance.
    #[serde(rename_all = "camelCase")]
    ApplyReduction { spec: Input<ReductionSpec>, source: ProblemInstance },
    /// Select the target solution induced by a source solution.
    #[serde(rename_all = "camelCase")]
    SolutionTransfer {
        spec: Input<ReductionSpec>,
        source: ProblemInstance,
        source_solution: BTreeSet<NodeId>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        constraints: Option<Constraint>,
        /// Accept any selection that solves the target instance instead of
        /// requiring the induced one.
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        require_target_solution: bool,
    },
    #[serde(rename_all = "camelCase")]
    MultipleChoice { options: Vec<String>, correct: BTreeSet<usize> },
    #[serde(rename_all = "camelCase")]
    Text { body: String },
}

fn default_true() -> bool {
    true
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::GraphConstruction { .. } => "graphConstruction",
            TaskKind::Selection { .. } => "selection",
            TaskKind::ReductionDesign { .. } => "reductionDesign",
            TaskKind::ApplyReduction { .. } => "applyReduction",
            TaskKind::SolutionTransfer { .. } => "solutionTransfer",
            TaskKind::MultipleChoice { .. } => "multipleChoice",
            TaskKind::Text { .. } => "text",
        }
    }

    fn produces(&self) -> Produces {
        match self {
            TaskKind::GraphConstruction { .. }
            | TaskKind::Selection { .. }
            | TaskKind::ApplyReduction { .. }
            | TaskKind::SolutionTransfer { .. } => Produces::Graph,
            TaskKind::ReductionDesign { .. } => Produces::Spec,
            TaskKind::MultipleChoice { .. } | TaskKind::Text { .. } => Produces::Nothing,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Produces {
    Graph,
    Spec,
    Nothing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TaskDef {
    pub id: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub title: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub prompt: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub prerequisites: Vec<String>,
    #[serde(flatten)]
    pub kind: TaskKind,
}

impl TaskDef {
    /// Tasks whose outputs this task reads, with the kind of output expected.
    fn references(&self) -> Vec<(&str, Produces)> {
        let mut out = Vec::new();
        match &self.kind {
            TaskKind::GraphConstruction { initial: Some(i), .. } => out.extend(i.reference().map(|r| (r, Produces::Graph))),
            TaskKind::Selection { graph, .. } => out.extend(graph.reference().map(|r| (r, Produces::Graph))),
            TaskKind::ApplyReduction { spec, .. } | TaskKind::SolutionTransfer { spec, .. } => {
                out.extend(spec.reference().map(|r| (r, Produces::Spec)))
            }
            _ => {}
        }
        out
    }

    /// Explicit prerequisites plus referenced tasks.
    pub fn dependencies(&self) -> BTreeSet<&str> {
        self.prerequisites
            .iter()
            .map(String::as_str)
            .chain(self.references().into_iter().map(|(r, _)| r))
            .collect()
    }

    pub fn referenced_tasks(&self) -> Vec<&str> {
        self.references().into_iter().map(|(r, _)| r).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Workflow {
    pub id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub tasks: Vec<TaskDef>,
}

impl Workflow {
    pub fn task(&self, id: &str) -> Option<&TaskDef> {
        self.tasks.iter().find(|t| t.id == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<String>,
    pub message: String,
}

impl Diagnostic {
    fn at(task: &str, message: impl Into<String>) -> Self {
        Diagnostic {
            task: Some(task.to_string()),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.task {
            Some(t) => write!(f, "task {t}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// Parses a workflow document, reporting problems per task where possible.
pub fn parse_workflow(text: &str) -> Result<Workflow, Vec<Diagnostic>> {
    let top = |message: String| {
        vec![Diagnostic {
            task: None,
            message,
        }]
    };
    let raw: serde_json::Value = serde_json::from_str(text).map_err(|e| top(format!("syntax error: {e}")))?;
    let tasks = raw.get("tasks").and_then(|t| t.as_array()).cloned().unwrap_or_default();
    let mut diags = Vec::new();
    for (i, t) in tasks.iter().enumerate() {
        if let Err(e) = serde_json::from_value::<TaskDef>(t.clone()) {
            let id = t.get("id").and_then(|v| v.as_str()).map(str::to_string).unwrap_or_else(|| format!("#{i}"));
            diags.push(Diagnostic::at(&id, e.to_string()));
        }
    }
    if !diags.is_empty() {
        return Err(diags);
    }
    let w: Workflow = serde_json::from_value(raw).map_err(|e| top(e.to_string()))?;
    let diags = validate_workflow(&w);
    if diags.is_empty() {
        Ok(w)
    } else {
        Err(diags)
    }
}

/// Checks a workflow's structure and the consistency of its tasks. Returns
/// no diagnostics iff the workflow is usable.
pub fn validate_workflow(w: &Workflow) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let mut position = BTreeMap::new();
    for (i, t) in w.tasks.iter().enumerate() {
        if t.id.is_empty() {
            diags.push(Diagnostic::at(&t.id, "empty task id"));
        }
        if position.insert(t.id.as_str(), i).is_some() {
            diags.push(Diagnostic::at(&t.id, "duplicate task id"));
        }
    }
    if w.tasks.is_empty() {
        diags.push(Diagnostic {
            task: None,
            message: "workflow has no tasks".into(),
        });
    }

    for (i, t) in w.tasks.iter().enumerate() {
        for p in &t.prerequisites {
            if !position.contains_key(p.as_str()) {
                diags.push(Diagnostic::at(&t.id, format!("unresolved reference {p}")));
            }
        }
        for (r, wanted) in t.references() {
            let Some(&j) = position.get(r) else {
                diags.push(Diagnostic::at(&t.id, format!("unresolved reference {r}")));
                continue;
            };
            if j >= i {
                diags.push(Diagnostic::at(&t.id, format!("reference {r} must point to an earlier task")));
            }
            let produced = w.tasks[j].kind.produces();
            if produced != wanted {
                let what = if wanted == Produces::Graph { "a graph" } else { "a reduction" };
                diags.push(Diagnostic::at(&t.id, format!("reference {r} does not produce {what}")));
            }
        }
        check_task(w, t, &mut diags);
    }

    if let Some(cycle) = find_cycle(w) {
        diags.push(Diagnostic {
            task: cycle.first().map(|s| s.to_string()),
            message: format!("cycle in prerequisites: {}", cycle.join(" -> ")),
        });
    }
    diags
}

fn find_cycle(w: &Workflow) -> Option<Vec<String>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    fn visit<'a>(
        w: &'a Workflow,
        id: &'a str,
        marks: &mut BTreeMap<&'a str, Mark>,
        stack: &mut Vec<&'a str>,
    ) -> Option<Vec<String>> {
        match marks.get(id).copied() {
            Some(Mark::Done) | None => return None,
            Some(Mark::Active) => {
                let from = stack.iter().position(|s| *s == id).expect("active on stack");
                let mut cycle: Vec<String> = stack[from..].iter().map(|s| s.to_string()).collect();
                cycle.push(id.to_string());
                return Some(cycle);
            }
            Some(Mark::New) => {}
        }
        marks.insert(id, Mark::Active);
        stack.push(id);
        let task = w.task(id).expect("known id");
        for dep in task.dependencies() {
            if let Some(c) = visit(w, dep, marks, stack) {
                return Some(c);
            }
        }
        stack.pop();
        marks.insert(id, Mark::Done);
        None
    }
    let mut marks: BTreeMap<&str, Mark> = w.tasks.iter().map(|t| (t.id.as_str(), Mark::New)).collect();
    for t in &w.tasks {
        if let Some(c) = visit(w, &t.id, &mut marks, &mut Vec::new()) {
            return Some(c);
        }
    }
    None
}

/// A spec with placeholder gadgets, used to check that a design task's
/// problems and family fit together before any gadget exists.
fn placeholder_spec(
    family: FamilyTag,
    source: ProblemId,
    target: ProblemId,
    param_map: Option<ParamMap>,
    source_budget: Option<u64>,
) -> Result<ReductionSpec, String> {
    let one = |directed| {
        Graph::from_parts(directed, ["x"], []).expect("valid")
    };
    let family = match family {
        FamilyTag::Edge => Family::Edge {
            edge: crate::reductions::catalog::bare_edge(),
            non_edge: None,
        },
        FamilyTag::Node => Family::Node(NodeGadget::new(one(false), "x".into(), "x".into(), None).map_err(|e| e.to_string())?),
        FamilyTag::Global => Family::Global(
            GlobalGadget::new(one(source.directed_input()), [("x".into(), Policy::All)].into_iter().collect())
                .map_err(|e| e.to_string())?,
        ),
    };
    ReductionSpec::new(family, source, target, param_map, source_budget).map_err(|e| e.to_string())
}

fn check_task(w: &Workflow, t: &TaskDef, diags: &mut Vec<Diagnostic>) {
    let mut err = |m: String| diags.push(Diagnostic::at(&t.id, m));
    // source problem of a spec input, when it can be known statically
    let spec_source = |spec: &Input<ReductionSpec>| -> Option<(ProblemId, ProblemId)> {
        match spec {
            Input::Inline(s) => Some((s.source_problem(), s.target_problem())),
            Input::Ref(r) => match w.task(&r.task).map(|d| &d.kind) {
                Some(TaskKind::ReductionDesign {
                    source_problem,
                    target_problem,
                    ..
                }) => Some((*source_problem, *target_problem)),
                _ => None,
            },
        }
    };
    match &t.kind {
        TaskKind::GraphConstruction {
            initial: Some(Input::Inline(g)),
            directed,
            ..
        } if g.is_directed() != *directed => {
            err("initial graph directedness differs from the task's".into());
        }
        TaskKind::GraphConstruction {
            initial: None,
            editable: false,
            ..
        } => err("a non-editable construction task needs an initial graph".into()),
        TaskKind::Selection {
            graph,
            mode,
            problem: Some(pc),
            ..
        } => {
            if *mode != SelectionMode::Nodes {
                err("problem checks grade node selections".into());
            }
            if pc.problem.is_cycle_problem() {
                err(format!("{} solutions are cycles, not selections", pc.problem));
            } else if let Input::Inline(g) = graph {
                if let Err(e) = check_instance(pc.problem, &ProblemInstance::new(g.unmarked(), pc.budget)) {
                    err(e.to_string());
                }
            } else if pc.budget.is_none() {
                err(format!("{} requires a budget", pc.problem));
            }
        }
        TaskKind::ReductionDesign {
            family,
            source_problem,
            target_problem,
            param_map,
            source_budget,
            sample_instance,
            verifier: choice,
        } => match placeholder_spec(*family, *source_problem, *target_problem, *param_map, *source_budget) {
            Err(e) => err(e),
            Ok(spec) => {
                match verifier::support(&spec) {
                    Err(e) => err(e.to_string()),
                    Ok(sup) => {
                        if *choice == VerifierChoice::Characterization && sup.method != Method::CharacterizationAndSearch {
                            err("no characterization is available for this reduction; use search".into());
                        }
                    }
                }
                if let Some(sample) = sample_instance {
                    if let Err(e) = check_instance(*source_problem, sample) {
                        err(format!("sample instance: {e}"));
                    }
                }
            }
        },
        TaskKind::ApplyReduction { spec, source } => {
            if let Some((sp, _)) = spec_source(spec) {
                if let Err(e) = check_instance(sp, source) {
                    err(format!("source instance: {e}"));
                }
            }
        }
        TaskKind::SolutionTransfer {
            spec,
            source,
            source_solution,
            ..
        } => {
            if let Some((sp, tp)) = spec_source(spec) {
                if sp.is_cycle_problem() || tp.is_cycle_problem() {
                    err("solution transfer needs subset problems".into());
                } else {
                    match verify_candidate(sp, source, source_solution) {
                        Err(e) => err(format!("source instance: {e}")),
                        Ok(c) if !c.is_valid() => err("the source solution is not a solution".into()),
                        Ok(_) => {}
                    }
                }
            }
        }
        TaskKind::MultipleChoice { options, correct } => {
            if options.is_empty() {
                err("multiple choice needs options".into());
            }
            if let Some(i) = correct.iter().find(|&&i| i >= options.len()) {
                err(format!("correct option {i} does not exist"));
            }
        }
        _ => {}
    }
}

/// Gadget fields a design submission may carry.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct GadgetSubmission {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_gadget: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_edge_gadget: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_gadget: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_gadget: Option<serde_json::Value>,
}

impl GadgetSubmission {
    /// Builds the family payload; errors are student-facing messages.
    pub fn family(&self, tag: FamilyTag) -> Result<Family, String> {
        fn parse<T: serde::de::DeserializeOwned>(v: &serde_json::Value, what: &str) -> Result<T, String> {
            serde_json::from_value(v.clone()).map_err(|e| format!("{what}: {e}"))
        }
        let missing = |what: &str| format!("the submission needs a {what}");
        let stray = |what: &str| Err(format!("a {what} does not belong to this task's gadget family"));
        match tag {
            FamilyTag::Edge => {
                if self.node_gadget.is_some() {
                    return stray("node gadget");
                }
                if self.global_gadget.is_some() {
                    return stray("global gadget");
                }
                let edge: EdgeGadget = parse(self.edge_gadget.as_ref().ok_or_else(|| missing("edge gadget"))?, "edge gadget")?;
                let non_edge = self
                    .non_edge_gadget
                    .as_ref()
                    .map(|v| parse::<EdgeGadget>(v, "non-edge gadget"))
                    .transpose()?;
                Ok(Family::Edge { edge, non_edge })
            }
            FamilyTag::Node => {
                if self.edge_gadget.is_some() || self.non_edge_gadget.is_some() {
                    return stray("edge gadget");
                }
                if self.global_gadget.is_some() {
                    return stray("global gadget");
                }
                Ok(Family::Node(parse(self.node_gadget.as_ref().ok_or_else(|| missing("node gadget"))?, "node gadget")?))
            }
            FamilyTag::Global => {
                if self.edge_gadget.is_some() || self.non_edge_gadget.is_some() {
                    return stray("edge gadget");
                }
                if self.node_gadget.is_some() {
                    return stray("node gadget");
                }
                Ok(Family::Global(parse(
                    self.global_gadget.as_ref().ok_or_else(|| missing("global gadget"))?,
                    "global gadget",
                )?))
            }
        }
    }
}

#[cfg(test)]
mod tests;
