use std::collections::BTreeSet;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::session::Output;
use super::{GadgetSubmission, ProblemCheck, SelectionMode, TaskDef, TaskKind, VerifierChoice};
use crate::constraints::Verdict;
use crate::graph::{isomorphic, Graph, Mark, NodeId, ProblemInstance};
use crate::problems::{verify_candidate, CandidateCheck};
use crate::reductions::{apply_reduction, transfer_solution, ReductionSpec};
use crate::verifier::{self, VerifierVerdict};

/// Settings that affect grading but are not part of a workflow.
#[derive(Debug, Clone, Copy, Default)]
pub struct GradingContext {
    /// Wall-clock limit for exhaustive reduction checks.
    pub time_budget: Option<Duration>,
}

/// One component of a grade.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "camelCase")]
pub enum Check {
    /// The submitted graph changed something the task fixes.
    Structure { message: String },
    Constraints { verdict: Verdict },
    Candidate { result: CandidateCheck },
    #[serde(rename_all = "camelCase")]
    Reduction { verdict: VerifierVerdict },
    /// The design's reduction applied to the task's sample instance.
    Sample { target: ProblemInstance },
    #[serde(rename_all = "camelCase")]
    TargetInstance { isomorphic: bool },
    InducedSolution { matches: bool },
    Choice { correct: bool },
    /// A submission that could not be evaluated, with the reason.
    Rejected { message: String },
    Acknowledged,
}

impl Check {
    fn passed(&self) -> bool {
        match self {
            Check::Structure { .. } | Check::Rejected { .. } => false,
            Check::Constraints { verdict } => verdict.satisfied,
            Check::Candidate { result } => result.is_valid(),
            Check::Reduction { verdict } => verdict.is_correct(),
            Check::TargetInstance { isomorphic } => *isomorphic,
            Check::InducedSolution { matches } => *matches,
            Check::Choice { correct } => *correct,
            Check::Sample { .. } | Check::Acknowledged => true,
        }
    }

    fn feedback(&self) -> Vec<String> {
        match self {
            Check::Structure { message } | Check::Rejected { message } => vec![message.clone()],
            Check::Constraints { verdict } => verdict.violations.iter().map(|v| v.message.clone()).collect(),
            Check::Candidate { result } => match result {
                CandidateCheck::Valid => vec![],
                CandidateCheck::Invalid { witness } => vec![format!("Not a solution: {witness}.")],
            },
            Check::Reduction { verdict } => vec![verifier::explain(verdict)],
            Check::TargetInstance { isomorphic: false } => {
                vec!["The graph is not the target instance of the reduction.".into()]
            }
            Check::InducedSolution { matches: false } => {
                vec!["The selection is not the solution induced by the source solution.".into()]
            }
            Check::Choice { correct: false } => vec!["That answer is not correct.".into()],
            _ => vec![],
        }
    }
}

/// The outcome of grading one attempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grade {
    pub success: bool,
    pub checks: Vec<Check>,
}

impl Grade {
    fn from_checks(checks: Vec<Check>) -> Self {
        Grade {
            success: checks.iter().all(Check::passed),
            checks,
        }
    }

    /// Human-readable feedback, one line per finding.
    pub fn feedback(&self) -> String {
        let lines: Vec<String> = self.checks.iter().flat_map(Check::feedback).collect();
        if lines.is_empty() {
            if self.success { "Correct.".into() } else { "Incorrect.".into() }
        } else {
            lines.join("\n")
        }
    }
}

/// The payload is not of the shape the task expects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Malformed(pub String);

pub(super) struct Resolved<'a> {
    pub graph: Option<Graph>,
    pub spec: Option<&'a ReductionSpec>,
}

fn parse<T: serde::de::DeserializeOwned>(payload: &Value, what: &str) -> Result<T, Malformed> {
    serde_json::from_value(payload.clone()).map_err(|e| Malformed(format!("expected {what}: {e}")))
}

fn rejected(message: impl Into<String>) -> (Grade, Option<Output>) {
    (
        Grade::from_checks(vec![Check::Rejected {
            message: message.into(),
        }]),
        None,
    )
}

/// Grades `payload` against `task`, with references already resolved.
pub(super) fn grade(
    task: &TaskDef,
    inputs: Resolved<'_>,
    payload: &Value,
    ctx: GradingContext,
) -> Result<(Grade, Option<Output>), Malformed> {
    match &task.kind {
        TaskKind::GraphConstruction {
            editable,
            directed,
            constraints,
            ..
        } => {
            let g: Graph = parse(payload, "a graph")?;
            let mut checks = Vec::new();
            let expected_directed = inputs.graph.as_ref().map_or(*directed, Graph::is_directed);
            if g.is_directed() != expected_directed {
                checks.push(Check::Structure {
                    message: format!("The graph must be {}.", if expected_directed { "directed" } else { "undirected" }),
                });
            } else if let (false, Some(initial)) = (*editable, &inputs.graph) {
                if !g.same_structure(initial) {
                    checks.push(Check::Structure {
                        message: "The nodes and edges are fixed; only marks may change.".into(),
                    });
                }
            }
            if checks.is_empty() {
                checks.push(Check::Constraints {
                    verdict: constraints.check(&g),
                });
            }
            let grade = Grade::from_checks(checks);
            Ok((grade, Some(Output::Graph(g))))
        }
        TaskKind::Selection {
            mode,
            constraints,
            problem,
            ..
        } => {
            let base = inputs.graph.expect("selection graph resolved");
            let submitted: Graph = parse(payload, "a graph")?;
            if !submitted.same_structure(&base) {
                return Ok(rejected("The graph must not change; only select."));
            }
            let stray = match mode {
                SelectionMode::Nodes => !submitted.selected_edges().is_empty(),
                SelectionMode::Edges => !submitted.selected_nodes().is_empty(),
            };
            if stray {
                let what = if *mode == SelectionMode::Nodes { "nodes" } else { "edges" };
                return Ok(rejected(format!("Select {what} only.")));
            }
            let graded = with_selection(&base, &submitted);
            let mut checks = Vec::new();
            if let Some(c) = constraints {
                checks.push(Check::Constraints { verdict: c.check(&graded) });
            }
            if let Some(ProblemCheck { problem, budget }) = problem {
                let inst = ProblemInstance::new(base.unmarked(), *budget);
                match verify_candidate(*problem, &inst, graded.selected_nodes()) {
                    Ok(result) => checks.push(Check::Candidate { result }),
                    Err(e) => checks.push(Check::Rejected { message: e.to_string() }),
                }
            }
            if checks.is_empty() {
                checks.push(Check::Acknowledged);
            }
            Ok((Grade::from_checks(checks), Some(Output::Graph(graded))))
        }
        TaskKind::ReductionDesign {
            family,
            source_problem,
            target_problem,
            param_map,
            source_budget,
            sample_instance,
            verifier: choice,
        } => {
            let submission: GadgetSubmission = parse(payload, "gadget fields")?;
            let fam = match submission.family(*family) {
                Ok(f) => f,
                Err(m) => return Ok(rejected(m)),
            };
            let spec = match ReductionSpec::new(fam, *source_problem, *target_problem, *param_map, *source_budget) {
                Ok(s) => s,
                Err(e) => return Ok(rejected(e.to_string())),
            };
            let verdict = match choice {
                VerifierChoice::Characterization => verifier::verify_vc_to_fvs_spec(&spec),
                VerifierChoice::Search { max_nodes } => verifier::verify(&spec, *max_nodes, ctx.time_budget),
            };
            let mut checks = match verdict {
                Ok(verdict) => vec![Check::Reduction { verdict }],
                Err(e) => vec![Check::Rejected { message: e.to_string() }],
            };
            if let Some(sample) = sample_instance {
                match apply_reduction(&spec, sample) {
                    Ok(target) => checks.push(Check::Sample { target }),
                    Err(e) => checks.push(Check::Rejected {
                        message: format!("the reduction cannot be applied to the sample instance: {e}"),
                    }),
                }
            }
            Ok((Grade::from_checks(checks), Some(Output::Spec(spec))))
        }
        TaskKind::ApplyReduction { source, .. } => {
            let spec = inputs.spec.expect("spec resolved");
            let g: Graph = parse(payload, "a graph")?;
            let target = match apply_reduction(spec, source) {
                Ok(t) => t,
                Err(e) => return Ok(rejected(format!("The reduction cannot be applied: {e}"))),
            };
            let iso = matches!(isomorphic(&g.unmarked(), &target.graph, false), Ok(Some(_)));
            let grade = Grade::from_checks(vec![Check::TargetInstance { isomorphic: iso }]);
            Ok((grade, Some(Output::Instance(target))))
        }
        TaskKind::SolutionTransfer {
            source,
            source_solution,
            constraints,
            require_target_solution,
            ..
        } => {
            let spec = inputs.spec.expect("spec resolved");
            let selection: BTreeSet<NodeId> = parse(payload, "a list of node ids")?;
            let target = match apply_reduction(spec, source) {
                Ok(t) => t,
                Err(e) => return Ok(rejected(format!("The reduction cannot be applied: {e}"))),
            };
            if let Some(n) = selection.iter().find(|n| !target.graph.contains_node(n.as_str())) {
                return Ok(rejected(format!("Node {n} is not in the target instance.")));
            }
            let mut marked = target.graph.clone();
            for n in &selection {
                marked.mark_node(Mark::Selected, n.as_str()).expect("node present");
            }
            let mut checks = Vec::new();
            if let Some(c) = constraints {
                checks.push(Check::Constraints { verdict: c.check(&marked) });
            }
            if *require_target_solution {
                match verify_candidate(spec.target_problem(), &target, &selection) {
                    Ok(result) => checks.push(Check::Candidate { result }),
                    Err(e) => checks.push(Check::Rejected { message: e.to_string() }),
                }
            }
            if checks.is_empty() {
                match transfer_solution(spec, source, source_solution) {
                    Ok(image) => checks.push(Check::InducedSolution {
                        matches: image == selection,
                    }),
                    Err(e) => checks.push(Check::Rejected { message: e.to_string() }),
                }
            }
            Ok((Grade::from_checks(checks), Some(Output::Graph(marked))))
        }
        TaskKind::MultipleChoice { options, correct } => {
            let chosen: BTreeSet<usize> = parse(payload, "a list of option indices")?;
            if let Some(i) = chosen.iter().find(|&&i| i >= options.len()) {
                return Err(Malformed(format!("option {i} does not exist")));
            }
            let grade = Grade::from_checks(vec![Check::Choice {
                correct: &chosen == correct,
            }]);
            Ok((grade, Some(Output::Choices(chosen))))
        }
        TaskKind::Text { .. } => Ok((Grade::from_checks(vec![Check::Acknowledged]), None)),
    }
}

/// `base` with its selection replaced by the one in `submitted`.
fn with_selection(base: &Graph, submitted: &Graph) -> Graph {
    let mut g = base.unmarked();
    for n in base.highlighted_nodes() {
        g.mark_node(Mark::Highlighted, n.as_str()).expect("same graph");
    }
    for e in base.highlighted_edges() {
        g.mark_edge(Mark::Highlighted, e.0.as_str(), e.1.as_str()).expect("same graph");
    }
    for n in submitted.selected_nodes() {
        g.mark_node(Mark::Selected, n.as_str()).expect("same structure");
    }
    for e in submitted.selected_edges() {
        g.mark_edge(Mark::Selected, e.0.as_str(), e.1.as_str()).expect("same structure");
    }
    g
}
