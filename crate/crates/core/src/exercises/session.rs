use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::grade::{self, Grade, GradingContext, Resolved};
use super::{Input, TaskDef, TaskKind, Workflow};
use crate::graph::{Graph, ProblemInstance};
use crate::reductions::ReductionSpec;

/// What a completed task publishes for later tasks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Output {
    Graph(Graph),
    Spec(ReductionSpec),
    Instance(ProblemInstance),
    Choices(BTreeSet<usize>),
}

impl Output {
    fn graph(&self) -> Option<&Graph> {
        match self {
            Output::Graph(g) => Some(g),
            Output::Instance(i) => Some(&i.graph),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Locked,
    Open,
    Completed,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SessionError {
    #[error("unknown task {0}")]
    UnknownTask(String),
    #[error("task {0} is locked until its prerequisites are completed")]
    Locked(String),
    #[error("task {task} is completed and its output is used by task {by}")]
    Consumed { task: String, by: String },
    #[error("malformed payload for task {task}: {message}")]
    Malformed { task: String, message: String },
    #[error("cannot replay attempt {seq}: {reason}")]
    Replay { seq: u64, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AttemptOutcome {
    pub verdict: Grade,
    pub feedback: String,
    pub outputs_published: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Output>,
}

/// One graded attempt, as stored in a session log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AttemptRecord {
    pub seq: u64,
    pub task_id: String,
    pub payload: Value,
    pub timestamp_ms: u64,
    pub outcome: AttemptOutcome,
}

#[derive(Debug, Clone, Default)]
struct TaskState {
    attempts: u32,
    completed: bool,
    outputs: Option<Output>,
    last_success: Option<bool>,
    last_feedback: Option<String>,
    consumed_by: BTreeSet<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TaskSnapshot {
    pub id: String,
    pub kind: String,
    pub status: Status,
    pub attempts: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_success: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_feedback: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<Output>,
}

/// Session state with tasks in workflow order. Carries no timestamps, so
/// equal attempt sequences give equal snapshots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Snapshot {
    pub session_id: String,
    pub workflow_id: String,
    pub attempt_count: usize,
    pub tasks: Vec<TaskSnapshot>,
}

/// A learner's progress through one workflow.
#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    workflow: Arc<Workflow>,
    states: BTreeMap<String, TaskState>,
    log: Vec<AttemptRecord>,
}

impl Session {
    /// A fresh session. The workflow is assumed to be validated.
    pub fn new(id: impl Into<String>, workflow: Arc<Workflow>) -> Self {
        let states = workflow.tasks.iter().map(|t| (t.id.clone(), TaskState::default())).collect();
        Session {
            id: id.into(),
            workflow,
            states,
            log: Vec::new(),
        }
    }

    /// Rebuilds a session from its attempt log without regrading.
    pub fn restore(
        id: impl Into<String>,
        workflow: Arc<Workflow>,
        records: impl IntoIterator<Item = AttemptRecord>,
    ) -> Result<Self, SessionError> {
        let mut s = Session::new(id, workflow);
        for r in records {
            s.apply(r)?;
        }
        Ok(s)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn workflow(&self) -> &Workflow {
        &self.workflow
    }

    pub fn log(&self) -> &[AttemptRecord] {
        &self.log
    }

    pub fn status(&self, task_id: &str) -> Option<Status> {
        let task = self.workflow.task(task_id)?;
        Some(self.status_of(task))
    }

    fn status_of(&self, task: &TaskDef) -> Status {
        if self.states[&task.id].completed {
            Status::Completed
        } else if task.dependencies().iter().all(|d| self.states[*d].completed) {
            Status::Open
        } else {
            Status::Locked
        }
    }

    /// Published output of a completed task.
    pub fn output(&self, task_id: &str) -> Option<&Output> {
        self.states.get(task_id)?.outputs.as_ref()
    }

    /// Grades an attempt and records it.
    pub fn submit(
        &mut self,
        task_id: &str,
        payload: Value,
        ctx: GradingContext,
        timestamp_ms: u64,
    ) -> Result<AttemptRecord, SessionError> {
        let outcome = self.grade(task_id, &payload, ctx)?;
        let record = AttemptRecord {
            seq: self.log.len() as u64 + 1,
            task_id: task_id.to_string(),
            payload,
            timestamp_ms,
            outcome,
        };
        self.apply(record.clone())?;
        Ok(record)
    }

    /// Grades an attempt without recording it.
    pub fn grade(&self, task_id: &str, payload: &Value, ctx: GradingContext) -> Result<AttemptOutcome, SessionError> {
        let task = self
            .workflow
            .task(task_id)
            .ok_or_else(|| SessionError::UnknownTask(task_id.to_string()))?;
        self.check_submittable(task)?;
        let inputs = self.resolve(task);
        let (verdict, outputs) = grade::grade(task, inputs, payload, ctx).map_err(|m| SessionError::Malformed {
            task: task_id.to_string(),
            message: m.0,
        })?;
        let feedback = verdict.feedback();
        let success = verdict.success;
        Ok(AttemptOutcome {
            verdict,
            feedback,
            outputs_published: success,
            outputs: if success { outputs } else { None },
        })
    }

    fn check_submittable(&self, task: &TaskDef) -> Result<(), SessionError> {
        match self.status_of(task) {
            Status::Locked => Err(SessionError::Locked(task.id.clone())),
            Status::Completed => match self.states[&task.id].consumed_by.first() {
                Some(by) => Err(SessionError::Consumed {
                    task: task.id.clone(),
                    by: by.clone(),
                }),
                None => Ok(()),
            },
            Status::Open => Ok(()),
        }
    }

    fn resolve<'a>(&'a self, task: &'a TaskDef) -> Resolved<'a> {
        let graph_ref = |input: &Input<Graph>| -> Graph {
            match input {
                Input::Inline(g) => g.clone(),
                Input::Ref(r) => self.states[&r.task]
                    .outputs
                    .as_ref()
                    .and_then(Output::graph)
                    .expect("referenced task completed with a graph")
                    .clone(),
            }
        };
        match &task.kind {
            TaskKind::GraphConstruction { initial, .. } => Resolved {
                graph: initial.as_ref().map(graph_ref),
                spec: None,
            },
            TaskKind::Selection { graph, .. } => Resolved {
                graph: Some(graph_ref(graph)),
                spec: None,
            },
            TaskKind::ApplyReduction { spec, .. } | TaskKind::SolutionTransfer { spec, .. } => Resolved {
                graph: None,
                spec: Some(self.spec_input(spec)),
            },
            _ => Resolved { graph: None, spec: None },
        }
    }

    fn spec_input<'a>(&'a self, input: &'a Input<ReductionSpec>) -> &'a ReductionSpec {
        match input {
            Input::Inline(s) => s,
            Input::Ref(r) => match self.states[&r.task].outputs.as_ref() {
                Some(Output::Spec(s)) => s,
                _ => panic!("referenced task completed with a reduction"),
            },
        }
    }

    /// Records an already graded attempt. Used by [`Session::submit`] and
    /// when replaying a stored log.
    pub fn apply(&mut self, record: AttemptRecord) -> Result<(), SessionError> {
        let expected = self.log.len() as u64 + 1;
        let fail = |reason: String| SessionError::Replay {
            seq: record.seq,
            reason,
        };
        if record.seq != expected {
            return Err(fail(format!("expected sequence number {expected}")));
        }
        let task = self
            .workflow
            .task(&record.task_id)
            .ok_or_else(|| fail(format!("unknown task {}", record.task_id)))?;
        if record.outcome.outputs_published != record.outcome.verdict.success {
            return Err(fail("outputs published without success".into()));
        }
        let refs: Vec<String> = task.referenced_tasks().into_iter().map(str::to_string).collect();
        for r in refs {
            self.states.get_mut(&r).expect("validated reference").consumed_by.insert(record.task_id.clone());
        }
        let state = self.states.get_mut(&record.task_id).expect("known task");
        state.attempts += 1;
        state.last_success = Some(record.outcome.verdict.success);
        state.last_feedback = Some(record.outcome.feedback.clone());
        if record.outcome.outputs_published {
            state.completed = true;
            state.outputs = record.outcome.outputs.clone();
        }
        self.log.push(record);
        Ok(())
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot {
            session_id: self.id.clone(),
            workflow_id: self.workflow.id.clone(),
            attempt_count: self.log.len(),
            tasks: self
                .workflow
                .tasks
                .iter()
                .map(|t| {
                    let s = &self.states[&t.id];
                    TaskSnapshot {
                        id: t.id.clone(),
                        kind: t.kind.name().to_string(),
                        status: self.status_of(t),
                        attempts: s.attempts,
                        last_success: s.last_success,
                        last_feedback: s.last_feedback.clone(),
                        outputs: s.outputs.clone(),
                    }
                })
                .collect(),
        }
    }

    /// SHA-256 of the canonical snapshot, as lowercase hex.
    pub fn state_hash(&self) -> String {
        let text = serde_json::to_string(&self.snapshot()).expect("snapshot serializes");
        let mut out = String::with_capacity(64);
        for b in Sha256::digest(text.as_bytes()) {
            write!(out, "{b:02x}").expect("writing to a string");
        }
        out
    }
}
