use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::{Arc, RwLock};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use gadgetlab::exercises::{parse_workflow, GradingContext, Session, SessionError, Snapshot, Workflow};
use gadgetlab::graph::ProblemInstance;
use gadgetlab::reductions::{apply_reduction, ReductionSpec};
use gadgetlab::verifier::{self, VerifierError, VerifierVerdict};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::store::{Event, Store, StoreError};

#[derive(Debug, Error)]
pub enum StartupError {
    #[error("cannot read workflows directory {0}: {1}")]
    WorkflowsDir(String, std::io::Error),
    #[error("workflow file {file}: {message}")]
    Workflow { file: String, message: String },
    #[error("workflow id {0} is defined twice")]
    DuplicateWorkflow(String),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("session log refers to unknown {0}")]
    Replay(String),
}

/// Error body of every failed request.
#[derive(Debug, Serialize, Deserialize)]
pub struct ApiError {
    #[serde(skip)]
    status: StatusCode,
    pub code: String,
    pub message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code: code.into(),
            message: message.into(),
        }
    }

    fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "notFound", message)
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, "badRequest", message)
    }

    fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self)).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let message = e.to_string();
        match e {
            SessionError::UnknownTask(_) => Self::not_found(message),
            SessionError::Locked(_) => Self::new(StatusCode::CONFLICT, "taskLocked", message),
            SessionError::Consumed { .. } => Self::new(StatusCode::CONFLICT, "outputsConsumed", message),
            SessionError::Malformed { .. } => Self::new(StatusCode::BAD_REQUEST, "malformedPayload", message),
            SessionError::Replay { .. } => Self::internal(message),
        }
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

fn parse_body<T: DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(format!("invalid request body: {e}")))
}

fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

/// Workflows, live sessions and the log they are persisted to.
pub struct AppState {
    workflows: BTreeMap<String, Arc<Workflow>>,
    sessions: RwLock<HashMap<String, Arc<tokio::sync::Mutex<Session>>>>,
    store: Arc<Store>,
    time_budget: Duration,
}

impl AppState {
    /// Loads every `*.json` workflow in `dir` and replays the session log.
    pub fn load(dir: &Path, store_path: &Path, time_budget: Duration) -> Result<Arc<Self>, StartupError> {
        let mut workflows = BTreeMap::new();
        let entries = std::fs::read_dir(dir).map_err(|e| StartupError::WorkflowsDir(dir.display().to_string(), e))?;
        let mut files: Vec<_> = entries
            .filter_map(Result::ok)
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        files.sort();
        for file in files {
            let name = file.display().to_string();
            let text = std::fs::read_to_string(&file).map_err(|e| StartupError::Workflow {
                file: name.clone(),
                message: e.to_string(),
            })?;
            let w = parse_workflow(&text).map_err(|d| StartupError::Workflow {
                file: name.clone(),
                message: d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "),
            })?;
            let id = w.id.clone();
            if workflows.insert(id.clone(), Arc::new(w)).is_some() {
                return Err(StartupError::DuplicateWorkflow(id));
            }
        }
        Self::with_workflows(workflows, store_path, time_budget)
    }

    pub fn with_workflows(
        workflows: BTreeMap<String, Arc<Workflow>>,
        store_path: &Path,
        time_budget: Duration,
    ) -> Result<Arc<Self>, StartupError> {
        let (store, events) = Store::open(store_path)?;
        let mut sessions = HashMap::new();
        for event in events {
            match event {
                Event::SessionCreated {
                    session_id,
                    workflow_id,
                    ..
                } => {
                    let w = workflows
                        .get(&workflow_id)
                        .ok_or_else(|| StartupError::Replay(format!("workflow {workflow_id}")))?;
                    sessions.insert(session_id.clone(), Session::new(session_id, w.clone()));
                }
                Event::Attempt { session_id, record } => {
                    let s = sessions
                        .get_mut(&session_id)
                        .ok_or_else(|| StartupError::Replay(format!("session {session_id}")))?;
                    s.apply(record).map_err(|e| StartupError::Replay(e.to_string()))?;
                }
            }
        }
        let sessions = sessions
            .into_iter()
            .map(|(id, s)| (id, Arc::new(tokio::sync::Mutex::new(s))))
            .collect();
        Ok(Arc::new(AppState {
            workflows,
            sessions: RwLock::new(sessions),
            store: Arc::new(store),
            time_budget,
        }))
    }

    fn session(&self, id: &str) -> Result<Arc<tokio::sync::Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::not_found(format!("unknown session {id}")))
    }

    pub fn session_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = self.sessions.read().unwrap_or_else(|e| e.into_inner()).keys().cloned().collect();
        ids.sort();
        ids
    }
}

/// The `/api/v1` router.
pub fn router(state: Arc<AppState>) -> Router {
    let api = Router::new()
        .route("/workflows", get(list_workflows))
        .route("/workflows/{id}", get(get_workflow))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/tasks/{task}/attempts", post(submit_attempt))
        .route("/tools/verify", post(verify_tool))
        .route("/tools/apply", post(apply_tool))
        .with_state(state);
    Router::new().nest("/api/v1", api).fallback(|| async { ApiError::not_found("no such route") })
}

#[derive(Serialize)]
struct WorkflowSummary {
    id: String,
    title: String,
}

async fn list_workflows(State(st): State<Arc<AppState>>) -> Json<Vec<WorkflowSummary>> {
    Json(
        st.workflows
            .values()
            .map(|w| WorkflowSummary {
                id: w.id.clone(),
                title: w.title.clone(),
            })
            .collect(),
    )
}

async fn get_workflow(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult<Workflow> {
    st.workflows
        .get(&id)
        .map(|w| Json((**w).clone()))
        .ok_or_else(|| ApiError::not_found(format!("unknown workflow {id}")))
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct CreateSession {
    workflow_id: String,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionCreated {
    pub session_id: String,
}

async fn create_session(State(st): State<Arc<AppState>>, body: Bytes) -> ApiResult<SessionCreated> {
    let req: CreateSession = parse_body(&body)?;
    let w = st
        .workflows
        .get(&req.workflow_id)
        .ok_or_else(|| ApiError::not_found(format!("unknown workflow {}", req.workflow_id)))?
        .clone();
    let id = uuid::Uuid::new_v4().to_string();
    let event = Event::SessionCreated {
        session_id: id.clone(),
        workflow_id: req.workflow_id,
        timestamp_ms: now_ms(),
    };
    let store = st.store.clone();
    tokio::task::spawn_blocking(move || store.append(&event))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))?
        .map_err(|e| ApiError::internal(e.to_string()))?;
    let session = Arc::new(tokio::sync::Mutex::new(Session::new(id.clone(), w)));
    st.sessions.write().unwrap_or_else(|e| e.into_inner()).insert(id.clone(), session);
    tracing::info!(session = %id, "session created");
    Ok(Json(SessionCreated { session_id: id }))
}

/// Session snapshot together with its hash.
#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionState {
    #[serde(flatten)]
    pub snapshot: Snapshot,
    pub state_hash: String,
}

async fn get_session(State(st): State<Arc<AppState>>, UrlPath(id): UrlPath<String>) -> ApiResult<SessionState> {
    let session = st.session(&id)?;
    let s = session.lock().await;
    Ok(Json(SessionState {
        snapshot: s.snapshot(),
        state_hash: s.state_hash(),
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AttemptRequest {
    payload: serde_json::Value,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AttemptResponse {
    pub verdict: gadgetlab::exercises::Grade,
    pub feedback: String,
    pub outputs_published: bool,
}

async fn submit_attempt(
    State(st): State<Arc<AppState>>,
    UrlPath((id, task)): UrlPath<(String, String)>,
    body: Bytes,
) -> ApiResult<AttemptResponse> {
    let req: AttemptRequest = parse_body(&body)?;
    let session = st.session(&id)?;
    // the guard serializes attempts within the session while grading runs
    let mut guard = session.lock_owned().await;
    let store = st.store.clone();
    let ctx = GradingContext {
        time_budget: Some(st.time_budget),
    };
    let record = tokio::task::spawn_blocking(move || -> Result<_, ApiError> {
        let outcome = guard.grade(&task, &req.payload, ctx)?;
        let record = gadgetlab::exercises::AttemptRecord {
            seq: guard.log().len() as u64 + 1,
            task_id: task,
            payload: req.payload,
            timestamp_ms: now_ms(),
            outcome,
        };
        store
            .append(&Event::Attempt {
                session_id: guard.id().to_string(),
                record: record.clone(),
            })
            .map_err(|e| ApiError::internal(e.to_string()))?;
        guard.apply(record.clone())?;
        Ok(record)
    })
    .await
    .map_err(|e| ApiError::internal(e.to_string()))??;
    Ok(Json(AttemptResponse {
        verdict: record.outcome.verdict,
        feedback: record.outcome.feedback,
        outputs_published: record.outcome.outputs_published,
    }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VerifyRequest {
    spec: ReductionSpec,
    #[serde(default)]
    bound: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyResponse {
    #[serde(flatten)]
    pub verdict: VerifierVerdict,
    pub explanation: String,
}

async fn verify_tool(State(st): State<Arc<AppState>>, body: Bytes) -> ApiResult<VerifyResponse> {
    let req: VerifyRequest = parse_body(&body)?;
    let budget = st.time_budget;
    let verdict = tokio::task::spawn_blocking(move || verifier::verify(&req.spec, req.bound, Some(budget)))
        .await
        .map_err(|e| ApiError::internal(e.to_string()))?
        .map_err(|e: VerifierError| ApiError::bad_request(e.to_string()))?;
    let explanation = verifier::explain(&verdict);
    Ok(Json(VerifyResponse { verdict, explanation }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ApplyRequest {
    spec: ReductionSpec,
    instance: ProblemInstance,
}

async fn apply_tool(body: Bytes) -> ApiResult<ProblemInstance> {
    let req: ApplyRequest = parse_body(&body)?;
    apply_reduction(&req.spec, &req.instance)
        .map(Json)
        .map_err(|e| ApiError::bad_request(e.to_string()))
}
