#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use gadgetlab::graph::{Graph, Mark, ProblemInstance};
use gadgetlab::reductions::{apply_reduction, catalog};
use gadgetlab_service::{router, AppState};
use serde_json::{json, Value};
use tower::ServiceExt;

pub fn workflows_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../workflows")
}

pub fn app(store: &Path) -> (Arc<AppState>, Router) {
    let state = AppState::load(&workflows_dir(), store, Duration::from_secs(30)).expect("service starts");
    (state.clone(), router(state))
}

pub async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()))
    };
    (status, value)
}

pub async fn new_session(app: &Router, workflow: &str) -> String {
    let (status, body) = call(app, "POST", "/api/v1/sessions", Some(json!({ "workflowId": workflow }))).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    body["sessionId"].as_str().unwrap().to_string()
}

pub async fn attempt(app: &Router, session: &str, task: &str, payload: Value) -> (StatusCode, Value) {
    let uri = format!("/api/v1/sessions/{session}/tasks/{task}/attempts");
    call(app, "POST", &uri, Some(json!({ "payload": payload }))).await
}

pub async fn state(app: &Router, session: &str) -> Value {
    let (status, body) = call(app, "GET", &format!("/api/v1/sessions/{session}"), None).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    body
}

fn graph(nodes: &[&str], edges: &[(&str, &str)]) -> Graph {
    Graph::from_parts(false, nodes.iter().copied(), edges.iter().copied()).unwrap()
}

/// The task graph as shipped, plus a selection.
fn with_selection(graph_json: &Value, nodes: &[&str], edges: &[(&str, &str)]) -> Value {
    let mut g: Graph = serde_json::from_value(graph_json.clone()).unwrap();
    for n in nodes {
        g.mark_node(Mark::Selected, n).unwrap();
    }
    for (a, b) in edges {
        g.mark_edge(Mark::Selected, a, b).unwrap();
    }
    serde_json::to_value(g).unwrap()
}

/// Renames every node so that the graph is only isomorphic to the original.
pub fn relabel(g: &Graph) -> Graph {
    let names: Vec<String> = (0..g.node_count()).map(|i| format!("x{i}")).collect();
    let index: std::collections::BTreeMap<&str, &str> = g
        .nodes()
        .iter()
        .rev()
        .zip(&names)
        .map(|(n, m)| (n.as_str(), m.as_str()))
        .collect();
    let edges: Vec<(&str, &str)> = g.edges().iter().map(|e| (index[e.0.as_str()], index[e.1.as_str()])).collect();
    Graph::from_parts(g.is_directed(), names.iter().map(String::as_str), edges).unwrap()
}

fn task<'a>(workflow: &'a Value, id: &str) -> &'a Value {
    workflow["tasks"].as_array().unwrap().iter().find(|t| t["id"] == id).unwrap()
}

/// Correct edge gadget workflow payloads in workflow order, built from the workflow
/// definition served by the API. The `2c-apply` payload is computed from the
/// triangle gadget the script submits for `2b-design`.
pub fn edge_gadget_script(workflow: &Value) -> Vec<(String, Value)> {
    let g = |id: &str| &task(workflow, id)["graph"];
    let source = |id: &str| -> ProblemInstance { serde_json::from_value(task(workflow, id)["source"].clone()).unwrap() };
    let vc_ds = apply_reduction(&catalog::vc_to_ds_triangle(), &source("1c-apply")).unwrap();
    let vc_fvs = apply_reduction(&catalog::vc_to_fvs(catalog::triangle()), &source("2c-apply")).unwrap();
    let contrast = graph(&["p", "q", "x", "y", "z"], &[("p", "q")]);
    [
        ("1a-cover", with_selection(g("1a-cover"), &["b"], &[])),
        ("1a-witness", with_selection(g("1a-witness"), &[], &[("c", "e")])),
        ("1b-dominate", with_selection(g("1b-dominate"), &["b", "d"], &[])),
        ("1b-contrast", with_selection(&serde_json::to_value(contrast).unwrap(), &["p", "x"], &[])),
        ("1c-apply", serde_json::to_value(relabel(&vc_ds.graph)).unwrap()),
        ("1c-transfer", json!(["b"])),
        ("1c-judge", json!([0])),
        ("2a-fvs", with_selection(g("2a-fvs"), &["c"], &[])),
        ("2a-cycle", with_selection(g("2a-cycle"), &[], &[("b", "c"), ("c", "d"), ("b", "d")])),
        ("2b-design", json!({ "edgeGadget": serde_json::to_value(catalog::triangle()).unwrap() })),
        ("2c-apply", serde_json::to_value(relabel(&vc_fvs.graph)).unwrap()),
    ]
    .into_iter()
    .map(|(t, p)| (t.to_string(), p))
    .collect()
}
