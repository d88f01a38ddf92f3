use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use serde_json::{json, Value};

use super::*;
use crate::graph::Mark;
use crate::reductions::{apply_reduction, catalog};

const EDGE_GADGETS: &str = include_str!("../../../../workflows/edge-gadgets.json");
const SHIPPED: [(&str, &str); 4] = [
    ("edge-gadgets", EDGE_GADGETS),
    ("global", include_str!("../../../../workflows/assignment-1-global.json")),
    ("edge", include_str!("../../../../workflows/assignment-2-edge.json")),
    ("non-edge", include_str!("../../../../workflows/assignment-3-nonedge.json")),
];

fn edge_workflow() -> Arc<Workflow> {
    Arc::new(parse_workflow(EDGE_GADGETS).expect("the edge gadget workflow is valid"))
}

fn ctx() -> GradingContext {
    GradingContext::default()
}

fn graph(nodes: &[&str], edges: &[(&str, &str)]) -> Graph {
    Graph::from_parts(false, nodes.iter().copied(), edges.iter().copied()).unwrap()
}

fn select_nodes(mut g: Graph, nodes: &[&str]) -> Value {
    for n in nodes {
        g.mark_node(Mark::Selected, n).unwrap();
    }
    serde_json::to_value(g).unwrap()
}

fn select_edges(mut g: Graph, edges: &[(&str, &str)]) -> Value {
    for (a, b) in edges {
        g.mark_edge(Mark::Selected, a, b).unwrap();
    }
    serde_json::to_value(g).unwrap()
}

/// The same graph with every node renamed, so that only isomorphism holds.
fn renamed(g: &Graph) -> Graph {
    let names: Vec<String> = g.nodes().iter().rev().enumerate().map(|(i, _)| format!("n{i}")).collect();
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

fn task_graph(w: &Workflow, id: &str) -> Graph {
    match &w.task(id).unwrap().kind {
        TaskKind::Selection {
            graph: Input::Inline(g),
            ..
        } => g.unmarked(),
        _ => panic!("{id} has an inline graph"),
    }
}

fn apply_source(w: &Workflow, id: &str) -> ProblemInstance {
    match &w.task(id).unwrap().kind {
        TaskKind::ApplyReduction { source, .. } => source.clone(),
        _ => panic!("{id} is an apply task"),
    }
}

fn triangle_design() -> Value {
    json!({ "edgeGadget": serde_json::to_value(catalog::triangle()).unwrap() })
}

/// Correct payloads for every edge gadget workflow task, in workflow order.
fn edge_solutions(w: &Workflow) -> Vec<(&'static str, Value)> {
    let vc_ds = catalog::vc_to_ds_triangle();
    let contrast = graph(&["p", "q", "x", "y", "z"], &[("p", "q")]);
    let vc_fvs_target = apply_reduction(&catalog::vc_to_fvs(catalog::triangle()), &apply_source(w, "2c-apply")).unwrap();
    vec![
        ("1a-cover", select_nodes(task_graph(w, "1a-cover"), &["b"])),
        ("1a-witness", select_edges(task_graph(w, "1a-witness"), &[("c", "e")])),
        ("1b-dominate", select_nodes(task_graph(w, "1b-dominate"), &["b", "d"])),
        ("1b-contrast", select_nodes(contrast, &["p", "x"])),
        (
            "1c-apply",
            serde_json::to_value(renamed(&apply_reduction(&vc_ds, &apply_source(w, "1c-apply")).unwrap().graph)).unwrap(),
        ),
        ("1c-transfer", json!(["b"])),
        ("1c-judge", json!([0])),
        ("2a-fvs", select_nodes(task_graph(w, "2a-fvs"), &["c"])),
        ("2a-cycle", select_edges(task_graph(w, "2a-cycle"), &[("b", "c"), ("c", "d"), ("b", "d")])),
        ("2b-design", triangle_design()),
        ("2c-apply", serde_json::to_value(renamed(&vc_fvs_target.graph)).unwrap()),
    ]
}

#[test]
fn shipped_workflows_validate() {
    for (name, text) in SHIPPED {
        let w = parse_workflow(text).unwrap_or_else(|d| panic!("{name}: {d:?}"));
        assert!(validate_workflow(&w).is_empty(), "{name}");
    }
}

#[test]
fn workflow_round_trips_through_json() {
    let w = edge_workflow();
    let text = serde_json::to_string(&*w).unwrap();
    assert_eq!(parse_workflow(&text).unwrap(), *w);
}

#[test]
fn unresolved_reference_is_diagnosed() {
    let mut w = (*edge_workflow()).clone();
    if let TaskKind::ApplyReduction { spec, .. } = &mut w.tasks.last_mut().unwrap().kind {
        *spec = Input::Ref(TaskRef { task: "zz".into() });
    }
    let d = validate_workflow(&w);
    assert_eq!(d.len(), 1, "{d:?}");
    assert_eq!(d[0].task.as_deref(), Some("2c-apply"));
    assert!(d[0].message.contains("unresolved reference zz"));
}

#[test]
fn prerequisite_cycle_is_diagnosed() {
    let text = r#"{"id": "w", "title": "w", "tasks": [
        {"id": "t1", "kind": "text", "body": "", "prerequisites": ["t2"]},
        {"id": "t2", "kind": "text", "body": "", "prerequisites": ["t1"]}]}"#;
    let d = parse_workflow(text).unwrap_err();
    assert!(d.iter().any(|d| d.message.contains("cycle")), "{d:?}");
}

#[test]
fn structural_mistakes_are_diagnosed() {
    let text = r#"{"id": "w", "title": "w", "tasks": [
        {"id": "t", "kind": "text", "body": ""},
        {"id": "t", "kind": "multipleChoice", "options": ["x"], "correct": [1]},
        {"id": "d", "kind": "reductionDesign", "family": "edge", "sourceProblem": "vertex-cover",
         "targetProblem": "dominating-set", "verifier": {"method": "characterization"}},
        {"id": "a", "kind": "applyReduction", "spec": {"ref": "t"},
         "source": {"graph": {"directed": false, "nodes": [], "edges": []}}},
        {"id": "b", "kind": "applyReduction", "spec": {"ref": "later"},
         "source": {"graph": {"directed": false, "nodes": [], "edges": []}}},
        {"id": "later", "kind": "reductionDesign", "family": "node", "sourceProblem": "ham-cycle-directed",
         "targetProblem": "ham-cycle-undirected", "verifier": {"method": "search"}}]}"#;
    let d = parse_workflow(text).unwrap_err();
    let messages: Vec<String> = d.iter().map(ToString::to_string).collect();
    let has = |s: &str| messages.iter().any(|m| m.contains(s));
    assert!(has("duplicate task id"), "{messages:?}");
    assert!(has("correct option 1 does not exist"), "{messages:?}");
    assert!(has("no characterization"), "{messages:?}");
    assert!(has("reference t does not produce a reduction"), "{messages:?}");
    assert!(has("reference later must point to an earlier task"), "{messages:?}");
}

#[test]
fn task_parse_errors_name_the_task() {
    let text = r#"{"id": "w", "title": "w", "tasks": [
        {"id": "ok", "kind": "text", "body": ""},
        {"id": "bad", "kind": "logical", "body": ""},
        {"id": "f", "kind": "graphConstruction", "constraints": {"kind": "logical", "formula": "E(x"}}]}"#;
    let d = parse_workflow(text).unwrap_err();
    let tasks: Vec<_> = d.iter().filter_map(|d| d.task.as_deref()).collect();
    assert_eq!(tasks, ["bad", "f"]);
}

#[test]
fn fresh_session_opens_prerequisite_free_tasks() {
    let s = Session::new("s", edge_workflow());
    let snap = s.snapshot();
    let open: Vec<&str> = snap.tasks.iter().filter(|t| t.status == Status::Open).map(|t| t.id.as_str()).collect();
    assert_eq!(open, ["1a-cover", "1a-witness"]);
    assert!(snap.tasks.iter().all(|t| t.attempts == 0 && t.outputs.is_none()));
}

#[test]
fn uncovered_edge_feedback() {
    let w = edge_workflow();
    let mut s = Session::new("s", w.clone());
    let r = s.submit("1a-cover", select_nodes(task_graph(&w, "1a-cover"), &["a"]), ctx(), 0).unwrap();
    assert!(!r.outcome.verdict.success);
    assert!(!r.outcome.outputs_published);
    assert!(r.outcome.feedback.contains("Every edge needs a selected endpoint."));
    assert!(r.outcome.feedback.contains("Not a solution: edge (b, c) has no selected endpoint."));
    assert_eq!(s.status("1a-cover"), Some(Status::Open));
    assert_eq!(s.snapshot().tasks[0].attempts, 1);
}

#[test]
fn locked_and_malformed_attempts_are_rejected() {
    let mut s = Session::new("s", edge_workflow());
    assert_eq!(
        s.submit("2b-design", triangle_design(), ctx(), 0).unwrap_err(),
        SessionError::Locked("2b-design".into())
    );
    assert!(matches!(
        s.submit("1a-cover", json!({"nodes": []}), ctx(), 0),
        Err(SessionError::Malformed { .. })
    ));
    assert!(matches!(s.submit("nope", json!(null), ctx(), 0), Err(SessionError::UnknownTask(_))));
    assert!(s.log().is_empty());
}

#[test]
fn selection_must_not_change_the_graph() {
    let w = edge_workflow();
    let mut s = Session::new("s", w);
    let g = graph(&["a", "b", "c"], &[("a", "b")]);
    let r = s.submit("1a-cover", select_nodes(g, &["b"]), ctx(), 0).unwrap();
    assert!(!r.outcome.verdict.success);
    assert_eq!(r.outcome.feedback, "The graph must not change; only select.");
}

#[test]
fn edge_workflow_runs_to_completion() {
    let w = edge_workflow();
    let mut s = Session::new("s", w.clone());
    let solutions = edge_solutions(&w);
    for (i, (task, payload)) in solutions.iter().enumerate() {
        assert_eq!(s.status(task), Some(Status::Open), "{task}");
        let r = s.submit(task, payload.clone(), ctx(), i as u64).unwrap();
        assert!(r.outcome.verdict.success, "{task}: {}", r.outcome.feedback);
        assert_eq!(s.status(task), Some(Status::Completed));
        if *task == "1c-judge" {
            assert_eq!(s.status("2a-fvs"), Some(Status::Open));
            assert_eq!(s.status("2a-cycle"), Some(Status::Open));
        }
        if *task == "2b-design" {
            assert_eq!(r.outcome.feedback, "Characterization satisfied.");
            assert_eq!(s.status("2c-apply"), Some(Status::Open));
        }
    }
    assert!(s.snapshot().tasks.iter().all(|t| t.status == Status::Completed));

    // the apply step consumed exactly the spec published by the design step
    let Some(Output::Spec(published)) = s.output("2b-design") else {
        panic!("design publishes a spec")
    };
    assert_eq!(published.to_canonical_json(), catalog::vc_to_fvs(catalog::triangle()).to_canonical_json());
    let Some(Output::Instance(target)) = s.output("2c-apply") else {
        panic!("apply publishes an instance")
    };
    assert_eq!(*target, apply_reduction(published, &apply_source(&w, "2c-apply")).unwrap());
    assert_eq!(target.budget, Some(2));
}

#[test]
fn design_publishes_sample_target() {
    let w = edge_workflow();
    let mut s = Session::new("s", w.clone());
    for (task, payload) in edge_solutions(&w).into_iter().take(9) {
        s.submit(task, payload, ctx(), 0).unwrap();
    }
    let r = s.submit("2b-design", triangle_design(), ctx(), 0).unwrap();
    let sample = r
        .outcome
        .verdict
        .checks
        .iter()
        .find_map(|c| match c {
            Check::Sample { target } => Some(target.clone()),
            _ => None,
        })
        .unwrap();
    assert_eq!((sample.graph.node_count(), sample.graph.edge_count(), sample.budget), (5, 6, Some(1)));
}

#[test]
fn wrong_gadget_gets_a_counterexample_and_stays_open() {
    let w = edge_workflow();
    let mut s = Session::new("s", w.clone());
    for (task, payload) in edge_solutions(&w).into_iter().take(9) {
        s.submit(task, payload, ctx(), 0).unwrap();
    }
    let bare = json!({ "edgeGadget": serde_json::to_value(catalog::bare_edge()).unwrap() });
    let r = s.submit("2b-design", bare, ctx(), 0).unwrap();
    assert!(!r.outcome.verdict.success);
    assert!(r.outcome.feedback.contains("Counterexample"), "{}", r.outcome.feedback);
    assert_eq!(s.status("2b-design"), Some(Status::Open));
    assert_eq!(s.status("2c-apply"), Some(Status::Locked));

    let stray = json!({ "nodeGadget": {} });
    let r = s.submit("2b-design", stray, ctx(), 0).unwrap();
    assert!(r.outcome.feedback.contains("does not belong"), "{}", r.outcome.feedback);
    let same_terminals = json!({ "edgeGadget": {"graph": {"directed": false, "nodes": ["u"], "edges": []}, "terminals": ["u", "u"]} });
    let r = s.submit("2b-design", same_terminals, ctx(), 0).unwrap();
    assert!(!r.outcome.verdict.success);
    assert!(matches!(r.outcome.verdict.checks[0], Check::Rejected { .. }));
}

#[test]
fn consumed_outputs_cannot_be_replaced() {
    let w = edge_workflow();
    let mut s = Session::new("s", w.clone());
    let solutions = edge_solutions(&w);
    for (task, payload) in &solutions[..10] {
        s.submit(task, payload.clone(), ctx(), 0).unwrap();
    }
    // not consumed yet: resubmission is allowed and a failure keeps the outputs
    let before = s.output("2b-design").cloned();
    let bare = json!({ "edgeGadget": serde_json::to_value(catalog::bare_edge()).unwrap() });
    let r = s.submit("2b-design", bare, ctx(), 0).unwrap();
    assert!(!r.outcome.outputs_published);
    assert_eq!(s.status("2b-design"), Some(Status::Completed));
    assert_eq!(s.output("2b-design").cloned(), before);

    // a failed attempt on the consumer already consumes
    let r = s.submit("2c-apply", json!(graph(&["a"], &[])), ctx(), 0).unwrap();
    assert!(!r.outcome.verdict.success);
    assert_eq!(
        s.submit("2b-design", triangle_design(), ctx(), 0).unwrap_err(),
        SessionError::Consumed {
            task: "2b-design".into(),
            by: "2c-apply".into()
        }
    );
}

#[test]
fn transfer_rejects_wrong_and_foreign_selections() {
    let w = edge_workflow();
    let mut s = Session::new("s", w.clone());
    for (task, payload) in edge_solutions(&w).into_iter().take(5) {
        s.submit(task, payload, ctx(), 0).unwrap();
    }
    let r = s.submit("1c-transfer", json!(["a", "c", "d"]), ctx(), 0).unwrap();
    assert_eq!(r.outcome.feedback, "The selection is not the solution induced by the source solution.");
    let r = s.submit("1c-transfer", json!(["q"]), ctx(), 0).unwrap();
    assert_eq!(r.outcome.feedback, "Node q is not in the target instance.");
}

#[test]
fn replay_reproduces_state_and_regrading_reproduces_verdicts() {
    let w = edge_workflow();
    let mut s = Session::new("s", w.clone());
    let mut wrong = edge_solutions(&w);
    wrong[0].1 = select_nodes(task_graph(&w, "1a-cover"), &["a", "c"]);
    for (i, (task, payload)) in wrong.iter().chain(edge_solutions(&w).iter()).enumerate() {
        let _ = s.submit(task, payload.clone(), ctx(), 1000 + i as u64);
    }
    let restored = Session::restore("s", w.clone(), s.log().to_vec()).unwrap();
    assert_eq!(restored.snapshot(), s.snapshot());
    assert_eq!(restored.state_hash(), s.state_hash());

    let mut regraded = Session::new("s", w.clone());
    for r in s.log() {
        let again = regraded.submit(&r.task_id, r.payload.clone(), ctx(), r.timestamp_ms).unwrap();
        assert_eq!(&again, r);
    }
    assert_eq!(regraded.state_hash(), s.state_hash());
}

#[test]
fn replay_rejects_gaps_and_unknown_tasks() {
    let w = edge_workflow();
    let mut s = Session::new("s", w.clone());
    let r = s
        .submit("1a-cover", select_nodes(task_graph(&w, "1a-cover"), &["b"]), ctx(), 0)
        .unwrap();
    let mut skipped = r.clone();
    skipped.seq = 2;
    assert!(matches!(Session::restore("s", w.clone(), [skipped]), Err(SessionError::Replay { .. })));
    let mut unknown = r;
    unknown.task_id = "zz".into();
    assert!(matches!(Session::restore("s", w, [unknown]), Err(SessionError::Replay { .. })));
}

#[test]
fn state_hash_ignores_timestamps() {
    let w = edge_workflow();
    let payload = select_nodes(task_graph(&w, "1a-cover"), &["b"]);
    let mut a = Session::new("s", w.clone());
    let mut b = Session::new("s", w);
    a.submit("1a-cover", payload.clone(), ctx(), 1).unwrap();
    b.submit("1a-cover", payload, ctx(), 99).unwrap();
    assert_eq!(a.state_hash(), b.state_hash());
    assert_eq!(a.state_hash().len(), 64);
}

fn edge_payload_pool(w: &Workflow) -> Vec<(&'static str, Value)> {
    let mut pool = edge_solutions(w);
    pool.extend([
        ("1a-cover", select_nodes(task_graph(w, "1a-cover"), &["a"])),
        ("1a-witness", select_edges(task_graph(w, "1a-witness"), &[("a", "b")])),
        ("1b-dominate", select_nodes(task_graph(w, "1b-dominate"), &["a", "e"])),
        ("1c-judge", json!([1])),
        ("2a-fvs", select_nodes(task_graph(w, "2a-fvs"), &["a"])),
        ("2b-design", json!({ "edgeGadget": serde_json::to_value(catalog::bare_edge()).unwrap() })),
        ("2c-apply", json!(graph(&["a"], &[]))),
        ("1c-transfer", json!(["a"])),
    ]);
    pool
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unlocking_is_monotone_and_replay_is_exact(picks in proptest::collection::vec(0usize..19, 0..40)) {
        let w = edge_workflow();
        let pool = edge_payload_pool(&w);
        let mut s = Session::new("p", w.clone());
        let reachable = |s: &Session| -> BTreeSet<String> {
            s.snapshot().tasks.into_iter().filter(|t| t.status != Status::Locked).map(|t| t.id).collect()
        };
        let mut seen = reachable(&s);
        for (i, p) in picks.into_iter().enumerate() {
            let (task, payload) = &pool[p % pool.len()];
            let _ = s.submit(task, payload.clone(), ctx(), i as u64);
            let now = reachable(&s);
            prop_assert!(seen.is_subset(&now));
            seen = now;
            for t in s.snapshot().tasks {
                if t.status == Status::Completed {
                    prop_assert!(t.attempts >= 1);
                    prop_assert!(t.outputs.is_some() || t.kind == "text");
                }
            }
        }
        let restored = Session::restore("p", w, s.log().to_vec()).unwrap();
        prop_assert_eq!(restored.state_hash(), s.state_hash());
    }
}

/// Opens `task` by completing its dependencies with no grading in between.
fn force_open(w: &Arc<Workflow>, task: &str) -> Session {
    let mut s = Session::new("s", w.clone());
    let deps: Vec<String> = w.task(task).unwrap().dependencies().into_iter().map(str::to_string).collect();
    for d in deps {
        let record = AttemptRecord {
            seq: s.log().len() as u64 + 1,
            task_id: d,
            payload: Value::Null,
            timestamp_ms: 0,
            outcome: AttemptOutcome {
                verdict: Grade { success: true, checks: vec![Check::Acknowledged] },
                feedback: "Correct.".into(),
                outputs_published: true,
                outputs: None,
            },
        };
        s.apply(record).unwrap();
    }
    s
}

#[test]
fn assignment_designs_accept_reference_gadgets() {
    let global = Arc::new(parse_workflow(SHIPPED[1].1).unwrap());
    let mut s = force_open(&global, "design");
    let universal = json!({ "globalGadget": {
        "graph": {"directed": false, "nodes": ["x"], "edges": []}, "policy": {"x": "all"} } });
    let r = s.submit("design", universal, ctx(), 0).unwrap();
    assert!(r.outcome.verdict.success, "{}", r.outcome.feedback);
    let isolated = json!({ "globalGadget": {
        "graph": {"directed": false, "nodes": ["x"], "edges": []}, "policy": {"x": "none"} } });
    let r = Session::new("t", global.clone()).grade("design", &isolated, ctx());
    assert!(matches!(r, Err(SessionError::Locked(_))));
    let r = force_open(&global, "design").submit("design", isolated, ctx(), 0).unwrap();
    assert!(!r.outcome.verdict.success);

    let non_edge = Arc::new(parse_workflow(SHIPPED[3].1).unwrap());
    let mut s = force_open(&non_edge, "design");
    let complement = json!({
        "edgeGadget": serde_json::to_value(catalog::no_edge()).unwrap(),
        "nonEdgeGadget": serde_json::to_value(catalog::bare_edge()).unwrap(),
    });
    let r = s.submit("design", complement, ctx(), 0).unwrap();
    assert!(r.outcome.verdict.success, "{}", r.outcome.feedback);
    assert_eq!(r.outcome.feedback, "No counterexample up to 6 nodes.");
}
