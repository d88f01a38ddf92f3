//! Python bindings. Structured values cross the boundary as JSON text in the
//! same formats the service uses.

use std::collections::BTreeSet;
use std::time::Duration;

use gadgetlab::constraints::Constraint as CoreConstraint;
use gadgetlab::exercises::parse_workflow;
use gadgetlab::graph::{isomorphic, parse_graph, Graph as CoreGraph, NodeId, ProblemInstance};
use gadgetlab::logic::{evaluate, parse_formula, Formula as CoreFormula};
use gadgetlab::problems::{decide_bounded, verify_candidate as core_verify_candidate, ProblemId};
use gadgetlab::reductions::{apply_reduction, transfer_solution, ReductionSpec as CoreSpec};
use gadgetlab::verifier::{explain as core_explain, verify as core_verify, VerifierVerdict};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type Result<T> = std::result::Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(err)
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn py<T>(r: Result<T>) -> PyResult<T> {
    r.map_err(PyValueError::new_err)
}

fn problem(name: &str) -> Result<ProblemId> {
    name.parse().map_err(err)
}

fn decide_json(problem_name: &str, instance: &str, bound: Option<usize>) -> Result<String> {
    let p = problem(problem_name)?;
    let inst: ProblemInstance = from_json(instance)?;
    let d = decide_bounded(p, &inst, bound.unwrap_or(p.default_oracle_bound())).map_err(err)?;
    Ok(to_json(&d))
}

fn candidate_json(problem_name: &str, instance: &str, nodes: Vec<String>) -> Result<String> {
    let inst: ProblemInstance = from_json(instance)?;
    let set = node_set(nodes)?;
    Ok(to_json(&core_verify_candidate(problem(problem_name)?, &inst, &set).map_err(err)?))
}

fn node_set(nodes: Vec<String>) -> Result<BTreeSet<NodeId>> {
    nodes.into_iter().map(|n| NodeId::new(n).map_err(err)).collect()
}

fn verify_json(spec: &CoreSpec, bound: Option<usize>, time_budget: Option<f64>) -> Result<String> {
    let budget = match time_budget {
        Some(s) if s > 0.0 && s.is_finite() => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(format!("time budget must be positive, got {s}")),
        None => None,
    };
    Ok(to_json(&core_verify(spec, bound, budget).map_err(err)?))
}

fn workflow_diagnostics(text: &str) -> Vec<String> {
    match parse_workflow(text) {
        Ok(_) => Vec::new(),
        Err(ds) => ds.iter().map(ToString::to_string).collect(),
    }
}

/// A graph with optional selection and highlight marks.
#[pyclass(name = "Graph", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Graph(CoreGraph);

#[pymethods]
impl Graph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        py(parse_graph(text.as_bytes()).map(Graph).map_err(err))
    }

    fn to_json(&self) -> String {
        self.0.to_canonical_json()
    }

    #[getter]
    fn directed(&self) -> bool {
        self.0.is_directed()
    }

    #[getter]
    fn nodes(&self) -> Vec<String> {
        self.0.nodes().iter().map(ToString::to_string).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String)> {
        self.0.edges().iter().map(|e| (e.0.to_string(), e.1.to_string())).collect()
    }

    #[getter]
    fn selected_nodes(&self) -> Vec<String> {
        self.0.selected_nodes().iter().map(ToString::to_string).collect()
    }

    fn is_acyclic(&self) -> bool {
        self.0.is_acyclic()
    }

    #[pyo3(signature = (other, respect_marks = false))]
    fn isomorphic(&self, other: &Graph, respect_marks: bool) -> PyResult<bool> {
        py(isomorphic(&self.0, &other.0, respect_marks).map(|b| b.is_some()).map_err(err))
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }

    fn __repr__(&self) -> String {
        format!("Graph({})", self.0.to_canonical_json())
    }
}

/// A first-order sentence over the graph vocabulary.
#[pyclass(name = "Formula", frozen)]
struct Formula(CoreFormula);

#[pymethods]
impl Formula {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        py(parse_formula(text).map(Formula).map_err(err))
    }

    fn evaluate(&self, graph: &Graph) -> PyResult<bool> {
        if !self.0.is_sentence() {
            return Err(PyValueError::new_err("the formula has free variables"));
        }
        Ok(evaluate(&self.0, &graph.0))
    }

    fn free_variables(&self) -> Vec<String> {
        self.0.free_variables().into_iter().collect()
    }

    fn quantifier_depth(&self) -> usize {
        self.0.quantifier_depth()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Formula({:?})", self.0.to_string())
    }
}

/// A constraint on graphs, from its JSON form.
#[pyclass(name = "Constraint", frozen)]
struct Constraint(CoreConstraint);

#[pymethods]
impl Constraint {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        py(from_json(text).map(Constraint))
    }

    fn holds(&self, graph: &Graph) -> bool {
        self.0.holds(&graph.0)
    }

    /// The verdict as JSON, with one entry per violated part.
    fn check(&self, graph: &Graph) -> String {
        to_json(&self.0.check(&graph.0))
    }
}

/// A reduction by gadgets between two problems.
#[pyclass(name = "ReductionSpec", frozen)]
struct ReductionSpec(CoreSpec);

#[pymethods]
impl ReductionSpec {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        py(from_json(text).map(ReductionSpec))
    }

    fn to_json(&self) -> String {
        self.0.to_canonical_json()
    }

    #[getter]
    fn source_problem(&self) -> &'static str {
        self.0.source_problem().as_str()
    }

    #[getter]
    fn target_problem(&self) -> &'static str {
        self.0.target_problem().as_str()
    }

    /// The target instance of a source instance, both as JSON.
    fn apply(&self, instance: &str) -> PyResult<String> {
        let inst: ProblemInstance = py(from_json(instance))?;
        py(apply_reduction(&self.0, &inst).map(|t| to_json(&t)).map_err(err))
    }

    /// The image of a source solution in the target instance.
    fn transfer(&self, instance: &str, solution: Vec<String>) -> PyResult<Vec<String>> {
        let inst: ProblemInstance = py(from_json(instance))?;
        let set = py(node_set(solution))?;
        let image = py(transfer_solution(&self.0, &inst, &set).map_err(err))?;
        Ok(image.iter().map(ToString::to_string).collect())
    }

    /// The verifier's verdict as JSON.
    #[pyo3(signature = (bound = None, time_budget = None))]
    fn verify(&self, py_: Python<'_>, bound: Option<usize>, time_budget: Option<f64>) -> PyResult<String> {
        py(py_.detach(|| verify_json(&self.0, bound, time_budget)))
    }
}

/// Decides an instance exhaustively; returns the decision as JSON.
#[pyfunction]
#[pyo3(signature = (problem, instance, bound = None))]
fn decide(problem: &str, instance: &str, bound: Option<usize>) -> PyResult<String> {
    py(decide_json(problem, instance, bound))
}

/// Checks a node set against an instance; returns the check as JSON.
#[pyfunction]
fn verify_candidate(problem: &str, instance: &str, nodes: Vec<String>) -> PyResult<String> {
    py(candidate_json(problem, instance, nodes))
}

/// Human-readable explanation of a verdict given as JSON.
#[pyfunction]
fn explain(verdict: &str) -> PyResult<String> {
    let v: VerifierVerdict = py(from_json(verdict))?;
    Ok(core_explain(&v))
}

/// Problems found in a workflow definition; empty when it is valid.
#[pyfunction]
fn validate_workflow(text: &str) -> Vec<String> {
    workflow_diagnostics(text)
}

#[pymodule]
#[pyo3(name = "gadgetlab")]
fn gadgetlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Formula>()?;
    m.add_class::<Constraint>()?;
    m.add_class::<ReductionSpec>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(verify_candidate, m)?)?;
    m.add_function(wrap_pyfunction!(explain, m)?)?;
    m.add_function(wrap_pyfunction!(validate_workflow, m)?)?;
    Ok(())
}
