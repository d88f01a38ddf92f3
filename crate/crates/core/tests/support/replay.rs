//! Re-derives verifier counterexamples without the verifier.
#![allow(dead_code)]

use gadgetlab::graph::{enumerate_instances, Arity, ProblemInstance};
use gadgetlab::problems::{decide_bounded, verify_candidate, verify_cycle, ProblemId, Solution};
use gadgetlab::reductions::{apply_reduction, ReductionSpec};
use gadgetlab::verifier::{Counterexample, Direction};

use super::oracle;

/// Whether `p` holds on `inst`: the brute-force oracle for small graphs,
/// the library's exhaustive decision for larger targets.
fn holds(p: ProblemId, inst: &ProblemInstance) -> bool {
    let small = if p.is_cycle_problem() { 8 } else { 12 };
    if inst.graph.node_count() <= small {
        oracle::answer(p, inst)
    } else {
        decide_bounded(p, inst, 32).expect("decidable").is_positive()
    }
}

/// First source instance in enumeration order whose answer differs from
/// its target's, with the source answer. A fixed source budget restricts
/// the scan to instances with that budget.
pub fn first_counterexample(spec: &ReductionSpec, max_nodes: usize) -> Option<(ProblemInstance, bool)> {
    let (sp, tp) = (spec.source_problem(), spec.target_problem());
    let arity = if sp.requires_budget() { Arity::GraphAndBudget } else { Arity::GraphOnly };
    let least = if sp.is_cycle_problem() { 3 } else { 1 };
    enumerate_instances(arity, sp.directed_input(), max_nodes)
        .filter(|s| s.graph.node_count() >= least)
        .filter(|s| spec.source_budget().is_none_or(|k| s.budget == Some(k)))
        .find_map(|s| {
            let t = apply_reduction(spec, &s).expect("reduction applies");
            let answer = holds(sp, &s);
            (answer != holds(tp, &t)).then_some((s, answer))
        })
}

fn solution_ok(p: ProblemId, inst: &ProblemInstance, s: &Solution) -> bool {
    match s {
        Solution::Nodes(set) => verify_candidate(p, inst, set).map(|c| c.is_valid()).unwrap_or(false),
        Solution::Cycle(order) => verify_cycle(p, &inst.graph, order).unwrap_or(false),
    }
}

/// Checks a reported counterexample from scratch: the target is the
/// reduction's image of the source, the answers differ in the stated
/// direction, and the witness of the positive side solves it.
pub fn revalidate(spec: &ReductionSpec, c: &Counterexample) -> Result<(), String> {
    let (sp, tp) = (spec.source_problem(), spec.target_problem());
    let target = apply_reduction(spec, &c.source).map_err(|e| e.to_string())?;
    if target != c.target {
        return Err("the target is not the image of the source".into());
    }
    let (src, tgt) = (holds(sp, &c.source), holds(tp, &c.target));
    let expected = match c.direction {
        Direction::PositiveLost => (true, false),
        Direction::NegativeGained => (false, true),
    };
    if (src, tgt) != expected {
        return Err(format!("answers are {:?}, direction says {:?}", (src, tgt), expected));
    }
    let (inst, p, witness) = match c.direction {
        Direction::PositiveLost => (&c.source, sp, &c.source_witness),
        Direction::NegativeGained => (&c.target, tp, &c.target_witness),
    };
    match witness {
        Some(w) if solution_ok(p, inst, w) => Ok(()),
        Some(w) => Err(format!("witness {w:?} does not solve the positive side")),
        None => Err("the positive side carries no witness".into()),
    }
}
