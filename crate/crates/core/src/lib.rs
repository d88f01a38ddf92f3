//! Authoring, solving and verifying exercises about gadget reductions
//! between graph problems.

pub mod graph;
pub mod logic;
pub mod kernel;
pub mod problems;
pub mod constraints;
pub mod reductions;
pub mod verifier;
pub mod exercises;
