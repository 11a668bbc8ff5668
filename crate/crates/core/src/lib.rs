//! Exact simplex pivot rules, polytope skeletons and monotone-path
//! constructions on combinatorial polytopes.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod linalg;
pub mod lp;
pub mod pivot;
pub mod scalar;
pub mod simplex;
pub mod skeleton;
pub mod zoo;

pub use error::{Error, Result};
pub use lp::{compare, Basis, BasicSolution, LinearProgram, Objective, ObjectiveValue};
pub use scalar::Scalar;
