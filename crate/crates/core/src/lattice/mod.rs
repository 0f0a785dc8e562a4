//! Integer lattice actions attached to the family: the Coxeter element on
//! the Picard lattice of an N-point blowup, and the transfer matrices of
//! the three invariant graphs, with exact characteristic polynomials.

mod coxeter;
mod graph;
mod matrix;

pub use coxeter::coxeter_matrix;
pub use graph::{graph_matrix, graph_spec, verify_thm_c1, FormulaCheck, GraphSpec, ThmC1Report};
pub use matrix::IntMatrix;
