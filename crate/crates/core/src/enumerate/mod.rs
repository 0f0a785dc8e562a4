//! Enumeration of the finite parameter sets where the orbit of the forward
//! indeterminacy point q = (-a, 0) lands on the backward indeterminacy point
//! p = (-b, -a) after exactly n steps: exact orbit polynomials, the cut-out
//! polynomial system, elimination, numeric filtering, and classification of
//! the verified members against the three parameter curves.

mod symbolic;

pub use symbolic::{
    build_system, build_system_with, symbolic_orbit, symbolic_orbit_with, SymbolicBudget,
    SymbolicOrbit,
};
