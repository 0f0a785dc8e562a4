//! Exact and multiprecision computation for the linear fractional recurrence
//! family of plane birational maps
//!
//! ```text
//! f_{a,b}(x, y) = (y, (y + a) / (x + b))
//! ```
//!
//! viewed projectively on P^2.  The crate computes the characteristic
//! polynomials attached to the family, isolates their Salem roots, evaluates
//! the parameter curves on which the maps preserve a cubic, follows orbits of
//! the distinguished point to test membership in the parameter loci V_n,
//! analyzes fixed points and short cycles (multipliers, resonances, rotation
//! domain eligibility), and realizes the induced lattice actions as integer
//! matrices.

pub mod dynamics;
pub mod enumerate;
pub mod error;
pub mod exactpoly;
pub mod family;
pub mod lattice;
pub mod mp;
pub mod numroots;

pub use error::{Error, Result};
