//! Exact polynomial arithmetic: univariate and bivariate integer
//! polynomials, rational functions, the characteristic polynomials of the
//! map family and their cyclotomic factor schedule, gcds, and fraction-free
//! resultants.

mod bipoly;
mod intpoly;
mod ratfunc;
mod salem;

pub use bipoly::{bareiss_det, resultant, BiPoly, Var};
pub use intpoly::{cyclotomic, poly_gcd, IntPoly};
pub use ratfunc::RatFunc;
pub use salem::{chi, chi_derivative, cyclotomic_part, salem_poly, Factor, FactorList, FactorTag};
