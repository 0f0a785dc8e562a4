//! Multiprecision iteration of the plane map in projective coordinates:
//! orbit traces, membership testing for the parameter loci, the exact orbit
//! certificate, and the Lyness invariant for the b = 0 subfamily.

mod affine;
mod certificate;
mod map;
mod orbit;
mod projpoint;

pub use affine::{conjugacy_residual, lyness_check, normalize_conjugacy};
pub use certificate::{zeta_certificate, ZetaCertificate};
pub use map::{apply, apply_inverse, MapData};
pub use orbit::{emit_orbit_csv, orbit, vn_membership, OrbitStep, OrbitTrace, Termination};
pub use projpoint::ProjPoint;
