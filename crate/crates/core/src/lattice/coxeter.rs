//! The Coxeter element of the Weyl group W_N acting on the Picard lattice
//! of an N-point blowup of the plane.

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use num_bigint::BigInt;

/// Matrix of the Coxeter element on the geometric basis {E_0, ..., E_N}:
/// the product of the basis-exchange reflections with the Cremona
/// involution, written so that
///
/// ```text
/// E_0 -> 2E_0 - E_2 - E_3 - E_4,    E_1 -> E_0 - E_3 - E_4,
/// E_2 -> E_0 - E_2 - E_4,           E_3 -> E_0 - E_2 - E_3,
/// E_s -> E_{s+1}  (4 <= s <= N-1),  E_N -> E_1.
/// ```
///
/// Column s holds the image of E_s.  The element is an isometry of the
/// intersection form diag(1, -1, ..., -1), and its characteristic
/// polynomial is the degree-(N+1) recurrence polynomial with index N - 3.
pub fn coxeter_matrix(n_points: u32) -> Result<IntMatrix> {
    if n_points < 5 {
        return Err(Error::Domain(format!(
            "the Coxeter element needs at least 5 blowup points, got {n_points}"
        )));
    }
    let n = n_points as usize;
    let mut m = IntMatrix::zero(n + 1)?;
    let one = BigInt::from(1);
    let neg = BigInt::from(-1);
    // E_0 -> 2E_0 - E_2 - E_3 - E_4
    m.set(0, 0, BigInt::from(2));
    m.set(2, 0, neg.clone());
    m.set(3, 0, neg.clone());
    m.set(4, 0, neg.clone());
    // E_1 -> E_0 - E_3 - E_4
    m.set(0, 1, one.clone());
    m.set(3, 1, neg.clone());
    m.set(4, 1, neg.clone());
    // E_2 -> E_0 - E_2 - E_4
    m.set(0, 2, one.clone());
    m.set(2, 2, neg.clone());
    m.set(4, 2, neg.clone());
    // E_3 -> E_0 - E_2 - E_3
    m.set(0, 3, one.clone());
    m.set(2, 3, neg.clone());
    m.set(3, 3, neg);
    // E_s -> E_{s+1} for 4 <= s <= N-1, and E_N -> E_1
    for s in 4..n {
        m.set(s + 1, s, one.clone());
    }
    m.set(1, n, one);
    Ok(m)
}
