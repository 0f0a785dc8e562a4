//! Points of the complex projective plane with a canonical representative.

use crate::error::{Error, Result};
use crate::mp::{MpComplex, MpReal};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// A point [x0 : x1 : x2] stored in normalized form: every coordinate has
/// modulus at most one, and the first coordinate of maximal modulus is exactly
/// 1.  Normalizing twice is a no-op, so points can be compared coordinatewise.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: [MpComplex; 3],
}

impl ProjPoint {
    pub fn new(c0: MpComplex, c1: MpComplex, c2: MpComplex) -> Result<Self> {
        if c0.is_zero() && c1.is_zero() && c2.is_zero() {
            return Err(Error::DegenerateInput(
                "projective point needs a nonzero coordinate".into(),
            ));
        }
        Ok(Self::normalize([c0, c1, c2]))
    }

    /// Embed an affine point (x, y) as [1 : x : y].
    pub fn from_affine(x: &MpComplex, y: &MpComplex) -> Self {
        let prec = x.prec().max(y.prec());
        Self::normalize([MpComplex::one(prec), x.clone(), y.clone()])
    }

    pub fn e1(prec: u32) -> Self {
        Self::normalize([
            MpComplex::zero(prec),
            MpComplex::one(prec),
            MpComplex::zero(prec),
        ])
    }

    pub fn e2(prec: u32) -> Self {
        Self::normalize([
            MpComplex::zero(prec),
            MpComplex::zero(prec),
            MpComplex::one(prec),
        ])
    }

    fn normalize(coords: [MpComplex; 3]) -> Self {
        let norms: Vec<MpReal> = coords.iter().map(|c| c.norm_sqr()).collect();
        let mut imax = 0;
        for k in 1..3 {
            if norms[k].cmp(&norms[imax]) == Ordering::Greater {
                imax = k;
            }
        }
        let scale = coords[imax].clone();
        let mut out: Vec<MpComplex> = coords.iter().map(|c| c.div(&scale)).collect();
        out[imax] = MpComplex::one(scale.prec());
        Self {
            coords: [out[0].clone(), out[1].clone(), out[2].clone()],
        }
    }

    pub fn coords(&self) -> &[MpComplex; 3] {
        &self.coords
    }

    pub fn prec(&self) -> u32 {
        self.coords.iter().map(|c| c.prec()).max().unwrap()
    }

    /// Affine chart coordinates (x1/x0, x2/x0); None when x0 has modulus
    /// below 2^threshold_exp (the point is at or extremely near infinity).
    pub fn to_affine(&self, threshold_exp: i64) -> Option<(MpComplex, MpComplex)> {
        let n0 = self.coords[0].abs();
        if n0.cmp(&MpReal::pow2(threshold_exp, self.prec())) != Ordering::Greater {
            return None;
        }
        Some((
            self.coords[1].div(&self.coords[0]),
            self.coords[2].div(&self.coords[0]),
        ))
    }

    /// Chordal (Fubini-Study) distance: |x ^ y| / (|x| |y|), which is 0 for
    /// equal points and at most 1, and does not depend on representatives.
    pub fn dist_chordal(&self, other: &Self) -> MpReal {
        let a = &self.coords;
        let b = &other.coords;
        let mut wedge = MpReal::zero(self.prec().max(other.prec()));
        for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
            let m = a[i].mul(&b[j]).sub(&a[j].mul(&b[i]));
            wedge = wedge.add(&m.norm_sqr());
        }
        let na: MpReal = a.iter().fold(MpReal::zero(self.prec()), |acc, c| {
            acc.add(&c.norm_sqr())
        });
        let nb: MpReal = b.iter().fold(MpReal::zero(other.prec()), |acc, c| {
            acc.add(&c.norm_sqr())
        });
        wedge.div(&na.mul(&nb)).sqrt()
    }

    /// True if the chordal distance to `other` is below 2^threshold_exp.
    pub fn close_to(&self, other: &Self, threshold_exp: i64) -> bool {
        let tol = MpReal::pow2(threshold_exp, self.prec().max(other.prec()));
        self.dist_chordal(other).cmp(&tol) == Ordering::Less
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {}]",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = (self.prec() as f64 * 0.30103) as usize;
        let mut st = serializer.serialize_struct("ProjPoint", 2)?;
        let coords: Vec<[String; 2]> = self
            .coords
            .iter()
            .map(|c| [c.re.to_decimal(digits), c.im.to_decimal(digits)])
            .collect();
        st.serialize_field("coords", &coords)?;
        st.serialize_field("precision_bits", &self.prec())?;
        st.end()
    }
}
