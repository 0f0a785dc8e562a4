//! The two distinguished fixed points of the map along each curve, with
//! closed-form locations and Jacobian spectra.

use super::{check_j, exclusion_tol, is_excluded_t};
use crate::dynamics::ProjPoint;
use crate::error::{Error, Result};
use crate::mp::{MpComplex, MpReal};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

/// Which of the two fixed points: S has eigenvalues that are plain monomials
/// in t; R has the reciprocal-product spectrum that feeds the resonance and
/// rotation-domain analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FixedPointKind {
    S,
    R,
}

#[derive(Clone, Debug)]
pub struct FixedPointData {
    pub kind: FixedPointKind,
    pub location: ProjPoint,
    /// Affine diagonal coordinate x with the point at (x, x).
    pub x: MpComplex,
    pub eta1: MpComplex,
    pub eta2: MpComplex,
}

impl Serialize for FixedPointData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = ((self.x.prec() as f64) * 0.30103).ceil() as usize;
        let c = |z: &MpComplex| [z.re.to_decimal(digits), z.im.to_decimal(digits)];
        let mut s = serializer.serialize_struct("FixedPointData", 5)?;
        s.serialize_field("kind", &self.kind)?;
        s.serialize_field("location", &self.location)?;
        s.serialize_field("x", &c(&self.x))?;
        s.serialize_field("eta1", &c(&self.eta1))?;
        s.serialize_field("eta2", &c(&self.eta2))?;
        s.end()
    }
}

/// Primitive cube root of unity in the upper half plane, e^(2 pi i / 3).
pub fn omega(prec: u32) -> MpComplex {
    let half = MpReal::pow2(-1, prec);
    let re = half.neg();
    let im = MpReal::from_i64(3, prec).sqrt().mul(&half);
    MpComplex::new(re, im)
}

/// Order an eigenvalue pair: smaller argument in [0, 2 pi) first, ties
/// broken by ascending modulus.  Keeps serialized output stable.
pub(super) fn order_eigenvalues(e1: MpComplex, e2: MpComplex) -> (MpComplex, MpComplex) {
    let a1 = e1.arg_f64();
    let a2 = e2.arg_f64();
    let swap = match a1.partial_cmp(&a2) {
        Some(Ordering::Greater) => true,
        Some(Ordering::Less) => false,
        _ => e1.abs().cmp(&e2.abs()) == Ordering::Greater,
    };
    if swap {
        (e2, e1)
    } else {
        (e1, e2)
    }
}

/// Eigenvalues of a 2x2 Jacobian given trace and determinant.
pub(super) fn eigen_from_trace_det(tau: &MpComplex, mu: &MpComplex) -> (MpComplex, MpComplex) {
    let prec = tau.prec().max(mu.prec());
    let half = MpReal::pow2(-1, prec);
    let four = MpComplex::from_i64(4, prec);
    let disc = tau.mul(tau).sub(&four.mul(mu));
    let root = disc.sqrt();
    let e1 = tau.add(&root).mul_real(&half);
    let e2 = tau.sub(&root).mul_real(&half);
    (e1, e2)
}

fn guard_denominator(d: &MpComplex, what: &str) -> Result<()> {
    let tol = exclusion_tol(d.prec());
    if d.abs().cmp(&tol) != Ordering::Greater {
        return Err(Error::DegenerateParameter(format!(
            "{what} vanishes at this parameter"
        )));
    }
    Ok(())
}

/// The two fixed points of the map at (a, b) = phi_j(t), in the order
/// (S, R), with closed-form locations and eigenvalues.
pub fn fixed_points(j: u8, t: &MpComplex) -> Result<(FixedPointData, FixedPointData)> {
    check_j(j)?;
    if is_excluded_t(t) {
        return Err(Error::ExcludedParameter(format!(
            "t = {t} is excluded from the parameter curves"
        )));
    }
    let prec = t.prec();
    let one = MpComplex::one(prec);
    let t2 = t.mul(t);
    let t3 = t2.mul(t);
    let one_plus_t = one.add(t);
    guard_denominator(&one_plus_t, "1 + t")?;

    let (x_s, x_r, s_eigs, r_eigs) = match j {
        1 => {
            let x_s = t3.div(&one_plus_t);
            // (t^3 + t^2 - 1) / (t^2 (1 + t))
            let x_r = t3.add(&t2).sub(&one).div(&t2.mul(&one_plus_t));
            let s_eigs = (t2.clone(), t3.clone());
            // eta1 = 1/t, eta2 = -(t^3 + t^2 - 1)/(t (t^3 - t - 1))
            let den = t.mul(&t3.sub(t).sub(&one));
            guard_denominator(&den, "t (t^3 - t - 1)")?;
            let e2 = t3.add(&t2).sub(&one).div(&den).neg();
            (x_s, x_r, s_eigs, (t.recip(), e2))
        }
        2 => {
            let x_s = t2.neg().div(&one_plus_t);
            let den = t.mul(&one_plus_t);
            let x_r = one.add(t).add(&t2).div(&den);
            let s_eigs = (t.neg(), t2.neg());
            let q = one.add(t).add(&t2);
            guard_denominator(&q, "1 + t + t^2")?;
            let tau = one_plus_t.div(&q);
            let mu = t.recip();
            (x_s, x_r, s_eigs, eigen_from_trace_det(&tau, &mu))
        }
        _ => {
            let x_s = t.neg();
            let x_r = one.add(&t.recip());
            let w = omega(prec);
            let s_eigs = (w.mul(t), w.mul(&w).mul(t));
            let tau = one_plus_t.recip();
            let mu = t.recip();
            (x_s, x_r, s_eigs, eigen_from_trace_det(&tau, &mu))
        }
    };

    let (s1, s2) = order_eigenvalues(s_eigs.0, s_eigs.1);
    let (r1, r2) = order_eigenvalues(r_eigs.0, r_eigs.1);
    let fp = |kind, x: MpComplex, e1, e2| FixedPointData {
        kind,
        location: ProjPoint::from_affine(&x, &x),
        x,
        eta1: e1,
        eta2: e2,
    };
    Ok((
        fp(FixedPointKind::S, x_s, s1, s2),
        fp(FixedPointKind::R, x_r, r1, r2),
    ))
}
