//! Numeric inversion of the parameter curves: which curve(s), if any, pass
//! through a given (a, b), and at which curve coordinate.

use super::phi_value;
use crate::mp::{MpComplex, MpReal};
use crate::numroots::dk::dk_roots;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct GammaMatch {
    pub j: u8,
    pub t: MpComplex,
    /// max(|a - a(t)|, |b - b(t)|) at the matched coordinate.
    pub residual: MpReal,
}

impl Serialize for GammaMatch {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = ((self.t.prec() as f64) * 0.30103).ceil() as usize;
        let mut s = serializer.serialize_struct("GammaMatch", 4)?;
        s.serialize_field("j", &self.j)?;
        s.serialize_field("t_re", &self.t.re.to_decimal(digits))?;
        s.serialize_field("t_im", &self.t.im.to_decimal(digits))?;
        s.serialize_field("residual", &self.residual.to_decimal(digits.min(40)))?;
        s.end()
    }
}

fn residual_at(j: u8, t: &MpComplex, a: &MpComplex, b: &MpComplex) -> Option<MpReal> {
    let (av, bv) = phi_value(j, t).ok()?;
    let ra = av.sub(a).abs();
    let rb = bv.sub(b).abs();
    Some(if ra.cmp(&rb) == Ordering::Greater { ra } else { rb })
}

/// Every curve point within `tol` of (a, b), reported with its curve index,
/// curve coordinate, and residual.  The inversion is exact for curve 3
/// (t = a - 1) and goes through the defining polynomial systems for curves
/// 1 and 2; removable coordinates such as t = -1 participate, so (0, 0) is
/// reported on both curve 2 and curve 3.
pub fn gamma_membership(a: &MpComplex, b: &MpComplex, tol: &MpReal) -> Vec<GammaMatch> {
    let prec = a.prec().max(b.prec());
    let one = MpComplex::one(prec);
    let two_a = a.add(a);
    let mut matches: Vec<GammaMatch> = Vec::new();

    // curve 3: a = 1 + t exactly
    let t3 = a.sub(&one);
    if let Some(r) = residual_at(3, &t3, a, b) {
        if r.cmp(tol) != Ordering::Greater {
            matches.push(GammaMatch { j: 3, t: t3, residual: r });
        }
    }

    // curve 2: a (1+t)^2 = t + t^2 + t^3, i.e.
    // t^3 + (1-a) t^2 + (1-2a) t - a = 0
    let cubic = vec![
        a.neg(),
        one.sub(&two_a),
        one.sub(a),
        one.clone(),
    ];
    // curve 1: a (1+t)^2 = t - t^3 - t^4, i.e.
    // t^4 + t^3 + a t^2 + (2a-1) t + a = 0
    let quartic = vec![
        a.clone(),
        two_a.sub(&one),
        a.clone(),
        one.clone(),
        one.clone(),
    ];
    for (j, coeffs) in [(2u8, cubic), (1u8, quartic)] {
        let roots = match dk_roots(&coeffs, -((prec as i64) - 48), 600 + prec) {
            Some(r) => r,
            None => continue,
        };
        for t in roots {
            if let Some(r) = residual_at(j, &t, a, b) {
                if r.cmp(tol) != Ordering::Greater {
                    matches.push(GammaMatch { j, t, residual: r });
                }
            }
        }
    }

    // collapse duplicate coordinates on the same curve, keep stable order
    let close = MpReal::pow2(-((prec / 2) as i64), prec);
    let mut out: Vec<GammaMatch> = Vec::new();
    for m in matches {
        if !out
            .iter()
            .any(|o| o.j == m.j && o.t.dist(&m.t).cmp(&close) == Ordering::Less)
        {
            out.push(m);
        }
    }
    out.sort_by(|p, q| {
        p.j.cmp(&q.j).then_with(|| {
            q.t.abs()
                .cmp(&p.t.abs())
                .then_with(|| p.t.arg_f64().partial_cmp(&q.t.arg_f64()).unwrap_or(Ordering::Equal))
        })
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> MpComplex {
        MpComplex::from_f64_pair(re, im, 256)
    }

    fn tol20() -> MpReal {
        let num = num_bigint::BigInt::from(1);
        let den = num_bigint::BigInt::from(10u64).pow(20);
        MpReal::from_ratio(&num, &den, 256)
    }

    #[test]
    fn inverts_curve_three() {
        let got = gamma_membership(&c(3.0, 0.0), &c(1.5, 0.0), &tol20());
        let hit = got.iter().find(|m| m.j == 3).expect("curve 3 match");
        assert!(hit.t.dist(&c(2.0, 0.0)).to_f64() < 1e-60);
    }

    #[test]
    fn origin_sits_on_curves_two_and_three() {
        let got = gamma_membership(&c(0.0, 0.0), &c(0.0, 0.0), &tol20());
        let js: Vec<u8> = got.iter().map(|m| m.j).collect();
        assert!(js.contains(&2));
        assert!(js.contains(&3));
        assert!(!js.contains(&1));
        // the curve-3 coordinate is t = -1, a removable value of the formula
        let m3 = got.iter().find(|m| m.j == 3).unwrap();
        assert!(m3.t.dist(&c(-1.0, 0.0)).to_f64() < 1e-60);
    }

    #[test]
    fn generic_point_matches_nothing() {
        let got = gamma_membership(&c(0.3, 0.0), &c(0.7, 0.0), &tol20());
        assert!(got.is_empty(), "unexpected matches: {got:?}");
    }

    #[test]
    fn roundtrip_on_curve_one() {
        let t = c(1.9, 0.4);
        let (a, b) = super::super::phi(1, &t).unwrap();
        let got = gamma_membership(&a, &b, &tol20());
        let hit = got.iter().find(|m| m.j == 1).expect("curve 1 match");
        assert!(hit.t.dist(&t).to_f64() < 1e-40);
    }
}
