//! Period-2 and period-3 cycles of the affine map (x, y) -> (y, (y+a)/(x+b)),
//! their closed-form multipliers, and the numerically accumulated cycle
//! Jacobian they are checked against.

use crate::error::{Error, Result};
use crate::mp::{MpComplex, MpReal};
use crate::numroots::dk::dk_roots;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

/// A short cycle together with the determinant and trace of the product of
/// Jacobians around it (accumulated numerically, not from closed forms, so
/// the closed forms can be tested against it).
#[derive(Clone, Debug)]
pub struct CycleData {
    pub length: u8,
    pub points: Vec<(MpComplex, MpComplex)>,
    pub mu: MpComplex,
    pub tau: MpComplex,
}

impl Serialize for CycleData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let prec = self.mu.prec();
        let digits = ((prec as f64) * 0.30103).ceil() as usize;
        let c = |z: &MpComplex| [z.re.to_decimal(digits), z.im.to_decimal(digits)];
        let mut s = serializer.serialize_struct("CycleData", 4)?;
        s.serialize_field("length", &self.length)?;
        let pts: Vec<[[String; 2]; 2]> = self.points.iter().map(|(x, y)| [c(x), c(y)]).collect();
        s.serialize_field("points", &pts)?;
        s.serialize_field("mu", &c(&self.mu))?;
        s.serialize_field("tau", &c(&self.tau))?;
        s.end()
    }
}

fn degeneracy_tol(prec: u32) -> MpReal {
    MpReal::pow2(-((prec / 2) as i64), prec)
}

/// Sort roots into a stable order: descending modulus, then ascending
/// argument (f64 argument is enough for ordering).
fn canonical_order(roots: &mut [MpComplex]) {
    roots.sort_by(|p, q| {
        match q.abs().cmp(&p.abs()) {
            Ordering::Equal => p
                .arg_f64()
                .partial_cmp(&q.arg_f64())
                .unwrap_or(Ordering::Equal),
            o => o,
        }
    });
}

/// One step of the map starting from the cycle coordinate pair (x, y).
fn step(a: &MpComplex, b: &MpComplex, x: &MpComplex, y: &MpComplex) -> MpComplex {
    y.add(a).div(&x.add(b))
}

/// Jacobian of the map at (x, y): [[0, 1], [-(y+a)/(x+b)^2, 1/(x+b)]].
fn jacobian(a: &MpComplex, b: &MpComplex, x: &MpComplex, y: &MpComplex) -> [MpComplex; 4] {
    let prec = x.prec();
    let den = x.add(b);
    let lower_left = y.add(a).div(&den.mul(&den)).neg();
    [
        MpComplex::zero(prec),
        MpComplex::one(prec),
        lower_left,
        den.recip(),
    ]
}

fn mat_mul(m: &[MpComplex; 4], n: &[MpComplex; 4]) -> [MpComplex; 4] {
    [
        m[0].mul(&n[0]).add(&m[1].mul(&n[2])),
        m[0].mul(&n[1]).add(&m[1].mul(&n[3])),
        m[2].mul(&n[0]).add(&m[3].mul(&n[2])),
        m[2].mul(&n[1]).add(&m[3].mul(&n[3])),
    ]
}

/// Check a candidate cycle arrangement for degeneracies shared by both
/// lengths: coincident roots, a root sitting on a fixed point, or a root on
/// the critical line x + b = 0.
fn check_roots(roots: &[MpComplex], a: &MpComplex, b: &MpComplex) -> Result<()> {
    let prec = a.prec().max(b.prec());
    let tol = degeneracy_tol(prec);
    let one = MpComplex::one(prec);
    for i in 0..roots.len() {
        for j in (i + 1)..roots.len() {
            if roots[i].dist(&roots[j]).cmp(&tol) != Ordering::Greater {
                return Err(Error::CycleDegenerate(
                    "cycle roots coincide at this parameter".into(),
                ));
            }
        }
    }
    for z in roots {
        if z.add(b).abs().cmp(&tol) != Ordering::Greater {
            return Err(Error::CycleDegenerate(
                "cycle meets the critical line x + b = 0".into(),
            ));
        }
        // fixed points satisfy z^2 + (b - 1) z - a = 0
        let fp = z.mul(z).add(&b.sub(&one).mul(z)).sub(a);
        if fp.abs().cmp(&tol) != Ordering::Greater {
            return Err(Error::CycleDegenerate(
                "cycle root coincides with a fixed point".into(),
            ));
        }
    }
    Ok(())
}

fn accumulate(
    a: &MpComplex,
    b: &MpComplex,
    points: &[(MpComplex, MpComplex)],
) -> (MpComplex, MpComplex) {
    let prec = a.prec().max(b.prec());
    let mut m = [
        MpComplex::one(prec),
        MpComplex::zero(prec),
        MpComplex::zero(prec),
        MpComplex::one(prec),
    ];
    for (x, y) in points {
        m = mat_mul(&jacobian(a, b, x, y), &m);
    }
    let mu = m[0].mul(&m[3]).sub(&m[1].mul(&m[2]));
    let tau = m[0].add(&m[3]);
    (mu, tau)
}

/// The period-ell cycle (ell = 2 or 3) of the map at (a, b).
///
/// Length 2: the cycle coordinates are the roots of
/// z^2 + (1+b) z + (1+b-a); length 3: the roots of
/// z^3 + (1+a+b+b^2) z^2 + (b^3+ab+2a-1) z + (-1+a-b+ab-b^2),
/// arranged so the map steps cyclically through them.
pub fn cycle_points(ell: u8, a: &MpComplex, b: &MpComplex) -> Result<CycleData> {
    let prec = a.prec().max(b.prec());
    let one = MpComplex::one(prec);
    let tol = degeneracy_tol(prec);
    match ell {
        2 => {
            let p = one.add(b);
            let q = one.add(b).sub(a);
            // roots of z^2 + p z + q
            let four = MpComplex::from_i64(4, prec);
            let disc = p.mul(&p).sub(&four.mul(&q));
            let half = MpReal::pow2(-1, prec);
            let root = disc.sqrt();
            let mut roots = vec![
                p.neg().add(&root).mul_real(&half),
                p.neg().sub(&root).mul_real(&half),
            ];
            canonical_order(&mut roots);
            check_roots(&roots, a, b)?;
            let (u, v) = (roots[0].clone(), roots[1].clone());
            let points = vec![(u.clone(), v.clone()), (v, u)];
            let (mu, tau) = accumulate(a, b, &points);
            Ok(CycleData {
                length: 2,
                points,
                mu,
                tau,
            })
        }
        3 => {
            let b2 = b.mul(b);
            let c2 = one.add(a).add(b).add(&b2);
            let c1 = b2.mul(b).add(&a.mul(b)).add(&a.mul_real(&MpReal::from_i64(2, prec))).sub(&one);
            let c0 = a.sub(&one).sub(b).add(&a.mul(b)).sub(&b2);
            let coeffs = vec![c0, c1, c2, one.clone()];
            let mut roots = dk_roots(&coeffs, -((prec as i64) - 48), 600 + prec)
                .ok_or_else(|| Error::PrecisionExhausted("period-3 root finding stalled".into()))?;
            canonical_order(&mut roots);
            check_roots(&roots, a, b)?;
            // arrange (z1, s, r) so one map step sends (z1, s) to (s, r)
            let z1 = roots[0].clone();
            let mut best: Option<(MpReal, Vec<(MpComplex, MpComplex)>)> = None;
            for (s, r) in [
                (roots[1].clone(), roots[2].clone()),
                (roots[2].clone(), roots[1].clone()),
            ] {
                let r1 = step(a, b, &z1, &s).dist(&r);
                let r2 = step(a, b, &s, &r).dist(&z1);
                let r3 = step(a, b, &r, &z1).dist(&s);
                let mut worst = r1;
                for other in [r2, r3] {
                    if other.cmp(&worst) == Ordering::Greater {
                        worst = other;
                    }
                }
                let pts = vec![
                    (z1.clone(), s.clone()),
                    (s.clone(), r.clone()),
                    (r.clone(), z1.clone()),
                ];
                match &best {
                    Some((w, _)) if worst.cmp(w) != Ordering::Less => {}
                    _ => best = Some((worst, pts)),
                }
            }
            let (worst, points) = best.unwrap();
            if worst.cmp(&tol) != Ordering::Less {
                return Err(Error::InternalInconsistency(
                    "period-3 roots do not close up into a cycle".into(),
                ));
            }
            let (mu, tau) = accumulate(a, b, &points);
            Ok(CycleData {
                length: 3,
                points,
                mu,
                tau,
            })
        }
        _ => Err(Error::Domain(format!(
            "cycle length must be 2 or 3, got {ell}"
        ))),
    }
}

/// Closed-form determinant and trace of the period-ell cycle Jacobian.
pub fn cycle_multipliers(ell: u8, a: &MpComplex, b: &MpComplex) -> Result<(MpComplex, MpComplex)> {
    let prec = a.prec().max(b.prec());
    let one = MpComplex::one(prec);
    let two = MpComplex::from_i64(2, prec);
    let tol = degeneracy_tol(prec);
    match ell {
        2 => {
            let den = one.sub(a);
            if den.abs().cmp(&tol) != Ordering::Greater {
                return Err(Error::DegenerateParameter(
                    "period-2 multiplier denominator 1 - a vanishes".into(),
                ));
            }
            let mu = one.add(b).sub(a).div(&den);
            let tau = two.mul(a).sub(b).add(&b.mul(b)).sub(&one).div(&den);
            Ok((mu, tau))
        }
        3 => {
            let den = one.sub(a).add(&a.mul(b));
            if den.abs().cmp(&tol) != Ordering::Greater {
                return Err(Error::DegenerateParameter(
                    "period-3 multiplier denominator 1 - a + ab vanishes".into(),
                ));
            }
            let b2 = b.mul(b);
            let mu = one.add(b).add(&b2).sub(a).sub(&a.mul(b)).div(&den);
            // tau = -(2 + a^2 + b + 2 b^2 - b^3 + b^4 + a (-2 - b + 2 b^2)) / den
            let num = two
                .add(&a.mul(a))
                .add(b)
                .add(&two.mul(&b2))
                .sub(&b2.mul(b))
                .add(&b2.mul(&b2))
                .add(&a.mul(&two.neg().sub(b).add(&two.mul(&b2))));
            let tau = num.neg().div(&den);
            Ok((mu, tau))
        }
        _ => Err(Error::Domain(format!(
            "cycle length must be 2 or 3, got {ell}"
        ))),
    }
}
