//! Resonance identities for the distinguished spectra along the curves, and
//! the eligibility classification for rotation domains at the fixed points.

use super::fixed::eigen_from_trace_det;
use crate::error::{Error, Result};
use crate::exactpoly::{chi, salem_poly, IntPoly};
use crate::mp::{MpComplex, MpReal};
use crate::numroots::{isolate_roots, AlgebraicNumber, ModulusClass};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

#[derive(Clone, Debug)]
pub struct ResonanceReport {
    pub j: u8,
    pub n: u32,
    /// Exponent e with |eta1^e * eta2 - 1| reported as the residual.
    pub exponent: u32,
    pub eta1: MpComplex,
    pub eta2: MpComplex,
    pub residual: MpReal,
}

impl Serialize for ResonanceReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = ((self.eta1.prec() as f64) * 0.30103).ceil() as usize;
        let c = |z: &MpComplex| [z.re.to_decimal(digits), z.im.to_decimal(digits)];
        let mut s = serializer.serialize_struct("ResonanceReport", 6)?;
        s.serialize_field("j", &self.j)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("exponent", &self.exponent)?;
        s.serialize_field("eta1", &c(&self.eta1))?;
        s.serialize_field("eta2", &c(&self.eta2))?;
        s.serialize_field("residual", &self.residual.to_decimal(digits.min(40)))?;
        s.end()
    }
}

fn require_curve_root(j: u8, n: u32, t: &AlgebraicNumber, poly: &IntPoly, what: &str) -> Result<()> {
    super::check_j(j)?;
    if n == 0 || n % (j as u32) != 0 {
        return Err(Error::PreconditionFailed(format!(
            "curve index {j} must divide the orbit length {n}"
        )));
    }
    if !t.minpoly.divides(poly) {
        return Err(Error::PreconditionFailed(format!(
            "t is not a root of {what} for n = {n}"
        )));
    }
    Ok(())
}

/// The eigenvalue pair whose power relation is checked: for j = 1 the
/// R-fixed-point spectrum {1/t, -(t^3+t^2-1)/(t^4-t^2-t)}; for j = 2, 3 the
/// period-j cycle spectrum {t^-j, -t^(j-1) (t^3+t^2-1)/(t^3-t-1)}.
fn resonance_spectrum(j: u8, tt: &MpComplex) -> (MpComplex, MpComplex) {
    let p_top = IntPoly::from_i64(&[-1, 0, 1, 1]); // t^3 + t^2 - 1
    let p_bot = IntPoly::from_i64(&[-1, -1, 0, 1]); // t^3 - t - 1
    let top = p_top.eval_complex(tt);
    let bot = p_bot.eval_complex(tt);
    if j == 1 {
        let eta1 = tt.recip();
        let eta2 = top.div(&tt.mul(&bot)).neg();
        (eta1, eta2)
    } else {
        let l = j as i64;
        let eta1 = tt.powi(-l);
        let eta2 = tt.powi(l - 1).mul(&top).div(&bot).neg();
        (eta1, eta2)
    }
}

/// Residual of the multiplicative eigenvalue relation along the curve: for
/// j = 1 the relation is eta1^n * eta2 = 1 at the R fixed point, and for
/// j = 2, 3 it is eta1^(n/j + 1) * eta2 = 1 for the period-j cycle spectrum.
/// Requires j | n and t an exact root of the degree-(n+4) recurrence
/// polynomial (checked through minimal-polynomial divisibility).
pub fn resonance_check(j: u8, n: u32, t: &AlgebraicNumber) -> Result<ResonanceReport> {
    require_curve_root(j, n, t, &chi(n), "the orbit-locus characteristic polynomial")?;
    let tt = &t.approx;
    let prec = tt.prec();
    let (eta1, eta2) = resonance_spectrum(j, tt);
    let exponent = if j == 1 { n } else { n / (j as u32) + 1 };
    let relation = eta1.powi(exponent as i64).mul(&eta2);
    let residual = relation.sub(&MpComplex::one(prec)).abs();
    Ok(ResonanceReport {
        j,
        n,
        exponent,
        eta1,
        eta2,
        residual,
    })
}

/// How the on-circle test for the R-point eigenvalue moduli is decided for
/// each curve (a condition on Re t once |t| = 1).
fn boundary_description(j: u8) -> String {
    match j {
        1 => "both R-point eigenvalue moduli are 1 whenever |t| = 1".into(),
        2 => "Re(t) outside ((-7 - sqrt(17))/16, (-7 + sqrt(17))/16)".into(),
        _ => "Re(t) >= -7/8".into(),
    }
}

/// R-fixed-point spectrum from the closed trace/determinant forms.
fn r_point_spectrum(j: u8, tt: &MpComplex) -> (MpComplex, MpComplex) {
    let prec = tt.prec();
    let one = MpComplex::one(prec);
    match j {
        1 => resonance_spectrum(1, tt),
        2 => {
            let q = one.add(tt).add(&tt.mul(tt));
            let tau = one.add(tt).div(&q);
            eigen_from_trace_det(&tau, &tt.recip())
        }
        _ => {
            let tau = one.add(tt).recip();
            eigen_from_trace_det(&tau, &tt.recip())
        }
    }
}

/// True when Re(t) satisfies the on-circle criterion for the given curve.
fn re_condition(j: u8, tt: &MpComplex) -> bool {
    let prec = tt.prec();
    let re = &tt.re;
    match j {
        2 => {
            let s17 = MpReal::from_i64(17, prec).sqrt();
            let sixteenth = MpReal::from_ratio(&(-1).into(), &16.into(), prec);
            let seven = MpReal::from_i64(7, prec);
            let lo = seven.add(&s17).mul(&sixteenth);
            let hi = seven.sub(&s17).mul(&sixteenth);
            re.cmp(&lo) != Ordering::Greater || re.cmp(&hi) != Ordering::Less
        }
        3 => {
            let bound = MpReal::from_ratio(&(-7).into(), &8.into(), prec);
            re.cmp(&bound) != Ordering::Less
        }
        _ => true,
    }
}

#[derive(Clone, Debug)]
pub struct RotationReport {
    pub j: u8,
    pub n: u32,
    /// |t| = 1 and t is not one of the two real reciprocal roots, so the
    /// S fixed point is a rank-1 rotation candidate.
    pub rank1_at_fps: bool,
    /// Both R-point eigenvalue moduli are 1 (decided by the Re(t) criterion
    /// for curves 2 and 3, by direct moduli for curve 1).
    pub fpr_moduli_on_circle: bool,
    /// On-circle moduli and no multiplicative relation found by the bounded
    /// search, so the R point is a rank-2 rotation candidate.
    pub rank2_candidate: bool,
    /// t is the root outside or inside the unit circle.
    pub saddle: bool,
    pub fpr_eigenvalue_moduli: (MpReal, MpReal),
    pub relation_found: Option<(i64, i64)>,
    pub relation_bound: u32,
    pub relation_bits: u32,
    pub boundary: String,
}

impl Serialize for RotationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = ((self.fpr_eigenvalue_moduli.0.prec() as f64) * 0.30103).ceil() as usize;
        let mut s = serializer.serialize_struct("RotationReport", 11)?;
        s.serialize_field("j", &self.j)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("rank1_at_FPs", &self.rank1_at_fps)?;
        s.serialize_field("FPr_moduli_on_circle", &self.fpr_moduli_on_circle)?;
        s.serialize_field("rank2_candidate", &self.rank2_candidate)?;
        s.serialize_field("saddle", &self.saddle)?;
        s.serialize_field(
            "FPr_eigenvalue_moduli",
            &[
                self.fpr_eigenvalue_moduli.0.to_decimal(digits),
                self.fpr_eigenvalue_moduli.1.to_decimal(digits),
            ],
        )?;
        s.serialize_field("relation_found", &self.relation_found)?;
        s.serialize_field("relation_bound", &self.relation_bound)?;
        s.serialize_field("relation_bits", &self.relation_bits)?;
        s.serialize_field("boundary", &self.boundary)?;
        s.end()
    }
}

const RELATION_BOUND: u32 = 50;
const RELATION_BITS: u32 = 512;

/// Search for eta1^m1 * eta2^m2 = 1 with 0 < |m1| + |m2| <= bound.  The
/// spectra here are expected to be multiplicatively independent except for
/// the known curve-1 resonance, so a hit for j = 2, 3 flags a defect.
fn relation_search(
    eta1: &MpComplex,
    eta2: &MpComplex,
    bound: u32,
    threshold_exp: i64,
) -> Option<(i64, i64)> {
    let prec = eta1.prec();
    let b = bound as i64;
    let one = MpComplex::one(prec);
    let tol = MpReal::pow2(threshold_exp, prec);
    // power tables for both signs
    let table = |z: &MpComplex| -> (Vec<MpComplex>, Vec<MpComplex>) {
        let mut pos = vec![one.clone()];
        let mut neg = vec![one.clone()];
        let zi = z.recip();
        for k in 1..=bound as usize {
            pos.push(pos[k - 1].mul(z));
            neg.push(neg[k - 1].mul(&zi));
        }
        (pos, neg)
    };
    let (p1, n1) = table(eta1);
    let (p2, n2) = table(eta2);
    let power = |pos: &[MpComplex], neg: &[MpComplex], m: i64| -> MpComplex {
        if m >= 0 {
            pos[m as usize].clone()
        } else {
            neg[(-m) as usize].clone()
        }
    };
    // Relations come in +/- pairs, so scanning m1 >= 0 (m2 > 0 when m1 = 0)
    // covers everything; ascending |m1| + |m2| reports a minimal one.
    for s in 1..=b {
        for m1 in 0..=s {
            let l = s - m1;
            let signs: &[i64] = if m1 == 0 {
                &[1]
            } else if l == 0 {
                &[0]
            } else {
                &[1, -1]
            };
            for &sign in signs {
                let m2 = sign * l;
                let prod = power(&p1, &n1, m1).mul(&power(&p2, &n2, m2));
                if prod.sub(&one).abs().cmp(&tol) == Ordering::Less {
                    return Some((m1, m2));
                }
            }
        }
    }
    None
}

/// Re-isolate t's minimal polynomial at the given precision and return the
/// root enclosure matching t.
fn refine_root(t: &AlgebraicNumber, bits: u32) -> Result<AlgebraicNumber> {
    if t.precision_bits() >= bits {
        return Ok(t.clone());
    }
    let roots = isolate_roots(&t.minpoly, bits)?;
    roots
        .into_iter()
        .min_by(|p, q| {
            p.approx
                .dist(&t.approx)
                .cmp(&q.approx.dist(&t.approx))
        })
        .ok_or_else(|| Error::InternalInconsistency("no roots on refinement".into()))
}

/// Rotation-domain eligibility for a root t of the orbit-locus Salem factor.
pub fn rotation_classify(j: u8, n: u32, t: &AlgebraicNumber) -> Result<RotationReport> {
    require_curve_root(j, n, t, &salem_poly(n)?, "the non-cyclotomic factor")?;
    let tt = &t.approx;
    let prec = tt.prec();
    let class = t.modulus_class();
    let saddle = class != ModulusClass::OnCircle;
    let rank1 = class == ModulusClass::OnCircle;

    let (r1, r2) = r_point_spectrum(j, tt);
    let moduli = (r1.abs(), r2.abs());
    let on_circle = if j == 1 {
        let tol = MpReal::pow2(-((prec / 3) as i64), prec);
        let one = MpReal::pow2(0, prec);
        rank1
            && moduli.0.sub(&one).abs().cmp(&tol) == Ordering::Less
            && moduli.1.sub(&one).abs().cmp(&tol) == Ordering::Less
    } else {
        rank1 && re_condition(j, tt)
    };

    let relation_found = if on_circle {
        let fine = refine_root(t, RELATION_BITS)?;
        let (e1, e2) = r_point_spectrum(j, &fine.approx);
        relation_search(&e1, &e2, RELATION_BOUND, -200)
    } else {
        None
    };
    Ok(RotationReport {
        j,
        n,
        rank1_at_fps: rank1,
        fpr_moduli_on_circle: on_circle,
        rank2_candidate: on_circle && relation_found.is_none(),
        saddle,
        fpr_eigenvalue_moduli: moduli,
        relation_found,
        relation_bound: RELATION_BOUND,
        relation_bits: RELATION_BITS,
        boundary: boundary_description(j),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numroots::{salem_root, salem_roots};

    #[test]
    fn curve_one_resonance_at_lambda_seven() {
        let t = salem_root(7, 256).unwrap();
        let rep = resonance_check(1, 7, &t).unwrap();
        assert_eq!(rep.exponent, 7);
        assert!(rep.residual.to_f64() < 1e-30, "residual {}", rep.residual.to_f64());
    }

    #[test]
    fn cycle_resonances_on_even_and_triple_loci() {
        for (j, n) in [(2u8, 8u32), (3, 9)] {
            for t in salem_roots(n, 256).unwrap() {
                let rep = resonance_check(j, n, &t).unwrap();
                assert_eq!(rep.exponent, n / (j as u32) + 1);
                assert!(
                    rep.residual.to_f64() < 1e-30,
                    "j={j} n={n} residual {}",
                    rep.residual.to_f64()
                );
            }
        }
    }

    #[test]
    fn preconditions_enforced() {
        let t = salem_root(7, 128).unwrap();
        assert!(matches!(
            resonance_check(2, 7, &t),
            Err(Error::PreconditionFailed(_))
        ));
        // an integer is never a root of the locus polynomial
        let two = AlgebraicNumber {
            minpoly: IntPoly::from_i64(&[-2, 1]),
            approx: MpComplex::from_i64(2, 128),
            radius: MpReal::pow2(-100, 128),
        };
        assert!(matches!(
            resonance_check(1, 7, &two),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn saddle_and_rank1_flags() {
        let roots = salem_roots(7, 256).unwrap();
        let lambda = &roots[0];
        let rep = rotation_classify(1, 7, lambda).unwrap();
        assert!(rep.saddle && !rep.rank1_at_fps && !rep.rank2_candidate);
        // a circle root: rank-1 eligible, and for curve 1 the known power
        // relation must be found, blocking rank 2
        let circle = roots.iter().find(|r| r.modulus_class() == ModulusClass::OnCircle).unwrap();
        let rep = rotation_classify(1, 7, circle).unwrap();
        assert!(!rep.saddle && rep.rank1_at_fps);
        assert!(rep.fpr_moduli_on_circle);
        assert_eq!(rep.relation_found, Some((7, 1)));
        assert!(!rep.rank2_candidate);
    }

    #[test]
    fn rank_two_candidates_on_curve_two_locus_eight() {
        let roots = salem_roots(8, 256).unwrap();
        let mut found = 0;
        for t in roots.iter().filter(|r| r.modulus_class() == ModulusClass::OnCircle) {
            let rep = rotation_classify(2, 8, t).unwrap();
            if rep.fpr_moduli_on_circle {
                assert!(rep.relation_found.is_none(), "unexpected relation {:?}", rep.relation_found);
                assert!(rep.rank2_candidate);
                found += 1;
            }
        }
        assert!(found >= 1, "no rank-2 candidate among the circle roots");
    }

    #[test]
    fn booleans_stable_under_refinement() {
        for t in salem_roots(9, 128).unwrap() {
            let lo = rotation_classify(3, 9, &t).unwrap();
            let fine = refine_root(&t, 256).unwrap();
            let hi = rotation_classify(3, 9, &fine).unwrap();
            let one = MpReal::from_i64(1, 256);
            assert_eq!(
                lo.rank1_at_fps,
                hi.rank1_at_fps,
                "root {} | lo: |t|-1 = {:e}, radius {:e} | hi: |t|-1 = {:e}, radius {:e}",
                t.approx,
                t.approx.abs().sub(&one).to_f64(),
                t.radius.to_f64(),
                fine.approx.abs().sub(&one).to_f64(),
                fine.radius.to_f64()
            );
            assert_eq!(lo.fpr_moduli_on_circle, hi.fpr_moduli_on_circle);
            assert_eq!(lo.rank2_candidate, hi.rank2_candidate);
            assert_eq!(lo.saddle, hi.saddle);
        }
    }
}
