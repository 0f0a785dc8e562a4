//! The three parameter curves t -> (a, b) along which the plane map
//! preserves a cubic, together with everything attached to them: the cubic
//! itself, fixed points and short cycles with their multipliers, resonance
//! identities, rotation-domain eligibility, and numeric curve membership.

pub mod hform;

mod cycles;
mod fixed;
mod gamma;
mod rotation;

pub use cycles::{cycle_multipliers, cycle_points, CycleData};
pub use fixed::{fixed_points, omega, FixedPointData, FixedPointKind};
pub use gamma::{gamma_membership, GammaMatch};
pub use rotation::{resonance_check, rotation_classify, ResonanceReport, RotationReport};

use crate::error::{Error, Result};
use crate::exactpoly::{IntPoly, RatFunc};
use crate::mp::{MpComplex, MpReal};
use crate::numroots::AlgebraicNumber;
use hform::{jacobian_form, map_components, Coeff, HForm};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;

/// A parameter pair, optionally tagged with the curve and curve coordinate
/// it came from.
#[derive(Clone, Debug)]
pub struct ParamPoint {
    pub a: MpComplex,
    pub b: MpComplex,
    pub provenance: Option<Provenance>,
}

#[derive(Clone, Debug)]
pub struct Provenance {
    pub j: u8,
    pub t: AlgebraicNumber,
    /// Orbit length when known (the locus index n).
    pub n: Option<u32>,
}

impl Serialize for ParamPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = ((self.a.prec().max(self.b.prec()) as f64) * 0.30103).ceil() as usize;
        let mut s = serializer.serialize_struct("ParamPoint", 5)?;
        s.serialize_field("a_re", &self.a.re.to_decimal(digits))?;
        s.serialize_field("a_im", &self.a.im.to_decimal(digits))?;
        s.serialize_field("b_re", &self.b.re.to_decimal(digits))?;
        s.serialize_field("b_im", &self.b.im.to_decimal(digits))?;
        match &self.provenance {
            Some(p) => {
                s.serialize_field(
                    "provenance",
                    &serde_json::json!({
                        "j": p.j,
                        "t": p.t,
                        "n": p.n,
                    }),
                )?;
            }
            None => s.serialize_field("provenance", &())?,
        }
        s.end()
    }
}

fn check_j(j: u8) -> Result<()> {
    if (1..=3).contains(&j) {
        Ok(())
    } else {
        Err(Error::Domain(format!("curve index must be 1, 2 or 3, got {j}")))
    }
}

/// The curve t -> (a, b) as a pair of rational functions.
pub fn phi_symbolic(j: u8) -> Result<(RatFunc, RatFunc)> {
    check_j(j)?;
    let p = |c: &[i64]| IntPoly::from_i64(c);
    Ok(match j {
        1 => (
            RatFunc::new(p(&[0, 1, 0, -1, -1]), p(&[1, 2, 1])),
            RatFunc::new(p(&[1, 0, 0, 0, 0, -1]), p(&[0, 0, 1, 1])),
        ),
        2 => (
            RatFunc::new(p(&[0, 1, 1, 1]), p(&[1, 2, 1])),
            RatFunc::new(p(&[-1, 0, 0, 1]), p(&[0, 1, 1])),
        ),
        _ => (
            RatFunc::new(p(&[1, 1]), p(&[1])),
            RatFunc::new(p(&[-1, 0, 1]), p(&[0, 1])),
        ),
    })
}

/// Magnitude below which a quantity counts as vanishing for parameter
/// exclusion tests, relative to the working precision.
fn exclusion_tol(prec: u32) -> MpReal {
    MpReal::pow2(-((prec / 2) as i64), prec)
}

fn is_excluded_t(t: &MpComplex) -> bool {
    let prec = t.prec();
    let tol = exclusion_tol(prec);
    let one = MpComplex::one(prec);
    if t.abs().cmp(&tol) == Ordering::Less {
        return true;
    }
    if t.sub(&one).abs().cmp(&tol) == Ordering::Less {
        return true;
    }
    if t.add(&one).abs().cmp(&tol) == Ordering::Less {
        return true;
    }
    t.powi(3).sub(&one).abs().cmp(&tol) == Ordering::Less
}

/// Raw curve formula at a numeric t.  Only genuine poles are rejected;
/// removable points such as t = 1 on curve 1 evaluate to their direct value.
pub fn phi_value(j: u8, t: &MpComplex) -> Result<(MpComplex, MpComplex)> {
    check_j(j)?;
    let (fa, fb) = phi_symbolic(j)?;
    let prec = t.prec();
    let tol = exclusion_tol(prec);
    for f in [&fa, &fb] {
        let d = f.den().eval_complex(t);
        if d.abs().cmp(&tol) != Ordering::Greater {
            return Err(Error::DegenerateParameter(format!(
                "curve {j} formula has a pole at t = {t}"
            )));
        }
    }
    Ok((fa.eval_complex(t), fb.eval_complex(t)))
}

/// Curve point (a, b) = phi_j(t) for a non-excluded t: the excluded values
/// t in {0, 1, -1} and t^3 = 1, where the construction degenerates, are
/// rejected even when the bare formula would evaluate.
pub fn phi(j: u8, t: &MpComplex) -> Result<(MpComplex, MpComplex)> {
    check_j(j)?;
    if is_excluded_t(t) {
        return Err(Error::ExcludedParameter(format!(
            "t = {t} is excluded: the curves are defined away from 0, roots of unity of order dividing 2, and cube roots of 1"
        )));
    }
    phi_value(j, t)
}

/// Exact-rational curve evaluation (poles and excluded values rejected).
pub fn phi_rational(j: u8, t: &BigRational) -> Result<(BigRational, BigRational)> {
    check_j(j)?;
    if t.is_zero() || t.abs().is_one() {
        return Err(Error::ExcludedParameter(format!(
            "t = {t} is excluded from the parameter curves"
        )));
    }
    let (fa, fb) = phi_symbolic(j)?;
    let a = fa
        .eval_rational(t)
        .ok_or_else(|| Error::DegenerateParameter("pole in a(t)".into()))?;
    let b = fb
        .eval_rational(t)
        .ok_or_else(|| Error::DegenerateParameter("pole in b(t)".into()))?;
    Ok((a, b))
}

/// Curve point carrying its provenance, for an algebraic t.
pub fn param_point(j: u8, t: &AlgebraicNumber, n: Option<u32>) -> Result<ParamPoint> {
    let (a, b) = phi(j, &t.approx)?;
    Ok(ParamPoint {
        a,
        b,
        provenance: Some(Provenance { j, t: t.clone(), n }),
    })
}

/// The invariant cubic with coefficients in a generic ring; `t`, `a`, `b`
/// must already satisfy (a, b) = phi_j(t) for the identity to hold.
fn cubic_terms<C: Coeff>(t: &C, a: &C, b: &C) -> HForm<C> {
    let one = C::small(1, t);
    let two = C::small(2, t);
    let tm1 = t.sub(&one);
    let t2 = t.mul(t);
    let t3 = t2.mul(t);
    let t4 = t3.mul(t);
    let mut p = HForm::new(3);
    p.add_term((3, 0, 0), a.mul(&t4).mul(&tm1));
    p.add_term((2, 1, 0), tm1.mul(&t3).mul(&a.add(t)));
    p.add_term((2, 0, 1), tm1.mul(&t4).mul(&a.sub(&two.mul(b)).add(t)));
    p.add_term((1, 2, 0), tm1.mul(&t3));
    p.add_term((1, 1, 1), two.mul(b).mul(&t3));
    p.add_term((1, 0, 2), tm1.mul(&one.add(&b.mul(t))));
    p.add_term((0, 2, 1), tm1.mul(&t2));
    p.add_term((0, 1, 2), tm1.mul(t));
    p
}

/// The invariant cubic, either exact over Q(t) or evaluated at a numeric t.
#[derive(Clone, Debug)]
pub enum CubicForm {
    Symbolic(HForm<RatFunc>),
    Numeric { t: MpComplex, form: HForm<MpComplex> },
}

impl CubicForm {
    pub fn symbolic_form(&self) -> Option<&HForm<RatFunc>> {
        match self {
            CubicForm::Symbolic(f) => Some(f),
            _ => None,
        }
    }

    pub fn numeric_form(&self) -> Option<&HForm<MpComplex>> {
        match self {
            CubicForm::Numeric { form, .. } => Some(form),
            _ => None,
        }
    }
}

/// Exact invariant cubic of curve j, coefficients in Q(t).
pub fn invariant_cubic_symbolic(j: u8) -> Result<CubicForm> {
    let (a, b) = phi_symbolic(j)?;
    Ok(CubicForm::Symbolic(cubic_terms(&RatFunc::t(), &a, &b)))
}

/// Invariant cubic at a numeric parameter t on curve j.
pub fn invariant_cubic(j: u8, t: &MpComplex) -> Result<CubicForm> {
    let (a, b) = phi(j, t)?;
    Ok(CubicForm::Numeric {
        t: t.clone(),
        form: cubic_terms(t, &a, &b),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FeMode {
    Symbolic,
    Numeric,
}

/// Outcome of checking P(f(x)) - t * j_f(x) * P(x) = 0 coefficientwise.
#[derive(Clone, Debug)]
pub struct FeReport {
    pub j: u8,
    pub mode: FeMode,
    pub coefficients_checked: usize,
    pub all_zero: bool,
    /// Numeric mode: max |coefficient| of the difference after dividing by
    /// the x0^3 coefficient of P (falling back to P's largest coefficient).
    pub max_residual: Option<MpReal>,
}

impl Serialize for FeReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("FeReport", 5)?;
        s.serialize_field("j", &self.j)?;
        s.serialize_field("mode", &self.mode)?;
        s.serialize_field("coefficients_checked", &self.coefficients_checked)?;
        s.serialize_field("all_zero", &self.all_zero)?;
        let r = self.max_residual.as_ref().map(|r| {
            let digits = ((r.prec() as f64) * 0.30103).ceil() as usize;
            r.to_decimal(digits.min(40))
        });
        s.serialize_field("max_residual", &r)?;
        s.end()
    }
}

/// Exact check of the cubic identity over Q(t) for curve j.
pub fn verify_functional_equation_symbolic(j: u8) -> Result<FeReport> {
    let (a, b) = phi_symbolic(j)?;
    let t = RatFunc::t();
    let p = cubic_terms(&t, &a, &b);
    let lhs = p.compose(&map_components(&a, &b));
    let rhs = jacobian_form(&a, &b).mul(&p).scale(&t);
    let diff = lhs.sub(&rhs);
    Ok(FeReport {
        j,
        mode: FeMode::Symbolic,
        coefficients_checked: diff.monomial_count(),
        all_zero: diff.is_zero(),
        max_residual: None,
    })
}

/// Round-off measurement of the cubic identity at a numeric t.
pub fn verify_functional_equation_numeric(j: u8, t: &MpComplex) -> Result<FeReport> {
    let (a, b) = phi(j, t)?;
    let p = cubic_terms(t, &a, &b);
    let lhs = p.compose(&map_components(&a, &b));
    let rhs = jacobian_form(&a, &b).mul(&p).scale(t);
    let diff = lhs.sub(&rhs);
    let prec = t.prec();
    let mut lead = p
        .coeff(3, 0, 0)
        .map(|c| c.abs())
        .unwrap_or_else(|| MpReal::zero(prec));
    if lead.is_zero() {
        for (_, c) in p.iter() {
            let m = c.abs();
            if m.cmp(&lead) == Ordering::Greater {
                lead = m;
            }
        }
    }
    let mut worst = MpReal::zero(prec);
    for (_, c) in diff.iter() {
        let m = c.abs();
        if m.cmp(&worst) == Ordering::Greater {
            worst = m;
        }
    }
    let residual = worst.div(&lead);
    Ok(FeReport {
        j,
        mode: FeMode::Numeric,
        coefficients_checked: diff.monomial_count(),
        all_zero: residual.is_zero(),
        max_residual: Some(residual),
    })
}
