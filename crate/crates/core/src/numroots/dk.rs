//! Simultaneous root iteration (Weierstrass / Durand–Kerner) on complex
//! multiprecision polynomials.  Output is a full set of uncertified
//! approximations; certification happens separately in exact arithmetic.

use crate::mp::{MpComplex, MpReal};
use std::cmp::Ordering;
use std::f64::consts::PI;

pub(crate) fn eval(coeffs: &[MpComplex], z: &MpComplex) -> MpComplex {
    let prec = z.prec();
    let mut acc = MpComplex::zero(prec);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc
}

/// All roots of the polynomial with the given ascending coefficients
/// (leading coefficient nonzero, degree >= 1).  Returns None when the
/// iteration has not met the tolerance within the iteration budget.
pub(crate) fn dk_roots(
    coeffs: &[MpComplex],
    tol_exp: i64,
    max_iter: u32,
) -> Option<Vec<MpComplex>> {
    let n = coeffs.len() - 1;
    assert!(n >= 1 && !coeffs[n].is_zero(), "dk_roots needs positive degree");
    let prec = coeffs[0].prec();
    let monic: Vec<MpComplex> = coeffs.iter().map(|c| c.div(&coeffs[n])).collect();

    // Initial guesses on a circle of the Cauchy radius, with an angular
    // offset so the configuration is not conjugate-symmetric (symmetric
    // configurations can stall on real polynomials).
    let radius = 1.0
        + monic[..n]
            .iter()
            .map(|c| {
                let (x, y) = c.to_f64_pair();
                x.hypot(y)
            })
            .fold(0.0f64, f64::max);
    let radius = radius.min(1e30);
    let mut z: Vec<MpComplex> = (0..n)
        .map(|k| {
            let theta = 2.0 * PI * (k as f64) / (n as f64) + 0.7;
            MpComplex::from_f64_pair(radius * theta.cos(), radius * theta.sin(), prec)
        })
        .collect();

    let thresh = MpReal::pow2(tol_exp, prec);
    for _ in 0..max_iter {
        let mut worst = MpReal::zero(prec);
        for i in 0..n {
            let pv = eval(&monic, &z[i]);
            let mut den = MpComplex::one(prec);
            for j in 0..n {
                if j != i {
                    den = den.mul(&z[i].sub(&z[j]));
                }
            }
            if den.is_zero() {
                // coincident iterates: nudge and keep going
                z[i] = z[i].add(&MpComplex::from_f64_pair(1e-3, 2e-3, prec));
                worst = MpReal::from_i64(1, prec);
                continue;
            }
            let w = pv.div(&den);
            let wabs = w.abs();
            if wabs.cmp(&worst) == Ordering::Greater {
                worst = wabs;
            }
            z[i] = z[i].sub(&w);
        }
        if worst.cmp(&thresh) == Ordering::Less {
            return Some(z);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        // x^2 - 3x + 2 = (x-1)(x-2)
        let coeffs = vec![
            MpComplex::from_i64(2, 192),
            MpComplex::from_i64(-3, 192),
            MpComplex::from_i64(1, 192),
        ];
        let mut roots = dk_roots(&coeffs, -150, 200).unwrap();
        roots.sort_by(|a, b| a.re.cmp(&b.re));
        let tol = MpReal::pow2(-100, 192);
        let err1 = roots[0].sub(&MpComplex::from_i64(1, 192)).abs();
        let err2 = roots[1].sub(&MpComplex::from_i64(2, 192)).abs();
        assert!(err1.cmp(&tol) == Ordering::Less);
        assert!(err2.cmp(&tol) == Ordering::Less);
    }

    #[test]
    fn unit_circle_cluster() {
        // x^8 - 1: eight roots on the unit circle
        let mut coeffs = vec![MpComplex::zero(128); 9];
        coeffs[0] = MpComplex::from_i64(-1, 128);
        coeffs[8] = MpComplex::from_i64(1, 128);
        let roots = dk_roots(&coeffs, -100, 300).unwrap();
        let one = MpReal::from_i64(1, 128);
        let tol = MpReal::pow2(-80, 128);
        for r in &roots {
            let err = r.abs().sub(&one).abs();
            assert!(err.cmp(&tol) == Ordering::Less);
        }
    }
}
