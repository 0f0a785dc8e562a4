//! Affine-chart utilities: the conserved quantity of the b = 0 recurrence
//! and the linear-conjugacy normal form for maps written as
//! g(x, y) = (y + alpha, y/x + beta).

use crate::error::{Error, Result};
use crate::family::ParamPoint;
use crate::mp::{MpComplex, MpReal};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

/// r(x, y) = (x + y + a)(x + 1)(y + 1) / (x y), constant along orbits of
/// (x, y) -> (y, (y + a)/x).
fn invariant(a: &MpComplex, x: &MpComplex, y: &MpComplex) -> MpComplex {
    let prec = a.prec().max(x.prec()).max(y.prec());
    let one = MpComplex::one(prec);
    let num = x.add(y).add(a).mul(&x.add(&one)).mul(&y.add(&one));
    num.div(&x.mul(y))
}

fn check_excluded(a: &MpComplex, x: &MpComplex, y: &MpComplex, tol: &MpReal) -> Result<()> {
    let prec = tol.prec();
    let one = MpComplex::one(prec);
    let checks = [
        (x.abs(), "x = 0"),
        (y.abs(), "y = 0"),
        (x.add(&one).abs(), "x = -1"),
        (y.add(&one).abs(), "y = -1"),
        (x.add(y).add(a).abs(), "x + y + a = 0"),
    ];
    for (dist, locus) in checks {
        if dist.cmp(tol) != Ordering::Greater {
            return Err(Error::IndeterminateInput(format!(
                "orbit point on the excluded locus {locus}"
            )));
        }
    }
    Ok(())
}

/// Maximum relative drift of the conserved quantity over the k-step orbit of
/// `start` under the b = 0 map.  Every visited point must stay off the loci
/// where the invariant degenerates ({x=0}, {y=0}, {x=-1}, {y=-1},
/// {x+y+a=0}).
pub fn lyness_check(a: &MpComplex, start: &(MpComplex, MpComplex), k: u32) -> Result<MpReal> {
    let prec = a.prec().max(start.0.prec()).max(start.1.prec());
    let tol = MpReal::pow2(-((prec / 2) as i64), prec);
    let (mut x, mut y) = (start.0.clone(), start.1.clone());
    check_excluded(a, &x, &y, &tol)?;
    let r0 = invariant(a, &x, &y);
    let r0_abs = r0.abs();
    let mut worst = MpReal::zero(prec);
    for _ in 0..k {
        let next = y.add(a).div(&x);
        x = y;
        y = next;
        check_excluded(a, &x, &y, &tol)?;
        let drift = invariant(a, &x, &y).dist(&r0).div(&r0_abs);
        if drift.cmp(&worst) == Ordering::Greater {
            worst = drift;
        }
    }
    Ok(worst)
}

/// Parameters (a, b) = (beta, alpha + beta) of the translation-conjugate of
/// g(x, y) = (y + alpha, y/x + beta); the conjugacy is h(x, y) = (x + b, y + a).
pub fn normalize_conjugacy(alpha: &MpComplex, beta: &MpComplex) -> ParamPoint {
    ParamPoint { a: beta.clone(), b: alpha.add(beta), provenance: None }
}

/// Numeric witness for `normalize_conjugacy`: the largest deviation of
/// g(h(pt)) from h(f(pt)) over random short orbit segments.  A correct
/// normal form keeps this at roundoff level.
pub fn conjugacy_residual(alpha: &MpComplex, beta: &MpComplex, bits: u32) -> MpReal {
    let pp = normalize_conjugacy(alpha, beta);
    let (a, b) = (pp.a.with_prec(bits), pp.b.with_prec(bits));
    let (alpha, beta) = (alpha.with_prec(bits), beta.with_prec(bits));
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut worst = MpReal::zero(bits);
    let mut segments = 0;
    'outer: while segments < 20 {
        let mut x = MpComplex::from_f64_pair(
            rng.gen_range(0.5..2.0),
            rng.gen_range(-1.0..1.0),
            bits,
        );
        let mut y = MpComplex::from_f64_pair(
            rng.gen_range(0.5..2.0),
            rng.gen_range(-1.0..1.0),
            bits,
        );
        for _ in 0..5 {
            // f-side step, guarded away from the critical line
            let den = x.add(&b);
            if den.abs().to_f64() < 1e-6 || x.add(&b).abs().to_f64() < 1e-6 {
                continue 'outer;
            }
            let fx = y.clone();
            let fy = y.add(&a).div(&den);
            // g acting on the translated point h(x, y) = (x + b, y + a)
            let hx = x.add(&b);
            let hy = y.add(&a);
            if hx.abs().to_f64() < 1e-6 {
                continue 'outer;
            }
            let gx = hy.add(&alpha);
            let gy = hy.div(&hx).add(&beta);
            // compare with h(f(x, y))
            let ex = fx.add(&b);
            let ey = fy.add(&a);
            let dev = gx.dist(&ex).add(&gy.dist(&ey));
            if dev.cmp(&worst) == Ordering::Greater {
                worst = dev;
            }
            x = fx;
            y = fy;
        }
        segments += 1;
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> MpComplex {
        MpComplex::from_f64_pair(re, im, 256)
    }

    #[test]
    fn conserved_along_orbits() {
        let dev = lyness_check(&c(3.0, 0.0), &(c(1.0, 0.0), c(1.0, 0.0)), 100).unwrap();
        assert!(dev.to_f64() < 1e-10, "deviation {}", dev.to_f64());
        // the degeneration value a = -1/4 conserves as well
        let dev = lyness_check(&c(-0.25, 0.0), &(c(0.7, 0.3), c(-0.4, 1.1)), 100).unwrap();
        assert!(dev.to_f64() < 1e-10, "deviation {}", dev.to_f64());
    }

    #[test]
    fn random_parameters_conserve() {
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut runs = 0;
        while runs < 20 {
            let a = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let start = (
                c(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0)),
                c(rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0)),
            );
            match lyness_check(&a, &start, 100) {
                Ok(dev) => {
                    assert!(dev.to_f64() < 1e-10, "deviation {}", dev.to_f64());
                    runs += 1;
                }
                Err(Error::IndeterminateInput(_)) => continue,
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }

    #[test]
    fn excluded_loci_rejected() {
        assert!(matches!(
            lyness_check(&c(3.0, 0.0), &(c(-1.0, 0.0), c(2.0, 0.0)), 10),
            Err(Error::IndeterminateInput(_))
        ));
        assert!(matches!(
            lyness_check(&c(1.0, 0.0), &(c(2.0, 0.0), c(-3.0, 0.0)), 10),
            Err(Error::IndeterminateInput(_))
        ));
    }

    #[test]
    fn conjugacy_normal_form() {
        let pp = normalize_conjugacy(&c(0.0, 0.0), &c(0.0, 0.0));
        assert!(pp.a.is_zero() && pp.b.is_zero());
        let pp = normalize_conjugacy(&c(-1.0, 0.0), &c(1.0, 0.0));
        assert!(pp.a.dist(&c(1.0, 0.0)).to_f64() < 1e-70);
        assert!(pp.b.is_zero());
        let res = conjugacy_residual(&c(0.35, -0.8), &c(-1.2, 0.45), 256);
        assert!(res.to_f64() < 1e-25, "residual {}", res.to_f64());
    }
}
