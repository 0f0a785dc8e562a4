//! Exact a-posteriori certification of numeric root approximations.
//!
//! The bound used is elementary: for a degree-n polynomial p and any point z
//! with p'(z) != 0, the disk around z of radius n * |p(z) / p'(z)| contains
//! at least one root of p (from p'/p = sum 1/(z - r_k)).  If the disks built
//! this way around n approximations are pairwise disjoint, each contains
//! exactly one root.  Everything here is evaluated in exact integer
//! arithmetic on dyadic values, so a positive answer is a proof, not a hope.

use crate::exactpoly::IntPoly;
use crate::mp::MpComplex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Gaussian integer scaled by a power of two: (re + im*i) * 2^exp.
#[derive(Clone, Debug)]
struct DyadicComplex {
    re: BigInt,
    im: BigInt,
    exp: i64,
}

impl DyadicComplex {
    fn zero() -> Self {
        DyadicComplex { re: BigInt::zero(), im: BigInt::zero(), exp: 0 }
    }

    fn from_mp(z: &MpComplex) -> Self {
        let (mr, er) = z.re.mant_exp();
        let (mi, ei) = z.im.mant_exp();
        let e = er.min(ei);
        DyadicComplex {
            re: mr << ((er - e) as usize),
            im: mi << ((ei - e) as usize),
            exp: e,
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &Self) -> Self {
        DyadicComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
            exp: self.exp + o.exp,
        }
    }

    fn add(&self, o: &Self) -> Self {
        let e = self.exp.min(o.exp);
        let s1 = (self.exp - e) as usize;
        let s2 = (o.exp - e) as usize;
        DyadicComplex {
            re: (&self.re << s1) + (&o.re << s2),
            im: (&self.im << s1) + (&o.im << s2),
            exp: e,
        }
    }

    fn sub(&self, o: &Self) -> Self {
        let e = self.exp.min(o.exp);
        let s1 = (self.exp - e) as usize;
        let s2 = (o.exp - e) as usize;
        DyadicComplex {
            re: (&self.re << s1) - (&o.re << s2),
            im: (&self.im << s1) - (&o.im << s2),
            exp: e,
        }
    }

    fn add_int(&self, c: &BigInt) -> Self {
        self.add(&DyadicComplex { re: c.clone(), im: BigInt::zero(), exp: 0 })
    }

    /// |self|^2 as an exact rational.
    fn norm2(&self) -> BigRational {
        let n = &self.re * &self.re + &self.im * &self.im;
        let e = 2 * self.exp;
        if e >= 0 {
            BigRational::from_integer(n << (e as usize))
        } else {
            BigRational::new(n, BigInt::one() << ((-e) as usize))
        }
    }

    fn to_rational_pair(&self) -> (BigRational, BigRational) {
        let scale = |m: &BigInt| {
            if self.exp >= 0 {
                BigRational::from_integer(m << (self.exp as usize))
            } else {
                BigRational::new(m.clone(), BigInt::one() << ((-self.exp) as usize))
            }
        };
        (scale(&self.re), scale(&self.im))
    }
}

/// p(z) and p'(z) evaluated exactly at a dyadic point.
fn eval_with_derivative(p: &IntPoly, z: &DyadicComplex) -> (DyadicComplex, DyadicComplex) {
    let mut value = DyadicComplex::zero();
    let mut deriv = DyadicComplex::zero();
    for c in p.coeffs().iter().rev() {
        deriv = deriv.mul(z).add(&value);
        value = value.mul(z).add_int(c);
    }
    (value, deriv)
}

/// Certify that the disks around the numeric approximations isolate distinct
/// roots of p, in the presence of additional exactly-known (real rational)
/// roots.  Returns the squared radius for each numeric center; None when
/// certification fails (derivative vanishes at a center, or disks are not
/// provably disjoint), in which case the caller should retry at higher
/// precision.
pub(crate) fn certify_disks(
    p: &IntPoly,
    numeric: &[MpComplex],
    exact: &[BigRational],
) -> Option<Vec<BigRational>> {
    let deg = p.degree()? as u64;
    let deg2 = BigRational::from_integer(BigInt::from(deg * deg));
    let points: Vec<DyadicComplex> = numeric.iter().map(DyadicComplex::from_mp).collect();
    let mut radii2 = Vec::with_capacity(points.len());
    for z in &points {
        let (value, deriv) = eval_with_derivative(p, z);
        if deriv.is_zero() {
            return None;
        }
        radii2.push(&deg2 * value.norm2() / deriv.norm2());
    }
    let two = BigRational::from_integer(BigInt::from(2));
    // numeric vs numeric: |zi - zj|^2 > 2 (ri^2 + rj^2) implies
    // |zi - zj| > ri + rj.
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d2 = points[i].sub(&points[j]).norm2();
            if d2 <= &two * (&radii2[i] + &radii2[j]) {
                return None;
            }
        }
    }
    // numeric vs exact roots (each an exact point, radius zero)
    for (i, z) in points.iter().enumerate() {
        let (zr, zi) = z.to_rational_pair();
        for q in exact {
            let dr = &zr - q;
            let d2 = &dr * &dr + &zi * &zi;
            if d2 <= &two * &radii2[i] {
                return None;
            }
        }
    }
    Some(radii2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::MpReal;

    #[test]
    fn certifies_sqrt2_approximation() {
        // p = x^2 - 2; a good numeric approximation of sqrt(2) and -sqrt(2)
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let s = MpReal::from_i64(2, 128).sqrt();
        let plus = MpComplex::from_real(s.clone());
        let minus = MpComplex::from_real(s.neg());
        let radii = certify_disks(&p, &[plus, minus], &[]).expect("certification succeeds");
        // radius^2 should be tiny: the approximation carries ~128 good bits
        let bound = BigRational::new(BigInt::one(), BigInt::one() << 200usize);
        assert!(radii[0] < bound);
    }

    #[test]
    fn rejects_coincident_centers() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let z = MpComplex::from_f64_pair(1.414, 0.0, 64);
        assert!(certify_disks(&p, &[z.clone(), z], &[]).is_none());
    }

    #[test]
    fn rejects_center_on_exact_root() {
        // p = (x - 1)(x^2 - 2): numeric center sitting on the exact root 1
        let p = IntPoly::from_i64(&[-1, 1]).mul(&IntPoly::from_i64(&[-2, 0, 1]));
        let near_one = MpComplex::from_f64_pair(1.0 + 1e-12, 0.0, 64);
        let exact = vec![BigRational::one()];
        assert!(certify_disks(&p, &[near_one], &exact).is_none());
    }
}
