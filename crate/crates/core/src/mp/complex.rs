use super::real::MpReal;
use num_bigint::BigInt;
use std::cmp::Ordering;
use std::fmt;

/// Complex number over [`MpReal`].
#[derive(Clone, Debug, PartialEq)]
pub struct MpComplex {
    pub re: MpReal,
    pub im: MpReal,
}

impl MpComplex {
    pub fn new(re: MpReal, im: MpReal) -> Self {
        MpComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        MpComplex { re: MpReal::zero(prec), im: MpReal::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        MpComplex { re: MpReal::from_i64(1, prec), im: MpReal::zero(prec) }
    }

    pub fn from_real(re: MpReal) -> Self {
        let prec = re.prec();
        MpComplex { re, im: MpReal::zero(prec) }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_real(MpReal::from_i64(n, prec))
    }

    pub fn from_f64_pair(re: f64, im: f64, prec: u32) -> Self {
        MpComplex { re: MpReal::from_f64(re, prec), im: MpReal::from_f64(im, prec) }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        Self::from_real(MpReal::from_bigint(n, prec))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    /// The same dyadic value carried at a different working precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        MpComplex { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        MpComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn neg(&self) -> Self {
        MpComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn add(&self, other: &Self) -> Self {
        MpComplex { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        MpComplex { re: self.re.sub(&other.re), im: self.im.sub(&other.im) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        MpComplex { re, im }
    }

    pub fn mul_real(&self, k: &MpReal) -> Self {
        MpComplex { re: self.re.mul(k), im: self.im.mul(k) }
    }

    pub fn norm_sqr(&self) -> MpReal {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> MpReal {
        self.norm_sqr().sqrt()
    }

    pub fn div(&self, other: &Self) -> Self {
        let d = other.norm_sqr();
        assert!(!d.is_zero(), "division by zero");
        let num = self.mul(&other.conj());
        MpComplex { re: num.re.div(&d), im: num.im.div(&d) }
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec()).div(self)
    }

    /// Integer power by binary exponentiation; negative exponents go through
    /// the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        if n < 0 {
            return self.recip().powi(-n);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.prec());
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Principal square root (branch cut along the negative real axis, so the
    /// result has nonnegative real part).  The half with the larger magnitude
    /// is computed by a real square root and the other half recovered from
    /// im/(2*larger), which avoids cancellation when re is close to -|z|.
    pub fn sqrt(&self) -> Self {
        let prec = self.prec();
        if self.is_zero() {
            return Self::zero(prec);
        }
        let m = self.norm_sqr().sqrt();
        let half = MpReal::pow2(-1, prec);
        if !self.re.is_negative() {
            let u = m.add(&self.re).mul(&half).sqrt();
            let v = self.im.div(&u).mul(&half);
            MpComplex { re: u, im: v }
        } else {
            let w = m.sub(&self.re).mul(&half).sqrt();
            if self.im.is_zero() {
                return MpComplex { re: MpReal::zero(prec), im: w };
            }
            let u = self.im.abs().div(&w).mul(&half);
            let v = if self.im.is_negative() { w.neg() } else { w };
            MpComplex { re: u, im: v }
        }
    }

    /// Distance |self - other|.
    pub fn dist(&self, other: &Self) -> MpReal {
        self.sub(other).abs()
    }

    /// Principal argument in [0, 2*pi), returned as an f64 (diagnostic use:
    /// ordering roots by argument, never certification).
    pub fn arg_f64(&self) -> f64 {
        let a = self.im.to_f64().atan2(self.re.to_f64());
        if a < 0.0 {
            a + 2.0 * std::f64::consts::PI
        } else {
            a
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// True if |self - other| < 2^threshold_exp.
    pub fn close_to(&self, other: &Self, threshold_exp: i64) -> bool {
        let d = self.dist(other);
        d.cmp(&MpReal::pow2(threshold_exp, self.prec())) == Ordering::Less
    }
}

impl fmt::Display for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{} - {}i", self.re, self.im.abs())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_div_inverse() {
        let a = MpComplex::from_f64_pair(1.5, -2.0, 128);
        let b = MpComplex::from_f64_pair(-0.25, 3.0, 128);
        let prod = a.mul(&b);
        let back = prod.div(&b);
        assert!(back.dist(&a).cmp(&MpReal::pow2(-120, 128)) == Ordering::Less);
    }

    #[test]
    fn powers() {
        let i = MpComplex::from_f64_pair(0.0, 1.0, 96);
        let m1 = i.powi(2);
        assert!(m1.re.to_f64() == -1.0 && m1.im.is_zero());
        let back = i.powi(-3);
        assert!(back.dist(&i).cmp(&MpReal::pow2(-90, 96)) == Ordering::Less);
    }

    #[test]
    fn norms() {
        let z = MpComplex::from_f64_pair(3.0, 4.0, 128);
        assert_eq!(z.norm_sqr().to_f64(), 25.0);
        assert_eq!(z.abs().to_f64(), 5.0);
    }

    #[test]
    fn sqrt_squares_back() {
        let tol = MpReal::pow2(-120, 128);
        for (re, im) in [(2.0, 0.0), (-2.0, 0.0), (-3.0, 1e-6), (-3.0, -1e-6), (0.0, 4.0), (1.5, -2.5)] {
            let z = MpComplex::from_f64_pair(re, im, 128);
            let r = z.sqrt();
            assert!(
                r.mul(&r).dist(&z).cmp(&tol) == Ordering::Less,
                "sqrt({re},{im}) err {:e}",
                r.mul(&r).dist(&z).to_f64()
            );
            assert!(!r.re.is_negative());
        }
        assert!(MpComplex::zero(64).sqrt().is_zero());
        // principal branch: sqrt(-4) = 2i, not -2i
        let m4 = MpComplex::from_i64(-4, 128).sqrt();
        assert!(m4.re.is_zero() && m4.im.to_f64() == 2.0);
    }
}
