use super::intpoly::IntPoly;
use crate::mp::MpComplex;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

/// Rational function in one variable t with rational coefficients, stored as
/// a reduced fraction of integer polynomials: gcd(num, den) = 1, the pair
/// carries no common integer content, and the denominator has positive
/// leading coefficient.  Zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc { num: IntPoly::zero(), den: IntPoly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let c = num.content().gcd(&den.content());
        let mut c = BigInt::from(c);
        if den.leading().is_negative() {
            c = -c;
        }
        num = IntPoly::new(num.coeffs().iter().map(|x| x / &c).collect());
        den = IntPoly::new(den.coeffs().iter().map(|x| x / &c).collect());
        RatFunc { num, den }
    }

    pub fn zero() -> Self {
        RatFunc { num: IntPoly::zero(), den: IntPoly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: IntPoly::one(), den: IntPoly::one() }
    }

    pub fn from_poly(p: IntPoly) -> Self {
        RatFunc { num: p, den: IntPoly::one() }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_poly(IntPoly::from_i64(&[n]))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::new(IntPoly::from_i64(&[n]), IntPoly::from_i64(&[d]))
    }

    /// The variable t.
    pub fn t() -> Self {
        Self::from_poly(IntPoly::var())
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Self {
        Self::one().div(self)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.recip().pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = e as u64;
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

    pub fn eval_complex(&self, t: &MpComplex) -> MpComplex {
        self.num.eval_complex(t).div(&self.den.eval_complex(t))
    }

    /// None when the denominator vanishes at t.
    pub fn eval_rational(&self, t: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_rational(t);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval_rational(t) / d)
        }
    }

    /// True when the denominator vanishes at the given exact rational point.
    pub fn pole_at_rational(&self, t: &BigRational) -> bool {
        self.den.eval_rational(t).is_zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == IntPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_happens() {
        // (t^2 - 1) / (t - 1) reduces to t + 1
        let r = RatFunc::new(IntPoly::from_i64(&[-1, 0, 1]), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(r, RatFunc::from_poly(IntPoly::from_i64(&[1, 1])));
        // sign and content normalization: 2t / (-4) becomes (-t) / 2
        let s = RatFunc::new(IntPoly::from_i64(&[0, 2]), IntPoly::from_i64(&[-4]));
        assert_eq!(s.num(), &IntPoly::from_i64(&[0, -1]));
        assert_eq!(s.den(), &IntPoly::from_i64(&[2]));
    }

    #[test]
    fn field_identities() {
        let t = RatFunc::t();
        let x = t.mul(&t).sub(&RatFunc::one()).div(&t.add(&RatFunc::one()));
        // (t^2 - 1)/(t + 1) = t - 1
        assert_eq!(x, t.sub(&RatFunc::one()));
        let y = RatFunc::from_ratio(3, 6);
        assert_eq!(y.add(&y), RatFunc::one());
        assert_eq!(t.pow(-2).mul(&t.pow(5)), t.pow(3));
    }

    #[test]
    fn zero_handling() {
        let t = RatFunc::t();
        let z = t.sub(&t);
        assert!(z.is_zero());
        assert_eq!(z.den(), &IntPoly::one());
    }
}
