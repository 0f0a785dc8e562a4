use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Arbitrary-precision binary float: `mant * 2^exp`, mantissa kept to at most
/// `prec` significant bits by truncation toward zero.  Truncation (not
/// round-to-nearest) keeps the code simple; every consumer that needs a
/// guaranteed bound works at a precision comfortably above its tolerance, and
/// certification paths use exact rational arithmetic instead of this type.
#[derive(Clone, Debug)]
pub struct MpReal {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

impl MpReal {
    pub fn zero(prec: u32) -> Self {
        MpReal { mant: BigInt::zero(), exp: 0, prec }
    }

    pub fn from_bigint(n: &BigInt, prec: u32) -> Self {
        MpReal { mant: n.clone(), exp: 0, prec }.normalized()
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Self::from_bigint(&BigInt::from(n), prec)
    }

    /// num/den rounded (truncated) to `prec` bits.  The scaling shift adapts
    /// to the magnitude of the quotient so tiny values keep full relative
    /// precision instead of flushing to zero.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Self::zero(prec);
        }
        let mag_gap = den.magnitude().bits() as i64 - num.magnitude().bits() as i64;
        let shift = prec as i64 + 2 + mag_gap.max(0);
        let scaled = num << (shift as usize);
        let q = scaled / den;
        MpReal { mant: q, exp: -shift, prec }.normalized()
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self::zero(prec);
        }
        // Decompose into mantissa * 2^exp exactly.
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if raw_exp == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let mant = BigInt::from(sign) * BigInt::from(m);
        MpReal { mant, exp: e, prec }.normalized()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn mant_exp(&self) -> (&BigInt, i64) {
        (&self.mant, self.exp)
    }

    /// Exact value as a rational pair (numerator, power-of-two denominator exponent >= 0).
    pub fn to_rational_parts(&self) -> (BigInt, u64) {
        if self.exp >= 0 {
            (&self.mant << (self.exp as usize), 0)
        } else {
            (self.mant.clone(), (-self.exp) as u64)
        }
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        let bits = self.mant.magnitude().bits();
        let prec = self.prec as u64;
        if bits > prec {
            let shift = (bits - prec) as usize;
            let (sign, mag) = (self.mant.sign(), self.mant.magnitude().clone());
            let mag = mag >> shift;
            self.mant = BigInt::from_biguint(sign, mag);
            self.exp += shift as i64;
        }
        self
    }

    /// The same dyadic value carried at a different working precision
    /// (raising it does not invent information, but later operations keep
    /// more quotient bits).
    pub fn with_prec(&self, prec: u32) -> MpReal {
        MpReal { mant: self.mant.clone(), exp: self.exp, prec }.normalized()
    }

    /// Position of the most significant bit of |self| (value magnitude ~ 2^msb).
    fn msb(&self) -> i64 {
        self.exp + self.mant.magnitude().bits() as i64
    }

    pub fn neg(&self) -> MpReal {
        MpReal { mant: -&self.mant, exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> MpReal {
        MpReal { mant: self.mant.abs(), exp: self.exp, prec: self.prec }
    }

    pub fn add(&self, other: &MpReal) -> MpReal {
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return other.with_prec(prec);
        }
        if other.is_zero() {
            return self.with_prec(prec);
        }
        // If the operands' scales are too far apart the smaller one is below
        // one ulp of the result; adding it exactly would blow the mantissa up.
        let gap = prec as i64 + 8;
        if self.msb() - other.msb() > gap {
            return self.with_prec(prec);
        }
        if other.msb() - self.msb() > gap {
            return other.with_prec(prec);
        }
        let (lo, hi) = if self.exp <= other.exp { (self, other) } else { (other, self) };
        let shifted = &hi.mant << ((hi.exp - lo.exp) as usize);
        MpReal { mant: shifted + &lo.mant, exp: lo.exp, prec }.normalized()
    }

    pub fn sub(&self, other: &MpReal) -> MpReal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MpReal) -> MpReal {
        let prec = self.prec.max(other.prec);
        MpReal {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
            prec,
        }
        .normalized()
    }

    pub fn mul_i64(&self, k: i64) -> MpReal {
        MpReal { mant: &self.mant * k, exp: self.exp, prec: self.prec }.normalized()
    }

    pub fn div(&self, other: &MpReal) -> MpReal {
        assert!(!other.is_zero(), "division by zero");
        let prec = self.prec.max(other.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        // The quotient keeps (self_bits + shift - other_bits) significant
        // bits, so widen the shift by the mantissa-length gap; otherwise a
        // short-mantissa numerator (an exact integer, say) would yield a
        // quotient far below working precision.
        let gap =
            other.mant.magnitude().bits() as i64 - self.mant.magnitude().bits() as i64;
        let shift = prec as i64 + 8 + gap.max(0);
        let scaled = &self.mant << (shift as usize);
        let q = scaled / &other.mant;
        MpReal { mant: q, exp: self.exp - other.exp - shift, prec }.normalized()
    }

    /// Parse a plain decimal string ("-12.345", "0.5", "7") at the given
    /// precision.
    pub fn from_decimal_str(s: &str, prec: u32) -> Option<Self> {
        let s = s.trim();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        let digits: String = [int_part, frac_part].concat();
        if !digits.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let num: BigInt = digits.parse().ok()?;
        let num = if neg { -num } else { num };
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        Some(Self::from_ratio(&num, &den, prec))
    }

    /// Truncated square root; panics on negative input.
    pub fn sqrt(&self) -> MpReal {
        assert!(!self.is_negative(), "sqrt of negative value");
        if self.is_zero() {
            return Self::zero(self.prec);
        }
        // Scale mantissa so the integer sqrt carries ~prec significant bits
        // and the scaled exponent is even.
        let target_bits = 2 * self.prec as i64 + 8;
        let cur_bits = self.mant.magnitude().bits() as i64;
        let mut shift = (target_bits - cur_bits).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let scaled: BigUint = self.mant.magnitude() << (shift as usize);
        let root = scaled.sqrt();
        MpReal {
            mant: BigInt::from_biguint(Sign::Plus, root),
            exp: (self.exp - shift) / 2,
            prec: self.prec,
        }
        .normalized()
    }

    /// Square root rounded up: the result r satisfies r*r >= self, so it is
    /// safe to use as an enclosure radius.
    pub fn sqrt_upper(&self) -> MpReal {
        let mut r = self.sqrt();
        if self.is_zero() {
            return r;
        }
        let bump = {
            let one = MpReal::from_i64(1, self.prec);
            one.add(&MpReal::pow2(-(self.prec as i64) + 4, self.prec))
        };
        while r.mul(&r).cmp(self) == Ordering::Less {
            r = r.mul(&bump);
        }
        r
    }

    pub fn cmp(&self, other: &MpReal) -> Ordering {
        let s = self.mant.sign();
        let o = other.mant.sign();
        if s != o {
            return match (s, o) {
                (Sign::Minus, _) => Ordering::Less,
                (_, Sign::Minus) => Ordering::Greater,
                (Sign::NoSign, Sign::Plus) => Ordering::Less,
                (Sign::Plus, Sign::NoSign) => Ordering::Greater,
                _ => Ordering::Equal,
            };
        }
        if s == Sign::NoSign {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare aligned mantissas exactly.
        let e = self.exp.min(other.exp);
        let a = &self.mant << ((self.exp - e) as usize);
        let b = &other.mant << ((other.exp - e) as usize);
        a.cmp(&b)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.magnitude().bits();
        let (top, e) = if bits > 53 {
            let sh = (bits - 53) as usize;
            ((self.mant.magnitude() >> sh).to_u64().unwrap(), self.exp + (bits - 53) as i64)
        } else {
            (self.mant.magnitude().to_u64().unwrap(), self.exp)
        };
        let sign = if self.mant.is_negative() { -1.0 } else { 1.0 };
        sign * top as f64 * 2f64.powi(e as i32)
    }

    /// Power of two: 2^k at this value's precision.
    pub fn pow2(k: i64, prec: u32) -> MpReal {
        MpReal { mant: BigInt::from(1), exp: k, prec }
    }

    /// Decimal string with `digits` digits after the point, round half away
    /// from zero.  Deterministic: same value and digits give the same bytes.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude().clone();
        let pow10 = BigUint::from(10u32).pow(digits as u32);
        // |value| * 10^digits = mag * 10^digits * 2^exp, rounded to integer.
        let scaled: BigUint = &mag * &pow10;
        let rounded: BigUint = if self.exp >= 0 {
            scaled << (self.exp as usize)
        } else {
            let sh = (-self.exp) as usize;
            let floor = &scaled >> sh;
            // round half away from zero on the magnitude
            if sh >= 1 {
                let half_bit = (&scaled >> (sh - 1)) & BigUint::from(1u32);
                if half_bit == BigUint::from(1u32) {
                    floor + 1u32
                } else {
                    floor
                }
            } else {
                floor
            }
        };
        let s = rounded.to_string();
        let (int_part, frac_part) = if s.len() > digits {
            let split = s.len() - digits;
            (s[..split].to_string(), s[split..].to_string())
        } else {
            ("0".to_string(), format!("{:0>width$}", s, width = digits))
        };
        let sign = if neg && !(int_part == "0" && frac_part.chars().all(|c| c == '0')) {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{}{}", sign, int_part)
        } else {
            format!("{}{}.{}", sign, int_part, frac_part)
        }
    }
}

impl fmt::Display for MpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // ~prec * log10(2) meaningful digits
        let digits = (self.prec as f64 * 0.30103).ceil() as usize;
        write!(f, "{}", self.to_decimal(digits.min(80)))
    }
}

impl PartialEq for MpReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> MpReal {
        MpReal::from_f64(x, 128)
    }

    #[test]
    fn arithmetic_roundtrips() {
        let a = r(3.5);
        let b = r(-1.25);
        assert_eq!(a.add(&b).to_f64(), 2.25);
        assert_eq!(a.mul(&b).to_f64(), -4.375);
        assert_eq!(a.sub(&b).to_f64(), 4.75);
        assert!((a.div(&b).to_f64() + 2.8).abs() < 1e-15);
    }

    #[test]
    fn sqrt_of_two() {
        let two = MpReal::from_i64(2, 256);
        let s = two.sqrt();
        let err = s.mul(&s).sub(&two).abs();
        assert!(err.cmp(&MpReal::pow2(-250, 256)) == Ordering::Less);
    }

    #[test]
    fn ratio_and_cmp() {
        let third = MpReal::from_ratio(&BigInt::from(1), &BigInt::from(3), 200);
        let x = third.mul_i64(3);
        let one = MpReal::from_i64(1, 200);
        assert!(x.sub(&one).abs().cmp(&MpReal::pow2(-190, 200)) == Ordering::Less);
        assert_eq!(third.cmp(&one), Ordering::Less);
        assert_eq!(one.cmp(&third.neg()), Ordering::Greater);
    }

    #[test]
    fn decimal_formatting() {
        let x = MpReal::from_ratio(&BigInt::from(1), &BigInt::from(4), 64);
        assert_eq!(x.to_decimal(3), "0.250");
        assert_eq!(x.neg().to_decimal(3), "-0.250");
        assert_eq!(MpReal::from_i64(7, 64).to_decimal(0), "7");
        assert_eq!(MpReal::zero(64).to_decimal(2), "0.00");
    }

    #[test]
    fn widely_separated_add() {
        let big = MpReal::pow2(300, 128);
        let tiny = MpReal::pow2(-300, 128);
        assert_eq!(big.add(&tiny).cmp(&big), Ordering::Equal);
    }
}
