use crate::mp::{MpComplex, MpReal};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::fmt;

/// Dense univariate polynomial over the integers.  Coefficients are stored in
/// ascending order of the exponent with no trailing zeros; the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn var() -> Self {
        IntPoly { coeffs: vec![BigInt::zero(), BigInt::one()] }
    }

    /// x^k
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut c = BigInt::zero();
            if let Some(a) = self.coeffs.get(i) {
                c += a;
            }
            if let Some(b) = other.coeffs.get(i) {
                c += b;
            }
            out.push(c);
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: c }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Exact division: returns the quotient when `self = q * d` for some
    /// integer polynomial q, and None otherwise.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let nd = self.degree().unwrap();
        let dd = d.degree().unwrap();
        if nd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); nd - dd + 1];
        let lc = d.leading();
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (quo, r) = top.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &quo * dc;
            }
            q[k] = quo;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(q))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        // Allow divisibility up to rational scaling: make both primitive first,
        // so 2x+2 divides x^2-1.
        other.primitive_positive().div_exact(&self.primitive_positive()).is_some()
    }

    /// Pseudo-remainder: prem(self, d) with the classical normalization
    /// lc(d)^(deg self - deg d + 1) * self = q*d + prem.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        let dd = d.degree().expect("pseudo_rem by zero polynomial");
        let da = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return self.clone(),
        };
        let lc = d.leading().clone();
        let mut r = self.clone();
        let mut steps = 0u32;
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lead = r.leading().clone();
            r = r.scale(&lc).sub(&d.shift_up(dr - dd).scale(&lead));
            steps += 1;
        }
        let total = (da - dd + 1) as u32;
        if steps < total {
            r = r.scale(&lc.pow(total - steps));
        }
        r
    }

    /// GCD of the coefficients, non-negative; content of zero is zero.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_positive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Polynomial GCD by the primitive pseudo-remainder sequence; result is
    /// primitive with positive leading coefficient.  gcd(p, 0) is the
    /// normalization of p.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_positive();
        }
        if other.is_zero() {
            return self.primitive_positive();
        }
        let mut a = self.primitive_positive();
        let mut b = other.primitive_positive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_zero() {
                return a.primitive_positive();
            }
            if b.is_constant() {
                return Self::one();
            }
            let r = a.pseudo_rem(&b).primitive_positive();
            a = b;
            b = r;
        }
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).is_constant()
    }

    /// Bit length of the largest coefficient magnitude.
    pub(crate) fn max_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_real(&self, x: &MpReal) -> MpReal {
        let prec = x.prec();
        let mut acc = MpReal::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&MpReal::from_bigint(c, prec));
        }
        acc
    }

    pub fn eval_complex(&self, z: &MpComplex) -> MpComplex {
        let prec = z.prec();
        let mut acc = MpComplex::zero(prec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(&MpComplex::from_bigint(c, prec));
        }
        acc
    }

    /// Coefficients converted to complex numbers at the given precision,
    /// ascending order (what the numeric root finders consume).
    pub fn to_complex_coeffs(&self, prec: u32) -> Vec<MpComplex> {
        self.coeffs.iter().map(|c| MpComplex::from_bigint(c, prec)).collect()
    }
}

/// Free-function alias with the argument-order-independent contract spelled
/// out at the call sites.
pub fn poly_gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    p.gcd(q)
}

/// The integer written in balanced radix-2^bits digits, read off as
/// polynomial coefficients (digit k is the coefficient of x^k).  Inverts
/// evaluation at 2^bits for any polynomial whose coefficients are below
/// 2^bits / 2 in magnitude.
pub(crate) fn poly_from_balanced_digits(value: &BigInt, bits: u64) -> IntPoly {
    let radix = BigInt::one() << (bits as usize);
    let half = &radix >> 1;
    let mut rest = value.clone();
    let mut coeffs = Vec::new();
    while !rest.is_zero() {
        let mut digit = rest.mod_floor(&radix);
        if digit > half {
            digit -= &radix;
        }
        rest = (rest - &digit) >> (bits as usize);
        coeffs.push(digit);
    }
    IntPoly::new(coeffs)
}

/// Greatest common divisor by evaluation: substitute a power of two well
/// above the coefficient sizes, take the integer gcd, reconstruct a
/// candidate from its balanced digits, and verify by exact division.  The
/// radix is chosen large enough that a verified candidate is provably the
/// gcd (any nonconstant cofactor would need a coefficient above half the
/// radix to evaluate to +-1); when the integer gcd picks up a spurious
/// factor the division check fails and the radix is enlarged, and after a
/// few misses the primitive-remainder-sequence gcd decides.  Result is
/// primitive with positive leading coefficient, matching `gcd`.
pub(crate) fn heu_gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    if p.is_zero() || q.is_zero() || p.is_constant() || q.is_constant() {
        return p.gcd(q);
    }
    let pp = p.primitive_positive();
    let qq = q.primitive_positive();
    let bound = |f: &IntPoly| f.max_coeff_bits() + f.degree().unwrap_or(0) as u64;
    let mut bits = bound(&pp).min(bound(&qq)) + 8;
    for _ in 0..3 {
        let xi = BigInt::one() << (bits as usize);
        let pv = pp.eval_bigint(&xi);
        let qv = qq.eval_bigint(&xi);
        if !pv.is_zero() && !qv.is_zero() {
            let cand = poly_from_balanced_digits(&pv.gcd(&qv), bits).primitive_positive();
            if !cand.is_zero()
                && pp.div_exact(&cand).is_some()
                && qq.div_exact(&cand).is_some()
            {
                return cand;
            }
        }
        bits = bits * 2 + 7;
    }
    pp.gcd(&qq)
}

/// The k-th cyclotomic polynomial, computed as (x^k - 1) divided by the
/// cyclotomic polynomials of the proper divisors of k.
pub fn cyclotomic(k: u32) -> IntPoly {
    assert!(k >= 1, "cyclotomic index must be positive");
    let mut num = {
        let mut c = vec![BigInt::zero(); k as usize + 1];
        c[0] = BigInt::from(-1);
        c[k as usize] = BigInt::one();
        IntPoly::new(c)
    };
    for d in 1..k {
        if k % d == 0 {
            num = num
                .div_exact(&cyclotomic(d))
                .expect("cyclotomic division is always exact");
        }
    }
    num
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", mag)?;
            }
            if i > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut s = serializer.serialize_struct("IntPoly", 1)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Raw {
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_division() {
        let p = IntPoly::from_i64(&[-1, 0, 1]); // x^2 - 1
        let d = IntPoly::from_i64(&[1, 1]); // x + 1
        let q = p.div_exact(&d).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[-1, 1]));
        assert!(p.div_exact(&IntPoly::from_i64(&[2, 1])).is_none());
        assert_eq!(d.mul(&q), p);
    }

    #[test]
    fn gcd_basics() {
        let a = IntPoly::from_i64(&[-1, 0, 1]); // (x-1)(x+1)
        let b = a.scale(&BigInt::from(3)); // 3(x-1)(x+1)
        assert_eq!(a.gcd(&b), a.primitive_positive());
        let c = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(a.gcd(&c), IntPoly::one());
        assert_eq!(a.gcd(&IntPoly::zero()), a);
        // normalization: negative leading, shared content
        let d = IntPoly::from_i64(&[4, -4]); // -4(x-1)
        assert_eq!(d.gcd(&IntPoly::zero()), IntPoly::from_i64(&[-1, 1]));
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(2), IntPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic(3), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(cyclotomic(5), IntPoly::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(cyclotomic(8), IntPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(18), IntPoly::from_i64(&[1, 0, 0, -1, 0, 0, 1]));
        assert_eq!(
            cyclotomic(30),
            IntPoly::from_i64(&[1, 1, 0, -1, -1, -1, 0, 1, 1])
        );
        // degree of cyclotomic(k) is Euler phi(k)
        assert_eq!(cyclotomic(105).degree(), Some(48));
    }

    #[test]
    fn squarefree_detection() {
        let p = IntPoly::from_i64(&[-1, 1]).pow(2);
        assert!(!p.is_squarefree());
        assert!(IntPoly::from_i64(&[-2, 0, 1]).is_squarefree());
    }

    #[test]
    fn json_roundtrip() {
        let p = IntPoly::from_i64(&[-1, 0, 7]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"coeffs":["-1","0","7"]}"#);
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn display_readable() {
        let p = IntPoly::from_i64(&[-1, 2, 0, 1]);
        assert_eq!(p.to_string(), "x^3 + 2*x - 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(IntPoly::from_i64(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn eval_consistency() {
        let p = IntPoly::from_i64(&[1, -3, 0, 2]);
        assert_eq!(p.eval_bigint(&BigInt::from(2)), BigInt::from(11));
        let x = MpReal::from_i64(2, 128);
        assert_eq!(p.eval_real(&x).to_f64(), 11.0);
    }
}
