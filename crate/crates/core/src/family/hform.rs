//! Homogeneous forms in three variables with pluggable coefficient rings.
//!
//! The cubic identity P(f(x)) = t * j_f(x) * P(x) is checked twice: once with
//! coefficients in Q(t) (exact), once with multiprecision complex coefficients
//! (round-off measurement).  Both share this representation.

use crate::exactpoly::RatFunc;
use crate::mp::MpComplex;
use std::collections::BTreeMap;

/// The arithmetic a coefficient ring must supply.
pub trait Coeff: Clone {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Additive identity shaped like `self` (carries precision along for
    /// multiprecision rings).
    fn zero_like(&self) -> Self;
    /// Small integer constant shaped like `proto`.
    fn small(n: i64, proto: &Self) -> Self;
}

impl Coeff for RatFunc {
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        RatFunc::zero()
    }
    fn small(n: i64, _proto: &Self) -> Self {
        RatFunc::from_i64(n)
    }
}

impl Coeff for MpComplex {
    fn add(&self, other: &Self) -> Self {
        MpComplex::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MpComplex::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MpComplex::mul(self, other)
    }
    fn neg(&self) -> Self {
        MpComplex::neg(self)
    }
    fn is_zero(&self) -> bool {
        MpComplex::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        MpComplex::zero(self.prec())
    }
    fn small(n: i64, proto: &Self) -> Self {
        MpComplex::from_i64(n, proto.prec())
    }
}

/// A homogeneous form of fixed degree in x0, x1, x2.  Terms are keyed by the
/// exponent triple; exactly-zero coefficients are not stored, so a form over
/// an exact ring is identically zero iff `terms` is empty.
#[derive(Clone, Debug)]
pub struct HForm<C: Coeff> {
    deg: u32,
    terms: BTreeMap<(u8, u8, u8), C>,
}

impl<C: Coeff> HForm<C> {
    pub fn new(deg: u32) -> Self {
        HForm {
            deg,
            terms: BTreeMap::new(),
        }
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    pub fn add_term(&mut self, key: (u8, u8, u8), c: C) {
        assert_eq!(
            key.0 as u32 + key.1 as u32 + key.2 as u32,
            self.deg,
            "exponent triple must match the degree"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            None => {
                self.terms.insert(key, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
        }
    }

    pub fn coeff(&self, i: u8, j: u8, k: u8) -> Option<&C> {
        self.terms.get(&(i, j, k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(u8, u8, u8), &C)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Number of monomials of this degree in three variables.
    pub fn monomial_count(&self) -> usize {
        let d = self.deg as usize;
        (d + 1) * (d + 2) / 2
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.deg, other.deg);
        let mut out = self.clone();
        for (key, c) in other.terms.iter() {
            out.add_term(*key, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.deg, other.deg);
        let mut out = self.clone();
        for (key, c) in other.terms.iter() {
            out.add_term(*key, c.neg());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = HForm::new(self.deg);
        for (key, v) in self.terms.iter() {
            out.add_term(*key, v.mul(c));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = HForm::new(self.deg + other.deg);
        for (ka, ca) in self.terms.iter() {
            for (kb, cb) in other.terms.iter() {
                let key = (ka.0 + kb.0, ka.1 + kb.1, ka.2 + kb.2);
                out.add_term(key, ca.mul(cb));
            }
        }
        out
    }

    fn pow(&self, e: u32) -> Self {
        assert!(e >= 1);
        let mut out = self.clone();
        for _ in 1..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitute x_i -> images[i]; the images must all share one degree d,
    /// giving a form of degree d * deg(self).
    pub fn compose(&self, images: &[HForm<C>; 3]) -> Self {
        let d = images[0].deg;
        assert!(images.iter().all(|f| f.deg == d));
        let mut out = HForm::new(self.deg * d);
        for (key, c) in self.terms.iter() {
            let exps = [key.0 as u32, key.1 as u32, key.2 as u32];
            let mut factor: Option<HForm<C>> = None;
            for v in 0..3 {
                if exps[v] == 0 {
                    continue;
                }
                let p = images[v].pow(exps[v]);
                factor = Some(match factor {
                    None => p,
                    Some(f) => f.mul(&p),
                });
            }
            let term = factor
                .expect("degree-zero term in a positive-degree form")
                .scale(c);
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, x: &[C; 3]) -> C {
        let mut acc = x[0].zero_like();
        for (key, c) in self.terms.iter() {
            let mut term = c.clone();
            for _ in 0..key.0 {
                term = term.mul(&x[0]);
            }
            for _ in 0..key.1 {
                term = term.mul(&x[1]);
            }
            for _ in 0..key.2 {
                term = term.mul(&x[2]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute x2 = r0*x0 + r1*x1, returning a form in x0, x1 only (the
    /// x2 exponent of every stored key is zero).  Used to test divisibility
    /// by a linear form with nonzero x2 coefficient.
    pub fn restrict_to_line(&self, r0: &C, r1: &C) -> Self {
        let mut out = HForm::new(self.deg);
        for (key, c) in self.terms.iter() {
            let k = key.2 as u32;
            for m in 0..=k {
                let mut coef = c.mul(&C::small(binomial(k, m), c));
                for _ in 0..m {
                    coef = coef.mul(r0);
                }
                for _ in 0..(k - m) {
                    coef = coef.mul(r1);
                }
                out.add_term((key.0 + m as u8, key.1 + (k - m) as u8, 0), coef);
            }
        }
        out
    }
}

fn binomial(n: u32, k: u32) -> i64 {
    let mut acc = 1i64;
    for i in 0..k {
        acc = acc * (n - i) as i64 / (i + 1) as i64;
    }
    acc
}

/// The three degree-2 components of the map in homogeneous coordinates,
/// [x0 (b x0 + x1) : x2 (b x0 + x1) : x0 (a x0 + x2)].
pub fn map_components<C: Coeff>(a: &C, b: &C) -> [HForm<C>; 3] {
    let one = C::small(1, a);
    let mut f0 = HForm::new(2);
    f0.add_term((2, 0, 0), b.clone());
    f0.add_term((1, 1, 0), one.clone());
    let mut f1 = HForm::new(2);
    f1.add_term((1, 0, 1), b.clone());
    f1.add_term((0, 1, 1), one.clone());
    let mut f2 = HForm::new(2);
    f2.add_term((2, 0, 0), a.clone());
    f2.add_term((1, 0, 1), one);
    [f0, f1, f2]
}

/// The cubic x0 (b x0 + x1)(a x0 + x2), which divides the Jacobian
/// determinant of the map (the three contracted lines).
pub fn jacobian_form<C: Coeff>(a: &C, b: &C) -> HForm<C> {
    let one = C::small(1, a);
    let mut j = HForm::new(3);
    j.add_term((3, 0, 0), a.mul(b));
    j.add_term((2, 1, 0), a.clone());
    j.add_term((2, 0, 1), b.clone());
    j.add_term((1, 1, 1), one);
    j
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(n: i64) -> RatFunc {
        RatFunc::from_i64(n)
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let mut p = HForm::<RatFunc>::new(2);
        p.add_term((2, 0, 0), rf(1));
        p.add_term((1, 1, 0), rf(-3));
        let q = p.clone();
        assert!(p.sub(&q).is_zero());
        let sq = p.mul(&p);
        assert_eq!(sq.deg(), 4);
        // (x0^2 - 3 x0 x1)^2 = x0^4 - 6 x0^3 x1 + 9 x0^2 x1^2
        assert_eq!(sq.coeff(4, 0, 0), Some(&rf(1)));
        assert_eq!(sq.coeff(3, 1, 0), Some(&rf(-6)));
        assert_eq!(sq.coeff(2, 2, 0), Some(&rf(9)));
        assert_eq!(sq.term_count(), 3);
    }

    #[test]
    fn compose_degrees() {
        let a = rf(2);
        let b = rf(5);
        let comps = map_components(&a, &b);
        let mut p = HForm::<RatFunc>::new(3);
        p.add_term((1, 1, 1), rf(1));
        let c = p.compose(&comps);
        assert_eq!(c.deg(), 6);
        // x0 x1 x2 o F = x0 x2 (b x0 + x1)^2 (a x0 + x2); check one corner:
        // coefficient of x0^4 x2^2 is a b^2 + ... evaluate instead at a point.
        let x = [rf(1), rf(-1), rf(3)];
        let fx = [
            comps[0].eval(&x),
            comps[1].eval(&x),
            comps[2].eval(&x),
        ];
        assert_eq!(c.eval(&x), p.eval(&fx));
    }

    #[test]
    fn restriction_detects_divisibility() {
        // (x2 - x0 - 2 x1)(x0 + x1) expanded, then restricted to
        // x2 = x0 + 2 x1, must vanish identically.
        let mut lin = HForm::<RatFunc>::new(1);
        lin.add_term((0, 0, 1), rf(1));
        lin.add_term((1, 0, 0), rf(-1));
        lin.add_term((0, 1, 0), rf(-2));
        let mut other = HForm::<RatFunc>::new(1);
        other.add_term((1, 0, 0), rf(1));
        other.add_term((0, 1, 0), rf(1));
        let prod = lin.mul(&other);
        let r = prod.restrict_to_line(&rf(1), &rf(2));
        assert!(r.is_zero());
        let r2 = other.mul(&other).restrict_to_line(&rf(1), &rf(2));
        assert!(!r2.is_zero());
    }

    #[test]
    fn jacobian_form_matches_product() {
        let a = rf(7);
        let b = rf(-2);
        let j = jacobian_form(&a, &b);
        let x = [rf(2), rf(3), rf(-5)];
        // x0 (b x0 + x1)(a x0 + x2) at (2,3,-5) = 2 * (-4+3) * (14-5) = -18
        assert_eq!(j.eval(&x), rf(-18));
    }
}
