use super::intpoly::{cyclotomic, IntPoly};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// The characteristic polynomial attached to the n-th map of the family:
///
/// ```text
/// chi_n(x) = x^(n+4) - x^(n+2) - x^(n+1) + x^3 + x^2 - 1
/// ```
///
/// built by summing monomials so that coefficient collisions at small n are
/// handled correctly.  Satisfies chi_n(1) = 0 for all n and the closed form
/// chi_n(t) = t^(n+1) (t^3 - t - 1) + (t^3 + t^2 - 1).
pub fn chi(n: u32) -> IntPoly {
    let n = n as usize;
    let mut c = vec![BigInt::zero(); n + 5];
    c[0] -= 1u32;
    c[2] += 1u32;
    c[3] += 1u32;
    c[n + 1] -= 1u32;
    c[n + 2] -= 1u32;
    c[n + 4] += 1u32;
    IntPoly::new(c)
}

pub fn chi_derivative(n: u32) -> IntPoly {
    chi(n).derivative()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FactorTag {
    /// The factor equals the cyclotomic polynomial of this index.
    Cyclotomic(u32),
    /// The non-cyclotomic cofactor (the minimal polynomial of the Salem
    /// number lambda_n once n >= 7).
    Salem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub poly: IntPoly,
    pub multiplicity: u32,
    pub tag: FactorTag,
}

/// Factorization of chi_n into scheduled cyclotomic factors plus the Salem
/// cofactor.  The product of `poly^multiplicity` over all entries equals
/// chi_n exactly; for n >= 7 every multiplicity is 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorList {
    pub n: u32,
    pub factors: Vec<Factor>,
}

impl FactorList {
    /// Product of the cyclotomic entries only (the polynomial usually
    /// written C_n).
    pub fn cyclotomic_product(&self) -> IntPoly {
        self.factors
            .iter()
            .filter(|f| matches!(f.tag, FactorTag::Cyclotomic(_)))
            .fold(IntPoly::one(), |acc, f| acc.mul(&f.poly.pow(f.multiplicity)))
    }

    /// The Salem cofactor (1 when the scheduled cyclotomic part exhausts
    /// chi_n, which happens only for n < 7).
    pub fn salem_factor(&self) -> IntPoly {
        self.factors
            .iter()
            .find(|f| f.tag == FactorTag::Salem)
            .map(|f| f.poly.clone())
            .unwrap_or_else(IntPoly::one)
    }

    pub fn product(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::one(), |acc, f| acc.mul(&f.poly.pow(f.multiplicity)))
    }

    pub fn cyclotomic_indices(&self) -> Vec<u32> {
        self.factors
            .iter()
            .filter_map(|f| match f.tag {
                FactorTag::Cyclotomic(k) => Some(k),
                FactorTag::Salem => None,
            })
            .collect()
    }
}

/// Indices k such that the cyclotomic polynomial of index k divides chi_n,
/// according to the congruence schedule on n.  The factor of index 1 (x - 1)
/// is always present.
fn scheduled_indices(n: u32) -> Vec<u32> {
    let mut ks = vec![1];
    if n % 2 == 0 {
        ks.push(2);
    }
    if n % 3 == 0 {
        ks.push(3);
    }
    if n % 5 == 1 {
        ks.push(5);
    }
    if n % 8 == 2 {
        ks.push(8);
    }
    if n % 12 == 3 {
        ks.push(12);
    }
    if n % 18 == 4 {
        ks.push(18);
    }
    if n % 30 == 5 {
        ks.push(30);
    }
    ks
}

/// Split chi_n into its scheduled cyclotomic factors (extracted with full
/// multiplicity) and the remaining cofactor.  Each scheduled factor must
/// divide at least once; a failure means the schedule and the polynomial
/// disagree, which is reported as an internal inconsistency rather than
/// papered over.
pub fn cyclotomic_part(n: u32) -> Result<FactorList> {
    let mut rem = chi(n);
    let mut factors = Vec::new();
    for k in scheduled_indices(n) {
        let phi = cyclotomic(k);
        let mut mult = 0u32;
        while let Some(q) = rem.div_exact(&phi) {
            rem = q;
            mult += 1;
        }
        if mult == 0 {
            return Err(Error::InternalInconsistency(format!(
                "cyclotomic factor of index {} scheduled at n = {} does not divide chi_{}",
                k, n, n
            )));
        }
        factors.push(Factor { poly: phi, multiplicity: mult, tag: FactorTag::Cyclotomic(k) });
    }
    if !rem.is_constant() {
        factors.push(Factor { poly: rem, multiplicity: 1, tag: FactorTag::Salem });
    } else if rem != IntPoly::one() {
        return Err(Error::InternalInconsistency(format!(
            "cofactor of chi_{} after cyclotomic extraction is the constant {}",
            n, rem
        )));
    }
    Ok(FactorList { n, factors })
}

/// The Salem factor psi_n of chi_n: what remains after removing the
/// scheduled cyclotomic part.  For n >= 7 this is the minimal polynomial of
/// the Salem number lambda_n; below that it degenerates (possibly to 1).
pub fn salem_poly(n: u32) -> Result<IntPoly> {
    Ok(cyclotomic_part(n)?.salem_factor())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::One;

    #[test]
    fn chi_closed_form_identity() {
        // chi_n(t) = t^(n+1) (t^3 - t - 1) + (t^3 + t^2 - 1)
        for n in 0..40u32 {
            let lhs = chi(n);
            let rhs = IntPoly::from_i64(&[-1, -1, 0, 1])
                .shift_up(n as usize + 1)
                .add(&IntPoly::from_i64(&[-1, 0, 1, 1]));
            assert_eq!(lhs, rhs, "n = {}", n);
        }
    }

    #[test]
    fn chi_vanishes_at_one() {
        let one = BigRational::one();
        for n in 0..30u32 {
            assert!(chi(n).eval_rational(&one).is_zero());
        }
    }

    #[test]
    fn chi_derivative_at_one() {
        // chi_n'(1) = 6 - n
        for n in 0..30u32 {
            let d = chi_derivative(n).eval_bigint(&BigInt::from(1));
            assert_eq!(d, BigInt::from(6i64 - n as i64), "n = {}", n);
        }
    }

    #[test]
    fn middle_coefficient_vanishes() {
        // The coefficient of x^(n+3) is zero for n >= 1 (at n = 0 the
        // low-order terms collide into that slot).
        for n in 1..50u32 {
            assert!(chi(n).coeff(n as usize + 3).is_zero(), "n = {}", n);
        }
        assert!(!chi(0).coeff(3).is_zero());
    }

    #[test]
    fn factorization_multiplies_back() {
        for n in 0..45u32 {
            let fl = cyclotomic_part(n).unwrap();
            assert_eq!(fl.product(), chi(n), "n = {}", n);
            assert_eq!(fl.cyclotomic_product().mul(&fl.salem_factor()), chi(n));
        }
    }

    #[test]
    fn repeated_factor_below_seven() {
        // chi_6 = (x-1)^3 (x+1) (x^2+x+1) (x^4+x^3+x^2+x+1): the root 1 is
        // triple, and the schedule exhausts the polynomial.
        let fl = cyclotomic_part(6).unwrap();
        let m1 = fl
            .factors
            .iter()
            .find(|f| f.tag == FactorTag::Cyclotomic(1))
            .unwrap()
            .multiplicity;
        assert_eq!(m1, 3);
        assert_eq!(fl.salem_factor(), IntPoly::one());
        assert_eq!(fl.cyclotomic_indices(), vec![1, 2, 3, 5]);
    }

    #[test]
    fn schedule_examples() {
        assert_eq!(cyclotomic_part(26).unwrap().cyclotomic_indices(), vec![1, 2, 5, 8]);
        assert_eq!(cyclotomic_part(7).unwrap().cyclotomic_indices(), vec![1]);
        assert_eq!(cyclotomic_part(11).unwrap().cyclotomic_indices(), vec![1, 5]);
    }

    #[test]
    fn salem_degrees_small_n() {
        // Frozen degrees of the Salem factor.
        let expect = [(7u32, 10usize), (8, 10), (9, 10), (10, 8), (11, 10), (12, 12), (26, 20)];
        for (n, d) in expect {
            assert_eq!(salem_poly(n).unwrap().degree(), Some(d), "n = {}", n);
        }
        for n in 7..60u32 {
            let deg = salem_poly(n).unwrap().degree().unwrap() as i64;
            assert!(deg >= n as i64 - 26 && deg <= n as i64 + 3, "n = {}", n);
        }
    }

    #[test]
    fn multiplicity_one_from_seven_on() {
        for n in 7..40u32 {
            assert!(cyclotomic_part(n)
                .unwrap()
                .factors
                .iter()
                .all(|f| f.multiplicity == 1));
        }
    }

    #[test]
    fn salem_factor_is_squarefree_and_noncyclotomic() {
        for n in 7..20u32 {
            let s = salem_poly(n).unwrap();
            assert!(s.is_squarefree());
            // No cyclotomic divisor of small index sneaks through.
            for k in 1..=(2 * n + 10) {
                assert!(
                    !cyclotomic(k).divides(&s),
                    "cyclotomic {} divides salem factor at n = {}",
                    k,
                    n
                );
            }
        }
    }
}
