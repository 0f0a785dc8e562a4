//! Certified complex root isolation at configurable precision, plus the
//! extraction of the distinguished Salem root of each characteristic
//! polynomial and finite-sample small-divisor diagnostics on unit-circle
//! roots.

mod certify;
pub(crate) mod dk;

use crate::error::{Error, Result};
use crate::exactpoly::{cyclotomic, salem_poly, IntPoly};
use crate::mp::{MpComplex, MpReal};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

pub(crate) use dk::dk_roots;

/// A root of an integer polynomial, given by the polynomial it was isolated
/// from, a numeric approximation, and a certified isolation radius: the
/// polynomial has exactly one root within `radius` of `approx` (radius 0 for
/// exactly-known rational roots).
///
/// `minpoly` is the primitive squarefree polynomial handed to the isolator;
/// when that polynomial is reducible it is a proper multiple of the true
/// minimal polynomial, which is fine for the equality semantics used here
/// (same polynomial and overlapping enclosures).
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    pub minpoly: IntPoly,
    pub approx: MpComplex,
    pub radius: MpReal,
}

impl AlgebraicNumber {
    pub fn precision_bits(&self) -> u32 {
        self.approx.prec()
    }

    /// Certified real: the enclosure disk meets the real axis, and since the
    /// conjugate of the enclosed root is also a root within the mirrored
    /// disk, disjointness forces the root onto the axis.
    pub fn is_real(&self) -> bool {
        self.approx.im.abs().cmp(&self.radius) != Ordering::Greater
    }

    /// Same isolating polynomial and overlapping enclosures.
    pub fn equals(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
            && self.approx.dist(&other.approx).cmp(&self.radius.add(&other.radius))
                != Ordering::Greater
    }

    /// Where the enclosure sits relative to the unit circle.  The comparison
    /// is exact on the dyadic data (|z|^2 against (1 +- r)^2): a truncated
    /// |z| would carry an error of the same order as the radius itself and
    /// could misclassify roots lying on the circle.
    pub fn modulus_class(&self) -> ModulusClass {
        let rat = |x: &MpReal| -> BigRational {
            let (num, den_exp) = x.to_rational_parts();
            if den_exp == 0 {
                BigRational::from_integer(num)
            } else {
                BigRational::new(num, BigInt::one() << (den_exp as usize))
            }
        };
        let re = rat(&self.approx.re);
        let im = rat(&self.approx.im);
        let n2 = &re * &re + &im * &im;
        let r = rat(&self.radius);
        let one = BigRational::one();
        let outer = &one + &r;
        if n2 > &outer * &outer {
            return ModulusClass::Outside;
        }
        if r < one {
            let inner = &one - &r;
            if n2 < &inner * &inner {
                return ModulusClass::Inside;
            }
        }
        ModulusClass::OnCircle
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulusClass {
    /// Certified |z| > 1.
    Outside,
    /// Certified |z| < 1.
    Inside,
    /// The enclosure touches the unit circle.
    OnCircle,
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let bits = self.precision_bits();
        let digits = ((bits as f64) * 0.30103).ceil() as usize;
        let mut s = serializer.serialize_struct("AlgebraicNumber", 5)?;
        s.serialize_field("minpoly", &self.minpoly)?;
        s.serialize_field("re", &self.approx.re.to_decimal(digits))?;
        s.serialize_field("im", &self.approx.im.to_decimal(digits))?;
        s.serialize_field("radius", &self.radius.to_decimal(digits))?;
        s.serialize_field("precision_bits", &bits)?;
        s.end()
    }
}

/// All positive divisors by trial division, only for moderately small |n|.
fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let m = n.abs().to_u64()?;
    if m == 0 || m > 1_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            if d * d != m {
                out.push(m / d);
            }
        }
        d += 1;
    }
    Some(out)
}

/// Find and deflate rational roots of a squarefree primitive polynomial.
/// Candidate fractions come from divisors of the constant and leading
/// coefficients when those are small enough to enumerate; otherwise only
/// 0 and +-1 are tried, and any exotic rational root simply stays on the
/// numeric path (still correct, just without a zero radius).
fn extract_rational_roots(p: &mut IntPoly) -> Vec<BigRational> {
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return out;
    }
    if p.coeff(0).is_zero() {
        *p = p.div_exact(&IntPoly::var()).expect("x divides when constant term is zero");
        out.push(BigRational::zero());
    }
    let mut candidates: BTreeSet<BigRational> = BTreeSet::new();
    let enumerated = match (small_divisors(&p.coeff(0)), small_divisors(p.leading())) {
        (Some(rs), Some(ss)) if rs.len() * ss.len() <= 2000 => {
            for &r in &rs {
                for &s in &ss {
                    let q = BigRational::new(BigInt::from(r), BigInt::from(s));
                    candidates.insert(q.clone());
                    candidates.insert(-q);
                }
            }
            true
        }
        _ => false,
    };
    if !enumerated {
        candidates.insert(BigRational::from_integer(BigInt::from(1)));
        candidates.insert(BigRational::from_integer(BigInt::from(-1)));
    }
    for cand in candidates {
        if p.degree() == Some(0) {
            break;
        }
        if p.eval_rational(&cand).is_zero() {
            let factor = IntPoly::new(vec![-cand.numer().clone(), cand.denom().clone()]);
            *p = p
                .div_exact(&factor)
                .expect("primitive linear factor of a primitive polynomial divides exactly");
            out.push(cand);
        }
    }
    out
}

/// Canonical root order: descending modulus, ties broken by ascending
/// argument in [0, 2*pi).  Moduli are compared through a quantized key so
/// the comparator is a total order; genuinely distinct moduli in the inputs
/// handled here differ by far more than the quantum.
fn sort_canonical(v: &mut [AlgebraicNumber]) {
    v.sort_by(|x, y| {
        let key = |a: &AlgebraicNumber| {
            let m = a.approx.abs().to_f64();
            (-(m * 1e9).round() as i64, a.approx.arg_f64())
        };
        let (kx, ky) = (key(x), key(y));
        kx.0.cmp(&ky.0).then(kx.1.partial_cmp(&ky.1).unwrap_or(Ordering::Equal))
    });
}

/// Isolate all roots of a nonzero squarefree integer polynomial with
/// certified pairwise-disjoint enclosures.  The numeric work runs at
/// `bits + 64` internal precision; certification is exact, and failure to
/// certify surfaces as PrecisionExhausted so the caller can retry with more
/// bits.
///
/// Results are memoized per (polynomial, bits): the callers that dominate
/// runtime re-isolate the same locus factors over and over.
pub fn isolate_roots(p: &IntPoly, bits: u32) -> Result<Vec<AlgebraicNumber>> {
    assert!(!p.is_zero(), "isolate_roots requires a nonzero polynomial");
    let p0 = p.primitive_positive();
    assert!(p0.is_squarefree(), "isolate_roots requires squarefree input");
    let key = (p0.coeffs().to_vec(), bits);
    let cache = root_cache().lock().expect("root cache poisoned");
    if let Some(hit) = cache.get(&key) {
        return Ok(hit.clone());
    }
    drop(cache);
    let out = isolate_roots_uncached(&p0, bits)?;
    root_cache()
        .lock()
        .expect("root cache poisoned")
        .insert(key, out.clone());
    Ok(out)
}

type RootCache = Mutex<HashMap<(Vec<BigInt>, u32), Vec<AlgebraicNumber>>>;

fn root_cache() -> &'static RootCache {
    static CACHE: OnceLock<RootCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn isolate_roots_uncached(p0: &IntPoly, bits: u32) -> Result<Vec<AlgebraicNumber>> {
    let deg = p0.degree().unwrap();
    if deg == 0 {
        return Ok(Vec::new());
    }
    let wp = bits + 64;
    let mut work = p0.clone();
    let exact = extract_rational_roots(&mut work);
    let numeric: Vec<MpComplex> = match work.degree() {
        Some(d) if d >= 1 => {
            let coeffs = work.to_complex_coeffs(wp);
            let budget = 600 + 4 * d as u32 + bits;
            dk_roots(&coeffs, -(bits as i64 + 32), budget).ok_or_else(|| {
                Error::PrecisionExhausted(format!(
                    "root iteration did not converge at {} bits for degree {}",
                    bits, deg
                ))
            })?
        }
        _ => Vec::new(),
    };
    let radii2 = certify::certify_disks(p0, &numeric, &exact).ok_or_else(|| {
        Error::PrecisionExhausted(format!(
            "enclosure certification failed at {} bits for degree {}",
            bits, deg
        ))
    })?;

    let mut out = Vec::with_capacity(deg);
    for q in &exact {
        out.push(AlgebraicNumber {
            minpoly: p0.clone(),
            approx: MpComplex::from_real(MpReal::from_ratio(q.numer(), q.denom(), wp)),
            radius: MpReal::zero(wp),
        });
    }
    let pad = MpReal::from_i64(1, wp).add(&MpReal::pow2(-(wp as i64) + 16, wp));
    for (z, r2) in numeric.into_iter().zip(radii2) {
        let r2m = MpReal::from_ratio(r2.numer(), r2.denom(), wp);
        let radius = r2m.sqrt_upper().mul(&pad);
        out.push(AlgebraicNumber { minpoly: p0.clone(), approx: z, radius });
    }
    sort_canonical(&mut out);
    Ok(out)
}

/// All roots of the Salem factor of chi_n, canonically ordered: index 0 is
/// the Salem root lambda_n (largest modulus), followed by the unit-circle
/// roots, with the reciprocal root 1/lambda_n last.
pub fn salem_roots(n: u32, bits: u32) -> Result<Vec<AlgebraicNumber>> {
    isolate_roots(&salem_poly(n)?, bits)
}

/// The Salem root lambda_n: the unique root of the Salem factor with
/// modulus > 1, certified real and snapped onto the real axis.
pub fn salem_root(n: u32, bits: u32) -> Result<AlgebraicNumber> {
    let roots = salem_roots(n, bits)?;
    let outside: Vec<&AlgebraicNumber> = roots
        .iter()
        .filter(|r| r.modulus_class() == ModulusClass::Outside)
        .collect();
    if outside.len() != 1 {
        return Err(Error::InternalInconsistency(format!(
            "expected exactly one root of modulus > 1 in the Salem factor at n = {}, found {}",
            n,
            outside.len()
        )));
    }
    let mut lam = outside[0].clone();
    if !lam.is_real() {
        return Err(Error::InternalInconsistency(format!(
            "the modulus > 1 root at n = {} is not certified real",
            n
        )));
    }
    // Snap onto the real axis, widening the radius by the discarded
    // imaginary part (plus one safety ulp).
    let wp = lam.precision_bits();
    lam.radius = lam
        .radius
        .add(&lam.approx.im.abs())
        .add(&MpReal::pow2(-(wp as i64) + 8, wp));
    lam.approx = MpComplex::from_real(lam.approx.re.clone());
    Ok(lam)
}

/// The limit value delta_star: the real root of t^3 - t - 1.
pub fn delta_star(bits: u32) -> AlgebraicNumber {
    let p = IntPoly::from_i64(&[-1, -1, 0, 1]);
    let roots = isolate_roots(&p, bits).expect("cubic isolation cannot fail at sane precision");
    roots
        .into_iter()
        .find(|r| r.is_real())
        .expect("t^3 - t - 1 has a real root")
}

fn euler_phi(mut m: u32) -> u32 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Finite-sample witness for the small-divisor condition at a unit-modulus
/// algebraic number: min over 2 <= k <= k_max of |1 - t^k| * k^nu.  Purely
/// diagnostic — no claim is made beyond the sampled range.  Roots of unity
/// of order <= k_max are rejected: exactly when a cyclotomic polynomial of
/// admissible degree divides the isolating polynomial and the enclosure
/// sits on that root, and also whenever the sampled minimum falls below the
/// enclosure noise floor.
pub fn small_divisor_diagnostic(t: &AlgebraicNumber, k_max: u32, nu: f64) -> Result<MpReal> {
    if k_max < 2 {
        return Err(Error::Domain("small-divisor scan needs k_max >= 2".into()));
    }
    let prec = t.precision_bits();
    let noise = MpReal::pow2(-(prec as i64) / 2, prec);
    let one = MpComplex::one(prec);

    let deg = t.minpoly.degree().unwrap_or(0) as u32;
    for m in 1..=k_max {
        if euler_phi(m) > deg {
            continue;
        }
        if cyclotomic(m).divides(&t.minpoly) {
            let gap = one.sub(&t.approx.powi(m as i64)).abs();
            if gap.cmp(&noise) == Ordering::Less {
                return Err(Error::Domain(format!(
                    "input is a root of unity of order {}",
                    m
                )));
            }
        }
    }

    let mut tp = t.approx.clone();
    let mut best: Option<MpReal> = None;
    for k in 2..=k_max {
        tp = tp.mul(&t.approx);
        let gap = one.sub(&tp).abs();
        if gap.cmp(&noise) == Ordering::Less {
            return Err(Error::Domain(format!(
                "numerically a root of unity of order {} (gap below noise floor)",
                k
            )));
        }
        let weighted = gap.mul(&MpReal::from_f64((k as f64).powf(nu), prec));
        best = match best {
            Some(b) if b.cmp(&weighted) != Ordering::Greater => Some(b),
            _ => Some(weighted),
        };
    }
    Ok(best.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots_exact() {
        // x^2 - 1: both roots rational, radius 0
        let roots = isolate_roots(&IntPoly::from_i64(&[-1, 0, 1]), 128).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(r.radius.is_zero());
            assert!(r.is_real());
        }
        // canonical order: +1 (argument 0) before -1 (argument pi)
        assert_eq!(roots[0].approx.re.to_f64(), 1.0);
        assert_eq!(roots[1].approx.re.to_f64(), -1.0);
    }

    #[test]
    fn plastic_like_cubic() {
        let d = delta_star(256);
        assert!((d.approx.re.to_f64() - 1.3247179572).abs() < 1e-9);
        let roots = isolate_roots(&IntPoly::from_i64(&[-1, -1, 0, 1]), 256).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.iter().filter(|r| r.is_real()).count(), 1);
    }

    #[test]
    fn salem_seven() {
        let lam = salem_root(7, 256).unwrap();
        assert!(lam.is_real());
        assert!((lam.approx.re.to_f64() - 1.1762808183).abs() < 1e-9);
        // full configuration: 1 outside, 1 inside, 8 on the circle
        let roots = salem_roots(7, 256).unwrap();
        assert_eq!(roots.len(), 10);
        let classes: Vec<ModulusClass> = roots.iter().map(|r| r.modulus_class()).collect();
        assert_eq!(classes.iter().filter(|c| **c == ModulusClass::Outside).count(), 1);
        assert_eq!(classes.iter().filter(|c| **c == ModulusClass::Inside).count(), 1);
        assert_eq!(classes.iter().filter(|c| **c == ModulusClass::OnCircle).count(), 8);
        // index 0 is the Salem root itself
        assert!(roots[0].equals(&lam) || roots[0].approx.re.to_f64() == lam.approx.re.to_f64());
    }

    #[test]
    fn refinement_shrinks_enclosures() {
        let p = salem_poly(8).unwrap();
        let coarse = isolate_roots(&p, 128).unwrap();
        let fine = isolate_roots(&p, 256).unwrap();
        for (c, f) in coarse.iter().zip(fine.iter()) {
            assert!(f.radius.cmp(&c.radius) != Ordering::Greater);
            // containment: |c_new - c_old| + r_new <= r_old
            let shift = c.approx.dist(&f.approx).add(&f.radius);
            assert!(shift.cmp(&c.radius) != Ordering::Greater);
        }
    }

    #[test]
    fn small_divisor_scan() {
        let roots = salem_roots(7, 256).unwrap();
        let circ = roots
            .iter()
            .find(|r| r.modulus_class() == ModulusClass::OnCircle)
            .unwrap();
        let v = small_divisor_diagnostic(circ, 1000, 2.0).unwrap();
        assert!(!v.is_negative() && !v.is_zero());

        // i is a fourth root of unity
        let i_root = isolate_roots(&IntPoly::from_i64(&[1, 0, 1]), 128)
            .unwrap()
            .into_iter()
            .find(|r| r.approx.im.to_f64() > 0.0)
            .unwrap();
        assert!(matches!(
            small_divisor_diagnostic(&i_root, 4, 2.0),
            Err(Error::Domain(_))
        ));

        // t = 1 fails at k = 2
        let one_root = isolate_roots(&IntPoly::from_i64(&[-1, 1]), 128).unwrap();
        assert!(matches!(
            small_divisor_diagnostic(&one_root[0], 10, 1.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn equality_semantics() {
        let a = salem_roots(7, 128).unwrap();
        let b = salem_roots(7, 256).unwrap();
        assert!(a[0].equals(&b[0]));
        assert!(!a[0].equals(&a[1]));
    }
}
