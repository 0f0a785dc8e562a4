//! The quadratic plane map in homogeneous coordinates.
//!
//! On the affine chart [1:x:y] the map is (x, y) -> (y, (y+a)/(x+b)); written
//! with the covectors beta.x = b*x0 + x1 and gamma.x = a*x0 + x2 it becomes
//!
//! ```text
//! F[x0 : x1 : x2] = [x0 (beta.x) : x2 (beta.x) : x0 (gamma.x)].
//! ```
//!
//! F contracts three lines: {x0 = 0} to e1, {beta.x = 0} to e2, and
//! {gamma.x = 0} to q = [1 : -a : 0].  Its indeterminacy points are the
//! pairwise intersections e2, e1, and p = [1 : -b : -a].  The inverse, from
//! the affine form (x, y) -> ((x+a)/y - b, x), is
//!
//! ```text
//! G[x0 : x1 : x2] = [x0 x2 : x0 (x1 + a x0 - b x2) : x1 x2]
//! ```
//!
//! with indeterminacy points e1, e2, and q.

use crate::dynamics::ProjPoint;
use crate::error::{Error, Result};
use crate::mp::MpComplex;

/// Immutable data of one parameter instance: a, b and the special points.
#[derive(Clone, Debug)]
pub struct MapData {
    a: MpComplex,
    b: MpComplex,
    q: ProjPoint,
    p: ProjPoint,
    e1: ProjPoint,
    e2: ProjPoint,
}

impl MapData {
    pub fn new(a: MpComplex, b: MpComplex) -> Self {
        let prec = a.prec().max(b.prec());
        let one = MpComplex::one(prec);
        let q = ProjPoint::new(one.clone(), a.neg(), MpComplex::zero(prec))
            .expect("q has a unit coordinate");
        let p = ProjPoint::new(one, b.neg(), a.neg()).expect("p has a unit coordinate");
        MapData { q, p, e1: ProjPoint::e1(prec), e2: ProjPoint::e2(prec), a, b }
    }

    pub fn a(&self) -> &MpComplex {
        &self.a
    }

    pub fn b(&self) -> &MpComplex {
        &self.b
    }

    /// The contraction image of {gamma.x = 0}, the orbit seed of the
    /// parameter-locus definition.
    pub fn q(&self) -> &ProjPoint {
        &self.q
    }

    /// The indeterminacy point every locus orbit must land on.
    pub fn p(&self) -> &ProjPoint {
        &self.p
    }

    pub fn e1(&self) -> &ProjPoint {
        &self.e1
    }

    pub fn e2(&self) -> &ProjPoint {
        &self.e2
    }

    pub fn prec(&self) -> u32 {
        self.a.prec().max(self.b.prec())
    }

    /// Indeterminacy points of the forward map.
    pub fn indeterminacy(&self) -> [&ProjPoint; 3] {
        [&self.e1, &self.e2, &self.p]
    }

    /// Indeterminacy points of the inverse map.
    pub fn inverse_indeterminacy(&self) -> [&ProjPoint; 3] {
        [&self.e1, &self.e2, &self.q]
    }
}

/// Guard exponent for indeterminacy proximity: points within chordal distance
/// 2^(-bits/4) of an indeterminacy point are rejected as inputs.
pub(crate) fn indeterminacy_exp(bits: u32) -> i64 {
    -((bits / 4) as i64)
}

fn guard(pt: &ProjPoint, special: [&ProjPoint; 3], eps_exp: i64, what: &str) -> Result<()> {
    for s in special {
        if pt.close_to(s, eps_exp) {
            return Err(Error::IndeterminateInput(format!(
                "point within 2^{eps_exp} of an indeterminacy point of {what}"
            )));
        }
    }
    Ok(())
}

/// One forward step in homogeneous coordinates.
pub fn apply(map: &MapData, pt: &ProjPoint) -> Result<ProjPoint> {
    let eps = indeterminacy_exp(map.prec().max(pt.prec()));
    guard(pt, map.indeterminacy(), eps, "the map")?;
    let [x0, x1, x2] = pt.coords();
    let bx = map.b.mul(x0).add(x1);
    let gx = map.a.mul(x0).add(x2);
    ProjPoint::new(x0.mul(&bx), x2.mul(&bx), x0.mul(&gx))
}

/// One inverse step in homogeneous coordinates.
pub fn apply_inverse(map: &MapData, pt: &ProjPoint) -> Result<ProjPoint> {
    let eps = indeterminacy_exp(map.prec().max(pt.prec()));
    guard(pt, map.inverse_indeterminacy(), eps, "the inverse map")?;
    let [x0, x1, x2] = pt.coords();
    let mid = x1.add(&map.a.mul(x0)).sub(&map.b.mul(x2));
    ProjPoint::new(x0.mul(x2), x0.mul(&mid), x1.mul(x2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::MpReal;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::cmp::Ordering;

    fn c(re: f64, im: f64) -> MpComplex {
        MpComplex::from_f64_pair(re, im, 256)
    }

    fn random_c(rng: &mut ChaCha8Rng) -> MpComplex {
        c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
    }

    #[test]
    fn q_maps_to_p_at_one_zero() {
        let map = MapData::new(c(1.0, 0.0), c(0.0, 0.0));
        let img = apply(&map, map.q()).unwrap();
        assert!(img.close_to(map.p(), -120));
        // and the inverse takes p back to q
        let back = apply_inverse(&map, map.p()).unwrap();
        assert!(back.close_to(map.q(), -120));
    }

    #[test]
    fn chart_consistency_with_affine_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let map = MapData::new(c(0.7, -0.2), c(-1.1, 0.4));
        for _ in 0..50 {
            let x = random_c(&mut rng);
            let y = random_c(&mut rng);
            let pt = ProjPoint::from_affine(&x, &y);
            let img = match apply(&map, &pt) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let nx = y.clone();
            let ny = y.add(map.a()).div(&x.add(map.b()));
            assert!(img.close_to(&ProjPoint::from_affine(&nx, &ny), -128));
        }
    }

    #[test]
    fn exceptional_lines_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let map = MapData::new(c(0.3, 0.1), c(1.2, -0.5));
        for _ in 0..100 {
            let s = random_c(&mut rng);
            // gamma.x = 0: [1 : s : -a] for any s
            let on_gamma =
                ProjPoint::new(MpComplex::one(256), s.clone(), map.a().neg()).unwrap();
            if let Ok(img) = apply(&map, &on_gamma) {
                assert!(img.close_to(map.q(), -120), "gamma-line image should be q");
            }
            // beta.x = 0: [1 : -b : s]
            let on_beta =
                ProjPoint::new(MpComplex::one(256), map.b().neg(), s.clone()).unwrap();
            if let Ok(img) = apply(&map, &on_beta) {
                assert!(img.close_to(map.e2(), -120), "beta-line image should be e2");
            }
        }
    }

    #[test]
    fn forward_inverse_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let map = MapData::new(c(-0.6, 0.9), c(0.4, 0.2));
        let mut checked = 0;
        while checked < 100 {
            let pt = ProjPoint::from_affine(&random_c(&mut rng), &random_c(&mut rng));
            let Ok(img) = apply(&map, &pt) else { continue };
            let Ok(back) = apply_inverse(&map, &img) else { continue };
            assert!(
                back.dist_chordal(&pt).cmp(&MpReal::pow2(-128, 256)) == Ordering::Less,
                "round trip drifted: {}",
                back.dist_chordal(&pt).to_f64()
            );
            checked += 1;
        }
    }

    #[test]
    fn rejects_points_near_indeterminacy() {
        let map = MapData::new(c(2.0, 0.0), c(1.0, 0.0));
        assert!(matches!(
            apply(&map, map.p()),
            Err(Error::IndeterminateInput(_))
        ));
        assert!(matches!(
            apply(&map, &ProjPoint::e1(256)),
            Err(Error::IndeterminateInput(_))
        ));
        assert!(matches!(
            apply_inverse(&map, map.q()),
            Err(Error::IndeterminateInput(_))
        ));
    }
}
