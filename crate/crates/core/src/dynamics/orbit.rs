//! Orbit iteration of the seed point and the parameter-locus membership test.
//!
//! The locus V_n is the set of parameters whose orbit of q lands on p after
//! exactly n steps.  Numerically that decision has three tolerance regimes,
//! all derived from the working precision `bits`:
//!
//!  * arrival at p is declared below chordal distance 2^(-bits/2);
//!  * proximity to any indeterminacy point below 2^(-bits/4) makes further
//!    iteration meaningless (the image would be pure noise);
//!  * a point inside the second band but outside the first is *ambiguous* --
//!    too close to p to step through, not close enough to certify arrival --
//!    and the membership test retries the whole orbit at doubled precision.

use crate::dynamics::map::{apply, indeterminacy_exp, MapData};
use crate::dynamics::ProjPoint;
use crate::error::{Error, Result};
use crate::mp::{MpComplex, MpReal};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::cmp::Ordering;
use std::io::Write;

/// Why an orbit stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    ReachedP,
    HitIndeterminacy,
    MaxSteps,
    PrecisionAmbiguous,
}

#[derive(Clone, Debug)]
pub struct OrbitStep {
    pub k: u32,
    pub point: ProjPoint,
    /// Chordal distance to p.
    pub dist_p: MpReal,
    /// Chordal distance to the nearest indeterminacy point.
    pub dist_ind: MpReal,
}

#[derive(Clone, Debug)]
pub struct OrbitTrace {
    pub steps: Vec<OrbitStep>,
    pub termination: Termination,
    pub bits: u32,
}

impl Serialize for OrbitStep {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let digits = (self.point.prec() as f64 * 0.30103) as usize;
        let mut st = serializer.serialize_struct("OrbitStep", 4)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("point", &self.point)?;
        st.serialize_field("dist_p", &self.dist_p.to_decimal(digits))?;
        st.serialize_field("dist_ind", &self.dist_ind.to_decimal(digits))?;
        st.end()
    }
}

impl Serialize for OrbitTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("OrbitTrace", 3)?;
        st.serialize_field("steps", &self.steps)?;
        st.serialize_field("termination", &self.termination)?;
        st.serialize_field("precision_bits", &self.bits)?;
        st.end()
    }
}

/// Iterate the map from `start` for at most `kmax` steps, recording every
/// point with its distances to p and to the indeterminacy set.  Never errors:
/// the termination reason encodes what happened, and the trace always
/// contains at least the start point.
pub fn orbit(map: &MapData, start: &ProjPoint, kmax: u32, bits: u32) -> OrbitTrace {
    let tol_p = MpReal::pow2(-((bits / 2) as i64), bits);
    let eps_ind = MpReal::pow2(indeterminacy_exp(bits), bits);
    let mut steps = Vec::new();
    let mut pt = start.clone();
    let mut k = 0u32;
    let termination = loop {
        let dist_p = pt.dist_chordal(map.p());
        let d1 = pt.dist_chordal(map.e1());
        let d2 = pt.dist_chordal(map.e2());
        let near_e = d1.cmp(&eps_ind) == Ordering::Less || d2.cmp(&eps_ind) == Ordering::Less;
        let dist_ind = if d1.cmp(&d2) == Ordering::Less { d1 } else { d2 };
        let dist_ind = if dist_p.cmp(&dist_ind) == Ordering::Less {
            dist_p.clone()
        } else {
            dist_ind
        };
        steps.push(OrbitStep { k, point: pt.clone(), dist_p: dist_p.clone(), dist_ind });

        let reached = dist_p.cmp(&tol_p) == Ordering::Less;
        let near_p = dist_p.cmp(&eps_ind) == Ordering::Less;
        if reached && near_e {
            break Termination::PrecisionAmbiguous;
        }
        if reached {
            break Termination::ReachedP;
        }
        if near_e {
            break Termination::HitIndeterminacy;
        }
        if near_p {
            // inside the guard band around p but above the arrival tolerance
            break Termination::PrecisionAmbiguous;
        }
        if k >= kmax {
            break Termination::MaxSteps;
        }
        match apply(map, &pt) {
            Ok(next) => pt = next,
            // unreachable given the proximity checks above; classify
            // defensively rather than panic
            Err(_) => break Termination::HitIndeterminacy,
        }
        k += 1;
    };
    OrbitTrace { steps, termination, bits }
}

/// The escalation cap for membership testing.
const BITS_CAP: u32 = 4096;

/// Smallest n <= nmax with f^n(q) = p, deciding arrivals at working precision
/// `bits` and doubling the precision (up to 4096) whenever the orbit
/// terminates ambiguously.  `None` means the orbit provably avoided p for
/// nmax steps (or died on another indeterminacy point).
pub fn vn_membership(
    a: &MpComplex,
    b: &MpComplex,
    nmax: u32,
    bits: u32,
) -> Result<Option<u32>> {
    let mut cur = bits.max(64);
    loop {
        let map = MapData::new(a.with_prec(cur), b.with_prec(cur));
        let trace = orbit(&map, map.q(), nmax, cur);
        match trace.termination {
            Termination::ReachedP => {
                return Ok(Some(trace.steps.last().expect("trace nonempty").k))
            }
            Termination::MaxSteps | Termination::HitIndeterminacy => return Ok(None),
            Termination::PrecisionAmbiguous => {
                if cur >= BITS_CAP {
                    return Err(Error::PrecisionExhausted(format!(
                        "orbit of q remains ambiguous near p at {cur} bits"
                    )));
                }
                cur = (cur * 2).min(BITS_CAP);
            }
        }
    }
}

/// Write the trace as CSV rows `k,x,y,dist_p,dist_ind,at_infinity` in the
/// affine chart; a point too close to the line at infinity gets empty affine
/// fields and the flag set.  Returns the number of data rows.
pub fn emit_orbit_csv<W: Write>(trace: &OrbitTrace, mut dest: W) -> Result<usize> {
    if trace.steps.is_empty() {
        return Err(Error::Domain("orbit trace has no points".into()));
    }
    let digits = (trace.bits as f64 * 0.30103) as usize;
    writeln!(dest, "k,x,y,dist_p,dist_ind,at_infinity")?;
    for step in &trace.steps {
        let affine = step.point.to_affine(-((trace.bits / 2) as i64));
        let (x, y, flag) = match affine {
            Some((x, y)) => (format!("{x}"), format!("{y}"), 0),
            None => (String::new(), String::new(), 1),
        };
        writeln!(
            dest,
            "{},{},{},{},{},{}",
            step.k,
            x,
            y,
            step.dist_p.to_decimal(digits),
            step.dist_ind.to_decimal(digits),
            flag
        )?;
    }
    Ok(trace.steps.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{param_point, phi};
    use crate::numroots::salem_root;

    fn c(re: f64, im: f64) -> MpComplex {
        MpComplex::from_f64_pair(re, im, 256)
    }

    #[test]
    fn zero_parameters_reach_immediately() {
        // at (0,0) the seed and the target coincide at [1:0:0]
        let map = MapData::new(c(0.0, 0.0), c(0.0, 0.0));
        let trace = orbit(&map, map.q(), 10, 256);
        assert_eq!(trace.termination, Termination::ReachedP);
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(vn_membership(&c(0.0, 0.0), &c(0.0, 0.0), 5, 256).unwrap(), Some(0));
    }

    #[test]
    fn unit_locus_point() {
        assert_eq!(vn_membership(&c(1.0, 0.0), &c(0.0, 0.0), 5, 256).unwrap(), Some(1));
    }

    #[test]
    fn orbit_of_degree_seven_locus_point() {
        let t = salem_root(7, 256).unwrap();
        let pp = param_point(1, &t, Some(7)).unwrap();
        let map = MapData::new(pp.a.clone(), pp.b.clone());
        let trace = orbit(&map, map.q(), 20, 256);
        assert_eq!(trace.termination, Termination::ReachedP);
        assert_eq!(trace.steps.last().unwrap().k, 7);
        assert_eq!(vn_membership(&pp.a, &pp.b, 20, 256).unwrap(), Some(7));
    }

    #[test]
    fn generic_parameters_run_out_of_steps() {
        let trace_len = {
            let map = MapData::new(c(0.37, 0.11), c(-0.83, 0.29));
            let trace = orbit(&map, map.q(), 100, 256);
            assert_eq!(trace.termination, Termination::MaxSteps);
            trace.steps.len()
        };
        assert_eq!(trace_len, 101);
        assert_eq!(
            vn_membership(&c(0.37, 0.11), &c(-0.83, 0.29), 100, 256).unwrap(),
            None
        );
    }

    #[test]
    fn csv_rows_and_infinity_flag() {
        let t = salem_root(7, 256).unwrap();
        let (a, b) = phi(1, &t.approx).unwrap();
        let map = MapData::new(a, b);
        let trace = orbit(&map, map.q(), 20, 256);
        let mut buf = Vec::new();
        let rows = emit_orbit_csv(&trace, &mut buf).unwrap();
        assert_eq!(rows, 8);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("k,x,y,dist_p,dist_ind,at_infinity"));
        assert_eq!(text.lines().count(), 9);

        // a start on the line at infinity is emitted flagged, with empty
        // affine fields
        let start = ProjPoint::new(
            MpComplex::zero(256),
            MpComplex::one(256),
            MpComplex::from_i64(3, 256),
        )
        .unwrap();
        let trace = orbit(&map, &start, 5, 256);
        let mut buf = Vec::new();
        emit_orbit_csv(&trace, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first = text.lines().nth(1).unwrap();
        assert!(first.starts_with("0,,,"));
        assert!(first.ends_with(",1"));

        let empty = OrbitTrace { steps: Vec::new(), termination: Termination::MaxSteps, bits: 256 };
        assert!(emit_orbit_csv(&empty, Vec::new()).is_err());
    }

    #[test]
    fn trace_serializes_with_decimal_strings() {
        let map = MapData::new(c(0.5, 0.0), c(0.25, 0.0));
        let trace = orbit(&map, map.q(), 3, 256);
        let json = serde_json::to_string(&trace).unwrap();
        assert!(json.contains("\"termination\":\"max_steps\""));
        assert!(json.contains("\"precision_bits\":256"));
        assert!(json.contains("\"dist_p\""));
    }
}
