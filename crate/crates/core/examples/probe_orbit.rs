//! Temporary timing probe for the symbolic orbit (not shipped).

use lfr_core::enumerate::{symbolic_orbit_with, SymbolicBudget};
use std::time::Instant;

fn main() {
    for n in 1..=11u32 {
        let t0 = Instant::now();
        let orbit = symbolic_orbit_with(n, &SymbolicBudget::best_effort());
        let dt = t0.elapsed().as_secs_f64();
        match orbit {
            Ok(o) => println!("n={n:2}  {dt:8.2}s  deg_log={:?}", o.degree_log),
            Err(e) => println!("n={n:2}  {dt:8.2}s  err={e}"),
        }
    }
}
