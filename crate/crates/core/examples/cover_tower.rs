//! Builds cover towers for a few boundary sets and re-verifies them.
//!
//! Run with `cargo run --release --example cover_tower`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::Instant;

use disk_interp::boundary::BoundarySet;
use disk_interp::cover::{build_tower, verify_tower};

fn main() -> disk_interp::error::Result<()> {
    let sets = [
        ("one point", BoundarySet::finite(&[0.0])?),
        ("three points", BoundarySet::finite(&[0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0])?),
        ("two near points", BoundarySet::finite(&[1.0, 1.001])?),
        ("middle thirds", BoundarySet::cantor(0.0, FRAC_PI_2, vec![1.0 / 3.0], 40)?),
    ];
    for (name, set) in &sets {
        let t0 = Instant::now();
        let tower = build_tower(set, 12)?;
        let built = t0.elapsed();
        let report = verify_tower(&tower, set);
        println!(
            "{name:>16}: build {:>8.3?}, verify {:>8.3?}, pass = {}",
            built,
            t0.elapsed() - built,
            report.passed()
        );
        for check in &report.levels {
            println!(
                "    n = {:>2}  arcs = {:>9}  m(G_n) = {:.3e}  < 2^-n: {}",
                check.n, check.arcs, check.total_length, check.measure_bound
            );
        }
    }
    Ok(())
}
