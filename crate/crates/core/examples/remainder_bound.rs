//! Splits `u` into the levels that meet a ball about `θ_0` and the rest, and
//! compares the rest with its Poisson bound as `r → 1`.
//!
//! Run with `cargo run --release --example remainder_bound`.

use std::f64::consts::PI;
use std::sync::Arc;

use disk_interp::boundary::BoundarySet;
use disk_interp::bump::BumpSeries;
use disk_interp::cover::build_tower;
use disk_interp::geometry::Angle;
use disk_interp::harmonic::{Backend, EvaluatorOptions, HarmonicEvaluator};

fn main() -> disk_interp::error::Result<()> {
    let set = BoundarySet::finite(&[0.0])?;
    let series = BumpSeries::from_tower(Arc::new(build_tower(&set, 12)?))?;
    let eval = HarmonicEvaluator::new(series, Backend::Kernel, EvaluatorOptions::default())?;
    let (theta0, delta) = (Angle::new(PI)?, 1.0);
    let split = eval.minimal_split_level(theta0, delta);
    println!("levels after {split} miss the ball of radius {delta} about pi");
    for &r in &[0.5, 0.9, 0.99, 0.999] {
        for &offset in &[-0.25, 0.0, 0.25] {
            let c = eval.check_remainder_bound(split, theta0, delta, r, Angle::new(PI + offset)?)?;
            println!(
                "r = {r:<6} offset = {offset:+.2}  |tail| = {:.6e}  bound = {:.6e}  holds = {}",
                c.lhs, c.rhs, c.holds
            );
        }
    }
    Ok(())
}
