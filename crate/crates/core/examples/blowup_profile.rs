//! Minimum of `u` over shrinking neighbourhoods of a point of `F`.
//!
//! Run with `cargo run --release --example blowup_profile`.

use std::sync::Arc;

use disk_interp::boundary::BoundarySet;
use disk_interp::bump::BumpSeries;
use disk_interp::cover::build_tower;
use disk_interp::geometry::Angle;
use disk_interp::harmonic::{Backend, EvaluatorOptions, HarmonicEvaluator};

fn main() -> disk_interp::error::Result<()> {
    let set = BoundarySet::finite(&[0.0, 2.0, 4.0])?;
    for depth in [4, 8, 12] {
        let series = BumpSeries::from_tower(Arc::new(build_tower(&set, depth)?))?;
        let eval = HarmonicEvaluator::new(series, Backend::Kernel, EvaluatorOptions::default())?;
        let radii: Vec<f64> = (1..=8).map(|j| 10f64.powi(-j)).collect();
        println!("depth {depth}");
        for p in eval.uniform_blowup_profile(Angle::new(2.0)?, &radii)? {
            println!("    rho = {:.0e}  min u = {:.6}  ({} samples)", p.radius, p.min_u, p.samples);
        }
    }
    Ok(())
}
