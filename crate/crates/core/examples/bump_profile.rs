//! Samples the bump sums of the first few levels around a point of `F`.
//!
//! Run with `cargo run --release --example bump_profile`.

use std::sync::Arc;

use disk_interp::boundary::BoundarySet;
use disk_interp::bump::BumpSeries;
use disk_interp::cover::build_tower;
use disk_interp::geometry::Angle;

fn main() -> disk_interp::error::Result<()> {
    let set = BoundarySet::finite(&[1.0])?;
    let series = BumpSeries::from_tower(Arc::new(build_tower(&set, 4)?))?;
    for level in series.levels() {
        let b = level.bump(0);
        println!(
            "level {}: {} bump(s), rise {:.4e}, plateau {:.4e}, integral {:.6e}",
            level.n(),
            level.len(),
            b.rise_width(),
            b.plateau_width(),
            level.integral()
        );
        let (lo, width) = (b.start().radians(), b.support_width());
        for j in 0..=8 {
            let theta = Angle::new(lo + width * j as f64 / 8.0)?;
            println!(
                "    theta = {:.6}  phi = {:.6}  phi' = {:+.4e}",
                theta.radians(),
                level.value(theta),
                level.slope(theta)
            );
        }
    }
    Ok(())
}
