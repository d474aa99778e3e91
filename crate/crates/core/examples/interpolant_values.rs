//! Follows `ω` and `λ` along a radius ending on `F` and one ending off `F`,
//! then prints the zero-set diagnostics.
//!
//! Run with `cargo run --release --example interpolant_values`.

use std::sync::Arc;

use disk_interp::boundary::BoundarySet;
use disk_interp::bump::BumpSeries;
use disk_interp::cover::build_tower;
use disk_interp::geometry::Angle;
use disk_interp::harmonic::{Backend, DiskPoint, EvaluatorOptions, GridSpec, HarmonicEvaluator};
use disk_interp::interpolant::{Interpolant, Kind};

fn main() -> disk_interp::error::Result<()> {
    let set = BoundarySet::finite(&[0.0, 3.0])?;
    let series = BumpSeries::from_tower(Arc::new(build_tower(&set, 10)?))?;
    let eval = HarmonicEvaluator::new(series, Backend::Series, EvaluatorOptions::default())?;
    let omega = Interpolant::new(&eval, Kind::Omega);
    let lambda = Interpolant::new(&eval, Kind::Lambda);
    for theta in [3.0, 1.5] {
        println!("theta = {theta}");
        for r in [0.0, 0.9, 0.99, 0.999, 1.0] {
            let z = DiskPoint::new(r, Angle::new(theta)?)?;
            let (w, l) = (omega.eval(z)?, lambda.eval(z)?);
            println!(
                "    r = {r:<6} |omega| = {:.6e}  |lambda| = {:.6}  on F: {}",
                w.value.norm(),
                l.value.norm(),
                w.at_f
            );
        }
    }
    let report = omega.zero_set_report(&set, &GridSpec::default(), &[0.01, 0.1, 0.5])?;
    println!("max |omega| on F = {:.4e} (bound {:.4e})", report.max_abs_on_f, report.bound_on_f);
    for band in &report.bands {
        println!(
            "    distance >= {:<5} min |omega| = {:.4e}  lower bound = {:.4e}  ({} points)",
            band.distance, band.min_abs, band.lower_bound, band.points
        );
    }
    println!("min |omega| inside = {:.4e}", report.interior_min_abs);
    Ok(())
}
