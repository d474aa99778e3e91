//! Evaluates `u` and `v` with the kernel and series backends side by side.
//!
//! Run with `cargo run --release --example harmonic_backends`.

use std::f64::consts::TAU;
use std::sync::Arc;

use disk_interp::boundary::BoundarySet;
use disk_interp::bump::BumpSeries;
use disk_interp::cover::build_tower;
use disk_interp::harmonic::{Backend, DiskPoint, EvaluatorOptions, HarmonicEvaluator};

fn main() -> disk_interp::error::Result<()> {
    let set = BoundarySet::cantor(0.0, TAU / 4.0, vec![1.0 / 3.0], 40)?;
    let series = BumpSeries::from_tower(Arc::new(build_tower(&set, 6)?))?;
    let kernel = HarmonicEvaluator::new(series.clone(), Backend::Kernel, EvaluatorOptions::default())?;
    let fourier = HarmonicEvaluator::new(series, Backend::Series, EvaluatorOptions::default())?;
    println!("series length K = {:?}", fourier.max_freq());
    for &(r, theta) in &[(0.0, 0.0), (0.5, 0.3), (0.9, 1.0), (0.99, 0.8), (0.999, 3.0)] {
        let z = DiskPoint::polar(r, theta)?;
        let (a, b) = (kernel.eval_h(z)?, fourier.eval_h(z)?);
        println!(
            "r = {r:<6} theta = {theta:<4} u = {:.12}  v = {:+.12}  |kernel - series| = {:.1e}  tail <= {:.1e}",
            a.re,
            a.im,
            (a - b).norm(),
            fourier.series_tail_bound(r).unwrap_or(0.0)
        );
    }
    Ok(())
}
