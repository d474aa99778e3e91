//! Closed-form Fourier coefficients of a bump level next to adaptive quadrature.
//!
//! Run with `cargo run --release --example fourier_coefficients`.

use std::sync::Arc;

use disk_interp::boundary::BoundarySet;
use disk_interp::bump::BumpSeries;
use disk_interp::cover::build_tower;
use disk_interp::suite::fourier_by_quadrature;

fn main() -> disk_interp::error::Result<()> {
    let set = BoundarySet::finite(&[0.0, 2.0, 4.0])?;
    let series = BumpSeries::from_tower(Arc::new(build_tower(&set, 6)?))?;
    let level = series.level(3);
    let closed = level.fourier_coefficients(40);
    let quad = fourier_by_quadrature(&level, 40, 1e-13);
    println!("{:>4} {:>24} {:>24} {:>10}", "k", "Re c_k", "Im c_k", "|diff|");
    for k in (0..=40).step_by(5) {
        println!(
            "{k:>4} {:>24.16e} {:>24.16e} {:>10.2e}",
            closed[k].re,
            closed[k].im,
            (closed[k] - quad[k]).norm()
        );
    }
    Ok(())
}
