//! Generations, gaps and distances for a middle-thirds set on a quarter circle.
//!
//! Run with `cargo run --release --example cantor_set`.

use std::f64::consts::FRAC_PI_2;

use disk_interp::boundary::CantorSet;
use disk_interp::geometry::Angle;

fn main() -> disk_interp::error::Result<()> {
    let c = CantorSet::new(0.0, FRAC_PI_2, vec![1.0 / 3.0], 40)?;
    for g in 1..6 {
        println!(
            "generation {g}: {} intervals of length {:.4e}, gap {:.4e}, remaining {:.4e}",
            1usize << g,
            c.interval_length(g),
            c.gap(g),
            c.remaining_length(g)
        );
    }
    for n in [1, 4, 8, 12] {
        let budget = 2f64.powi(-n);
        println!("budget 2^-{n}: generation {}", c.generation_for_budget(budget));
    }
    for theta in [0.1, 0.6, 1.0, 2.0] {
        println!("distance from {theta} = {:.6e}", c.distance(Angle::new(theta)?));
    }
    Ok(())
}
