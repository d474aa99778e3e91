//! Runs each verification group on a boundary set and prints its timing.
//!
//! Run with `cargo run --release --example suite_groups`.

use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;
use std::time::Instant;

use disk_interp::boundary::BoundarySet;
use disk_interp::bump::BumpSeries;
use disk_interp::cover::build_tower;
use disk_interp::report::CheckRecord;
use disk_interp::suite::{self, SuiteOptions};

fn show(name: &str, t: Instant, records: &[CheckRecord]) {
    println!("{name:<12} {:>9.3?}", t.elapsed());
    for c in records {
        println!("    {} {:<30} {:?}", if c.pass { "ok  " } else { "FAIL" }, c.id, c.measured);
        if !c.pass {
            println!("         {}", c.detail);
        }
    }
}

fn main() -> disk_interp::error::Result<()> {
    let set = BoundarySet::cantor(0.0, FRAC_PI_2, vec![1.0 / 3.0], 40)?;
    let options = SuiteOptions::default();
    let t = Instant::now();
    let tower = build_tower(&set, 8)?;
    show("cover", t, &suite::cover_checks(&tower));
    let series = BumpSeries::from_tower(Arc::new(tower))?;
    let t = Instant::now();
    show("bumps", t, &suite::bump_checks(&series, &options));
    let t = Instant::now();
    let (s, k) = suite::evaluators(&series, &options)?;
    println!("evaluators   {:>9.3?} (K = {:?})", t.elapsed(), s.max_freq());
    let t = Instant::now();
    show("fourier", t, &suite::fourier_checks(&series, &s, &options));
    let t = Instant::now();
    show("harmonic", t, &suite::harmonic_checks(&s, &k, &options));
    let t = Instant::now();
    show("remainder", t, &suite::remainder_checks(&s, &k, &options));
    let t = Instant::now();
    show("blowup", t, &suite::blowup_checks(&k));
    let t = Instant::now();
    show("interpolant", t, &suite::interpolant_checks(&s, &options)?);
    Ok(())
}
