//! Loads a run configuration and runs the verification suite on it.
//!
//! Run with `cargo run --release --example run_config -- configs/three_points.json`.

use std::path::PathBuf;

use disk_interp::config::RunConfig;
use disk_interp::suite::{run_suite, SuiteOptions};

fn main() -> disk_interp::error::Result<()> {
    let path = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/one_point.json")));
    let config = RunConfig::load(&path)?;
    let options = SuiteOptions {
        max_freq: config.max_freq,
        tolerances: config.tolerances.clone(),
        ..SuiteOptions::default()
    };
    let report = run_suite(&config.boundary_set, config.depth, &options, None)?;
    for c in &report.checks {
        println!("{:<5} {:<32} {:?}", if c.pass { "ok" } else { "FAIL" }, c.id, c.measured);
    }
    println!("pass = {}", report.pass);
    Ok(())
}
