//! Radial behaviour of the conjugate function `v` at boundary points off the zero set.

use std::f64::consts::TAU;
use std::sync::Arc;

use disk_interp::boundary::BoundarySet;
use disk_interp::bump::BumpSeries;
use disk_interp::cover::build_tower;
use disk_interp::geometry::Angle;
use disk_interp::harmonic::{Backend, DiskPoint, EvaluatorOptions, HarmonicEvaluator};

fn evaluators(set: &BoundarySet, depth: usize) -> (HarmonicEvaluator, HarmonicEvaluator) {
    let series = BumpSeries::from_tower(Arc::new(build_tower(set, depth).unwrap())).unwrap();
    (
        HarmonicEvaluator::new(series.clone(), Backend::Series, EvaluatorOptions::default()).unwrap(),
        HarmonicEvaluator::new(series, Backend::Kernel, EvaluatorOptions::default()).unwrap(),
    )
}

#[test]
fn v_approaches_its_boundary_series_radially() {
    let set = BoundarySet::finite(&[0.0, TAU / 3.0, 2.0 * TAU / 3.0]).unwrap();
    let (_, kernel) = evaluators(&set, 12);
    let long = EvaluatorOptions {
        max_freq: Some(500_000),
        ..EvaluatorOptions::default()
    };
    let series = HarmonicEvaluator::new(kernel.series().clone(), Backend::Series, long).unwrap();
    let mut worst = [0.0f64; 3];
    let mut angles = 0;
    for j in 0..100 {
        let theta = Angle::new(TAU * (j as f64 + 0.5) / 100.0).unwrap();
        if set.distance(theta) < 1e-2 {
            continue;
        }
        angles += 1;
        let edge = series.eval_v(DiskPoint::boundary(theta)).unwrap();
        let gaps: Vec<f64> = [0.9, 0.99, 0.999]
            .iter()
            .map(|&r| (kernel.eval_v(DiskPoint::new(r, theta).unwrap()).unwrap() - edge).abs())
            .collect();
        assert!(gaps[1] <= gaps[0] && gaps[2] <= gaps[1], "theta = {}: {gaps:?}", theta.radians());
        for (w, g) in worst.iter_mut().zip(&gaps) {
            *w = w.max(*g);
        }
    }
    println!("{angles} angles, worst gaps at 0.9, 0.99, 0.999: {worst:?}");
    assert!(angles >= 90);
    assert!(worst[2] < 0.1 * worst[0], "{worst:?}");
}

#[test]
fn v_vanishes_on_the_symmetry_axis() {
    let set = BoundarySet::finite(&[TAU / 3.0, 2.0 * TAU / 3.0]).unwrap();
    let (series, kernel) = evaluators(&set, 6);
    for r in [0.0, 0.5, 0.9, 0.99] {
        let z = DiskPoint::polar(r, 0.0).unwrap();
        assert!(series.eval_v(z).unwrap().abs() < 1e-12);
        assert!(kernel.eval_v(z).unwrap().abs() < 1e-12);
    }
    assert!(series.eval_v(DiskPoint::boundary(Angle::ZERO)).unwrap().abs() < 1e-12);
}
