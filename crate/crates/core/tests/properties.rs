//! Randomised invariants of the geometry, the cover tower and the interpolants.

use std::f64::consts::TAU;
use std::sync::{Arc as Shared, OnceLock};

use disk_interp::boundary::BoundarySet;
use disk_interp::bump::BumpSeries;
use disk_interp::cover::{build_tower, verify_tower};
use disk_interp::geometry::{reduce, Angle, Arc, ArcSet};
use disk_interp::harmonic::{Backend, DiskPoint, EvaluatorOptions, HarmonicEvaluator};
use disk_interp::interpolant::{Interpolant, Kind};
use proptest::prelude::*;

fn arc_set(raw: &[(f64, f64)]) -> ArcSet {
    raw.iter().fold(ArcSet::empty(), |acc, &(s, l)| {
        acc.union(&ArcSet::single(Arc::closed(s, l).unwrap())).unwrap()
    })
}

fn three_points() -> &'static HarmonicEvaluator {
    static EVAL: OnceLock<HarmonicEvaluator> = OnceLock::new();
    EVAL.get_or_init(|| {
        let set = BoundarySet::finite(&[0.0, TAU / 3.0, 2.0 * TAU / 3.0]).unwrap();
        let series = BumpSeries::from_tower(Shared::new(build_tower(&set, 8).unwrap())).unwrap();
        HarmonicEvaluator::new(series, Backend::Kernel, EvaluatorOptions::default()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduce_lands_in_range_and_is_idempotent(x in -1e6f64..1e6) {
        let a = reduce(x).unwrap().radians();
        prop_assert!((0.0..TAU).contains(&a));
        prop_assert_eq!(reduce(a).unwrap().radians(), a);
        let turns = ((x - a) / TAU).round();
        prop_assert!((x - a - turns * TAU).abs() <= 1e-9 * x.abs().max(1.0));
    }

    #[test]
    fn union_and_intersection_measures_add_up(
        a in prop::collection::vec((0.0f64..TAU, 0.0f64..1.0), 1..5),
        b in prop::collection::vec((0.0f64..TAU, 0.0f64..1.0), 1..5),
    ) {
        let (a, b) = (arc_set(&a), arc_set(&b));
        let union = a.union(&b).unwrap();
        let meet = a.intersection(&b).unwrap();
        let lhs = union.total_length() + meet.total_length();
        let rhs = a.total_length() + b.total_length();
        prop_assert!((lhs - rhs).abs() < 1e-11, "{} vs {}", lhs, rhs);
        prop_assert!(meet.is_subset_of(&a) && meet.is_subset_of(&b));
        prop_assert!(a.is_subset_of(&union) && b.is_subset_of(&union));
    }

    #[test]
    fn membership_follows_the_set_operations(
        a in prop::collection::vec((0.0f64..TAU, 0.0f64..1.0), 1..5),
        b in prop::collection::vec((0.0f64..TAU, 0.0f64..1.0), 1..5),
        probes in prop::collection::vec(0.0f64..TAU, 16),
    ) {
        let (a, b) = (arc_set(&a), arc_set(&b));
        let union = a.union(&b).unwrap();
        let meet = a.intersection(&b).unwrap();
        for t in probes {
            let t = Angle::new(t).unwrap();
            prop_assert_eq!(union.contains(t), a.contains(t) || b.contains(t));
            prop_assert_eq!(meet.contains(t), a.contains(t) && b.contains(t));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn towers_over_finite_sets_verify(
        angles in prop::collection::vec(0.0f64..TAU, 1..7),
        depth in 1usize..9,
    ) {
        let set = BoundarySet::finite(&angles).unwrap();
        let tower = build_tower(&set, depth).unwrap();
        let report = verify_tower(&tower, &set);
        prop_assert!(report.passed(), "{:?}", report.first_failure());
        let series = BumpSeries::from_tower(Shared::new(tower)).unwrap();
        for level in series.levels() {
            for &t in &angles {
                prop_assert_eq!(level.value(Angle::new(t).unwrap()), 1.0);
            }
        }
    }

    #[test]
    fn bump_sums_stay_in_the_unit_interval(
        angles in prop::collection::vec(0.0f64..TAU, 1..5),
        probes in prop::collection::vec(0.0f64..TAU, 32),
    ) {
        let set = BoundarySet::finite(&angles).unwrap();
        let series = BumpSeries::from_tower(Shared::new(build_tower(&set, 6).unwrap())).unwrap();
        for level in series.levels() {
            for &t in &probes {
                let v = level.value(Angle::new(t).unwrap());
                prop_assert!((0.0..=1.0).contains(&v), "{}", v);
            }
        }
    }

    #[test]
    fn interpolants_are_bounded_inside_the_disk(r in 0.0f64..0.999, t in 0.0f64..TAU) {
        let eval = three_points();
        let z = DiskPoint::polar(r, t).unwrap();
        let u = eval.eval_u(z).value;
        prop_assert!(u >= -1e-12);
        let omega = Interpolant::new(eval, Kind::Omega).eval(z).unwrap().value;
        let lambda = Interpolant::new(eval, Kind::Lambda).eval(z).unwrap().value;
        prop_assert!(omega.norm() <= 1.0 + 1e-12);
        prop_assert!(lambda.norm() <= 1.0 + 1e-12);
        prop_assert!(omega.norm() <= 1.0 / (1.0 + u) + 1e-12);
        prop_assert!((omega + lambda - 1.0).norm() < 1e-12);
    }
}
