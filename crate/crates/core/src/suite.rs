//! The full invariant suite behind `disk-interp verify`, split into groups
//! that can also be run on their own.

use std::f64::consts::TAU;
use std::sync::Arc as Shared;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boundary::BoundarySet;
use crate::bump::{BumpLevel, BumpSeries, SegmentKind};
use crate::cover::{build_tower, verify_tower, CoverLevel, CoverTower};
use crate::error::{Error, Result};
use crate::geometry::Angle;
use crate::harmonic::{Backend, DiskPoint, EvaluatorOptions, GridSpec, HarmonicEvaluator};
use crate::interpolant::{trivial_evaluator, Interpolant, Kind};
use crate::quadrature;
use crate::report::{CheckRecord, VerificationReport};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub quadrature: f64,
    pub agreement: f64,
    pub ratio_window: (f64, f64),
    pub fourier: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quadrature: 1e-10,
            agreement: 1e-8,
            ratio_window: (3.5, 4.5),
            fourier: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub max_freq: Option<usize>,
    pub tolerances: Tolerances,
    pub bump_samples: usize,
    pub backend_points: usize,
    pub margin_pairs: usize,
    pub identity_points: usize,
    pub fourier_max_freq: usize,
    /// Levels with more bumps than this are left out of the quadrature
    /// oracle for Fourier coefficients.
    pub fourier_bump_cap: usize,
    /// Approximate number of segment integrations the kernel backend may
    /// spend on the agreement check.
    pub kernel_budget: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0x5eed,
            max_freq: None,
            tolerances: Tolerances::default(),
            bump_samples: 100_000,
            backend_points: 500,
            margin_pairs: 10_000,
            identity_points: 10_000,
            fourier_max_freq: 200,
            fourier_bump_cap: 1024,
            kernel_budget: 20_000_000,
        }
    }
}

/// Deliberate corruptions used to exercise the failure path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Level 2 is replaced by a copy of level 1.
    Nesting,
}

pub fn inject_fault(tower: &CoverTower, fault: Fault) -> Result<CoverTower> {
    match fault {
        Fault::Nesting => {
            if tower.depth() < 2 {
                return Err(Error::Validation("the nesting fault needs depth at least 2".into()));
            }
            let mut levels = tower.levels().to_vec();
            let first = &levels[0];
            levels[1] = CoverLevel::new_unchecked(2, first.outer_arcs().collect(), first.inner_arcs().collect());
            Ok(CoverTower::from_levels_unchecked(tower.boundary_set().clone(), levels))
        }
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_angle(rng: &mut ChaCha8Rng) -> Angle {
    Angle::wrapped(rng.gen::<f64>() * TAU)
}

/// Uniform in the disk of radius `r_max`.
fn random_point(rng: &mut ChaCha8Rng, r_max: f64) -> DiskPoint {
    let r = r_max * rng.gen::<f64>().sqrt();
    DiskPoint::new(r, random_angle(rng)).expect("radius in range")
}

fn in_window(x: f64, (lo, hi): (f64, f64)) -> bool {
    (lo..=hi).contains(&x)
}

fn rms(xs: &[f64]) -> f64 {
    (xs.iter().map(|x| x * x).sum::<f64>() / xs.len().max(1) as f64).sqrt()
}

fn shift(z: DiskPoint, dx: f64, dy: f64) -> DiskPoint {
    DiskPoint::from_complex(z.to_complex() + Complex64::new(dx, dy)).expect("stencil stays inside")
}

/// RMS of the five-point Laplacian of `u` at step `h` over `points`.
pub fn discrete_laplacian_rms(e: &HarmonicEvaluator, points: &[DiskPoint], h: f64) -> f64 {
    let u = |z: DiskPoint| e.eval_u(z).value;
    let vals: Vec<f64> = points
        .iter()
        .map(|&z| {
            (u(shift(z, h, 0.0)) + u(shift(z, -h, 0.0)) + u(shift(z, 0.0, h)) + u(shift(z, 0.0, -h)) - 4.0 * u(z))
                / (h * h)
        })
        .collect();
    rms(&vals)
}

/// RMS of the central-difference Cauchy–Riemann residuals
/// `(f_x - g_y, f_y + g_x)` of `f + ig` at step `h`.
pub fn cauchy_riemann_rms<F: Fn(DiskPoint) -> Complex64>(f: F, points: &[DiskPoint], h: f64) -> f64 {
    let vals: Vec<f64> = points
        .iter()
        .flat_map(|&z| {
            let dx = (f(shift(z, h, 0.0)) - f(shift(z, -h, 0.0))) / (2.0 * h);
            let dy = (f(shift(z, 0.0, h)) - f(shift(z, 0.0, -h))) / (2.0 * h);
            [dx.re - dy.im, dy.re + dx.im]
        })
        .collect();
    rms(&vals)
}

/// `c_k(φ_n)` for `k ≤ max_freq` by adaptive quadrature of each segment.
pub fn fourier_by_quadrature(level: &BumpLevel<'_>, max_freq: usize, tol: f64) -> Vec<Complex64> {
    let segments: Vec<_> = level
        .bumps()
        .flat_map(|b| b.segments())
        .filter(|s| s.width > 0.0)
        .collect();
    let support: f64 = segments.iter().map(|s| s.width).sum();
    let mut out = vec![Complex64::new(0.0, 0.0); max_freq + 1];
    for seg in &segments {
        let share = tol * TAU * seg.width / support;
        let s = seg.start.radians();
        for (k, c) in out.iter_mut().enumerate() {
            let kf = k as f64;
            let est = quadrature::integrate(
                |x| Complex64::from_polar(seg.value_at(x), -kf * (s + x)),
                0.0,
                seg.width,
                share,
            );
            *c += est.value;
        }
    }
    for c in &mut out {
        *c /= TAU;
    }
    out
}

/// Structural checks on every level of the tower.
pub fn cover_checks(tower: &CoverTower) -> Vec<CheckRecord> {
    let report = verify_tower(tower, tower.boundary_set());
    let failing = |f: &dyn Fn(&crate::cover::LevelCheck) -> bool| {
        report.levels.iter().filter(|l| !f(l)).map(|l| l.n).collect::<Vec<_>>()
    };
    let detail = |bad: &[usize]| {
        if bad.is_empty() {
            String::new()
        } else {
            format!("failing levels {bad:?}")
        }
    };
    let worst = report
        .levels
        .iter()
        .map(|l| l.total_length * 2f64.powi(l.n as i32))
        .fold(0.0, f64::max);
    let mut out = Vec::new();
    let bad = failing(&|l| l.measure_bound);
    out.push(
        CheckRecord::new("cover.measure", "total length of the level-n cover is below 2^-n", bad.is_empty())
            .measured(worst, 1.0)
            .detail(detail(&bad)),
    );
    for (id, anchor, f) in [
        (
            "cover.core_inside",
            "each closed core lies strictly inside its open arc",
            &(|l: &crate::cover::LevelCheck| l.core_inside) as &dyn Fn(&crate::cover::LevelCheck) -> bool,
        ),
        (
            "cover.nesting",
            "the closure of each level lies inside the previous level",
            &|l| l.nesting.unwrap_or(true),
        ),
        (
            "cover.plateau_nesting",
            "each plateau set lies inside the previous plateau set",
            &|l| l.plateau_nesting.unwrap_or(true),
        ),
        (
            "cover.boundary_in_cores",
            "the zero set lies in the plateau set, so core and arc meet it alike",
            &|l| l.boundary_in_cores,
        ),
        ("cover.arcs_meet_boundary", "every arc of every level meets the zero set", &|l| l.arcs_meet_boundary),
    ] {
        let bad = failing(f);
        out.push(
            CheckRecord::new(id, anchor, bad.is_empty())
                .measured(bad.len() as f64, 0.0)
                .detail(detail(&bad)),
        );
    }
    out.push(CheckRecord::new(
        "cover.intersection",
        "the deepest level separates the zero set from points farther than its length",
        report.truncated_intersection,
    ));
    out
}

/// Range, plateau, support, smoothness and mass of the bump levels.
pub fn bump_checks(series: &BumpSeries, options: &SuiteOptions) -> Vec<CheckRecord> {
    let depth = series.depth();
    let mut r = rng(options.seed, 1);
    let per_level = options.bump_samples.div_ceil(depth.max(1));
    let (mut out_of_range, mut plateau_err, mut off_err) = (0usize, 0.0f64, 0.0f64);
    let mut samples = 0usize;
    for level in series.levels() {
        let cells = level_cells(series, level.n());
        for i in 0..per_level {
            let theta = if i % 2 == 0 || cells.is_empty() {
                random_angle(&mut r)
            } else {
                let c = &cells[r.gen_range(0..cells.len())];
                c.start().rotate(r.gen::<f64>() * c.length())
            };
            let v = level.value(theta);
            samples += 1;
            if !(0.0..=1.0).contains(&v) {
                out_of_range += 1;
            }
            if !level_contains(series, level.n(), theta) {
                off_err = off_err.max(v.abs());
            }
            if !cells.is_empty() {
                let c = &cells[r.gen_range(0..cells.len())];
                let t = c.start().rotate(c.core_offset() + r.gen::<f64>() * c.core_length());
                plateau_err = plateau_err.max((level.value(t) - 1.0).abs());
            }
        }
    }
    let mut out = vec![
        CheckRecord::new("bump.range", "each bump takes values in [0, 1]", out_of_range == 0)
            .measured(out_of_range as f64, 0.0)
            .detail(format!("{samples} samples")),
        CheckRecord::new("bump.plateau", "each bump equals one on its plateau set", plateau_err <= 1e-15)
            .measured(plateau_err, 1e-15),
        CheckRecord::new("bump.support", "each bump vanishes off its cover", off_err <= 1e-15).measured(off_err, 1e-15),
    ];

    let (e1, e2, used) = c1_errors(series);
    let ratio = e1 / e2;
    out.push(
        CheckRecord::new(
            "bump.c1_rate",
            "central differences of each bump converge to its derivative at second order",
            used > 0 && in_window(ratio, options.tolerances.ratio_window),
        )
        .measured(ratio, 4.0)
        .detail(format!("{used} ramp points")),
    );

    let integrals: Vec<f64> = series.levels().map(|l| l.integral()).collect();
    let total: f64 = integrals.iter().sum();
    let bound = 1.0 - 2f64.powi(-(depth as i32));
    let per_level_ok = integrals
        .iter()
        .enumerate()
        .all(|(i, m)| *m < 2f64.powi(-(i as i32 + 1)));
    out.push(
        CheckRecord::new(
            "bump.mass",
            "the bump integrals sum to less than the geometric bound on the cover lengths",
            total < bound && per_level_ok,
        )
        .measured(total, bound),
    );
    out
}

fn level_cells(series: &BumpSeries, n: usize) -> Vec<crate::cover::Cell> {
    series.tower().map_or_else(Vec::new, |t| t.level(n).cells().to_vec())
}

fn level_contains(series: &BumpSeries, n: usize, theta: Angle) -> bool {
    series.tower().is_some_and(|t| t.level(n).contains(theta))
}

/// Summed central-difference errors at steps `h` and `h/2` over interior
/// ramp points, with the number of points used.
fn c1_errors(series: &BumpSeries) -> (f64, f64, usize) {
    const PER_LEVEL: usize = 64;
    const MIN_WIDTH: f64 = 1e-6;
    let (mut e1, mut e2, mut used) = (0.0, 0.0, 0);
    for level in series.levels() {
        let stride = (level.len() / PER_LEVEL).max(1);
        for m in (0..level.len()).step_by(stride) {
            for seg in level.bump(m).segments() {
                if seg.kind == SegmentKind::PlateauOne || seg.width < MIN_WIDTH {
                    continue;
                }
                for frac in [0.3, 0.7] {
                    let theta = seg.start.rotate(frac * seg.width);
                    let exact = level.slope(theta);
                    let fd = |h: f64| (level.value(theta.rotate(h)) - level.value(theta.rotate(-h))) / (2.0 * h);
                    let h = 0.05 * seg.width;
                    e1 += (fd(h) - exact).abs();
                    e2 += (fd(0.5 * h) - exact).abs();
                    used += 1;
                }
            }
        }
    }
    (e1, e2, used)
}

/// Closed-form coefficients against quadrature, Parseval, and decay.
pub fn fourier_checks(series: &BumpSeries, series_eval: &HarmonicEvaluator, options: &SuiteOptions) -> Vec<CheckRecord> {
    let kmax = options.fourier_max_freq;
    let mut worst: f64 = 0.0;
    let mut levels_used = Vec::new();
    for level in series.levels() {
        if level.len() > options.fourier_bump_cap {
            continue;
        }
        let exact = level.fourier_coefficients(kmax);
        let quad = fourier_by_quadrature(&level, kmax, 1e-13);
        worst = exact.iter().zip(&quad).map(|(a, b)| (a - b).norm()).fold(worst, f64::max);
        levels_used.push(level.n());
    }
    let tol = options.tolerances.fourier;
    let mut out = vec![CheckRecord::new(
        "fourier.oracle",
        "closed-form Fourier coefficients of each bump level match adaptive quadrature",
        !levels_used.is_empty() && worst < tol,
    )
    .measured(worst, tol)
    .detail(format!("k <= {kmax}, levels {levels_used:?}"))];

    if let Some(c) = series_eval.coefficients() {
        let k = c.len() - 1;
        let partial = c[0].norm_sqr() + 2.0 * c[1..].iter().map(|x| x.norm_sqr()).sum::<f64>();
        let ms = series.mean_square();
        let gap = ms - partial;
        let bound = series.parseval_tail_bound(k.max(1));
        out.push(
            CheckRecord::new(
                "fourier.parseval",
                "mean square of the bump sum equals the sum of squared coefficients up to the certified tail",
                gap >= -1e-12 && gap <= bound + 1e-12,
            )
            .measured(gap, bound)
            .detail(format!("K = {k}")),
        );
        let v = series.second_derivative_variation();
        let worst_decay = (1..=k)
            .map(|j| c[j].norm() / (v / (TAU * (j as f64).powi(3))))
            .fold(0.0, f64::max);
        out.push(
            CheckRecord::new(
                "fourier.decay",
                "coefficients decay like k^-3 with the constant set by the variation of the second derivative",
                worst_decay <= 1.0 + 1e-9,
            )
            .measured(worst_decay, 1.0),
        );
    }
    out
}

/// Number of kernel evaluations the agreement check can afford.
fn kernel_points(series: &BumpSeries, options: &SuiteOptions) -> usize {
    let segments: usize = series.levels().map(|l| l.segment_count()).sum();
    (options.kernel_budget / segments.max(1)).clamp(16, options.backend_points.max(16)).min(options.backend_points)
}

/// Backend agreement, harmonicity, mean value, partial-sum margins,
/// Cauchy–Riemann, continuity up to the circle and radial limits of `v`.
pub fn harmonic_checks(
    series_eval: &HarmonicEvaluator,
    kernel_eval: &HarmonicEvaluator,
    options: &SuiteOptions,
) -> Vec<CheckRecord> {
    let tol = options.tolerances;
    let series = series_eval.series();
    let mut out = Vec::new();
    let mut min_u = f64::INFINITY;

    let mut r = rng(options.seed, 2);
    let m = kernel_points(series, options);
    let mut worst: f64 = 0.0;
    for _ in 0..m {
        let z = random_point(&mut r, 0.99);
        let a = kernel_eval.eval_h(z).expect("interior");
        let b = series_eval.eval_h(z).expect("interior");
        min_u = min_u.min(a.re).min(b.re);
        worst = worst.max((a - b).norm());
    }
    out.push(
        CheckRecord::new(
            "harmonic.backend_agreement",
            "kernel quadrature and power series give the same harmonic extension inside the disk",
            worst < tol.agreement,
        )
        .measured(worst, tol.agreement)
        .detail(format!("{m} points with r <= 0.99")),
    );

    let pts: Vec<DiskPoint> = (0..20).map(|_| random_point(&mut r, 0.8)).collect();
    let ratio = discrete_laplacian_rms(series_eval, &pts, 0.01) / discrete_laplacian_rms(series_eval, &pts, 0.005);
    out.push(
        CheckRecord::new(
            "harmonic.laplacian",
            "the discrete Laplacian of u vanishes at second order as the step halves",
            in_window(ratio, tol.ratio_window),
        )
        .measured(ratio, 4.0),
    );

    let c0 = series.integral_phi() / TAU;
    let centre = DiskPoint::new(0.0, Angle::ZERO).expect("centre");
    let ds = (series_eval.eval_u(centre).value - c0).abs();
    let dk = (kernel_eval.eval_u(centre).value - c0).abs();
    out.push(
        CheckRecord::new(
            "harmonic.mean_value",
            "u at the centre equals the mean of its boundary values",
            ds <= 1e-12 && dk <= tol.quadrature,
        )
        .measured(ds.max(dk), tol.quadrature),
    );

    let depth = series.depth();
    let mut worst_margin = f64::INFINITY;
    let mut worst_level = f64::INFINITY;
    for _ in 0..options.margin_pairs {
        let z = random_point(&mut r, 0.99);
        let l = r.gen_range(0..=depth);
        let values = series_eval.level_values(z);
        let u = series_eval.eval_u(z).value;
        min_u = min_u.min(u);
        worst_level = values.iter().copied().fold(worst_level, f64::min);
        worst_margin = worst_margin.min(u - values[..l].iter().sum::<f64>());
    }
    out.push(
        CheckRecord::new(
            "harmonic.partial_sums",
            "u dominates every partial sum of the level extensions",
            worst_margin >= -tol.quadrature,
        )
        .measured(worst_margin, -tol.quadrature)
        .detail(format!("{} (z, l) pairs", options.margin_pairs)),
    );
    out.push(
        CheckRecord::new(
            "harmonic.monotone_truncation",
            "adding a level never decreases u, since each level extension is nonnegative",
            worst_level >= -tol.quadrature,
        )
        .measured(worst_level, -tol.quadrature),
    );
    out.push(
        CheckRecord::new("harmonic.nonnegative", "u is nonnegative wherever it is evaluated", min_u >= -tol.quadrature)
            .measured(min_u, -tol.quadrature),
    );

    let pts: Vec<DiskPoint> = (0..100).map(|_| random_point(&mut r, 0.8)).collect();
    let h = |z: DiskPoint| series_eval.eval_h(z).expect("interior");
    let ratio = cauchy_riemann_rms(h, &pts, 0.01) / cauchy_riemann_rms(h, &pts, 0.005);
    out.push(
        CheckRecord::new(
            "harmonic.cauchy_riemann",
            "u and v satisfy the Cauchy-Riemann equations up to second-order difference error",
            in_window(ratio, tol.ratio_window),
        )
        .measured(ratio, 4.0),
    );

    let set = series.tower().map(|t| t.boundary_set().clone()).unwrap_or_else(BoundarySet::empty);
    let far: Vec<Angle> = (0..256)
        .map(|j| Angle::wrapped(TAU * (j as f64 + 0.5) / 256.0))
        .filter(|t| set.distance(*t) >= 1e-2)
        .collect();
    let step = (far.len() / 8).max(1);
    let mut errs = [0.0f64; 3];
    for theta in far.iter().step_by(step) {
        let phi = series.eval_phi(*theta);
        for (e, rad) in errs.iter_mut().zip([0.99, 0.999, 0.9999]) {
            let u = kernel_eval.eval_u(DiskPoint::new(rad, *theta).expect("radius")).value;
            *e = e.max((u - phi).abs());
        }
    }
    out.push(
        CheckRecord::new(
            "harmonic.boundary_continuity",
            "u extends continuously to the circle away from the zero set with the bump sum as boundary values",
            errs[2] <= errs[0] && errs[2] < 1e-2,
        )
        .measured(errs[2], errs[0])
        .detail(format!("radii 0.99, 0.999, 0.9999: {errs:?}")),
    );

    out
}

/// The tail `Σ_{k > N} u_k` against the Poisson-kernel bound away from a
/// ball free of deep levels.
pub fn remainder_checks(series_eval: &HarmonicEvaluator, kernel_eval: &HarmonicEvaluator, options: &SuiteOptions) -> Vec<CheckRecord> {
    let series = kernel_eval.series();
    let set = series.tower().map(|t| t.boundary_set().clone()).unwrap_or_else(BoundarySet::empty);
    let (theta0, d) = (0..720)
        .map(|j| {
            let t = Angle::wrapped(TAU * j as f64 / 720.0);
            (t, set.distance(t))
        })
        .fold((Angle::ZERO, -1.0), |best, x| if x.1 > best.1 { x } else { best });
    let delta = (0.5 * d).min(1.0);
    let split = kernel_eval.minimal_split_level(theta0, delta);
    let mut rows = Vec::new();
    let mut holds = true;
    let mut worst_ratio: f64 = 0.0;
    let mut rhs_by_r = Vec::new();
    for rad in [0.9, 0.99, 0.999] {
        let mut rhs = 0.0;
        for off in [0.0, -0.25 * delta, 0.25 * delta] {
            match kernel_eval.check_remainder_bound(split, theta0, delta, rad, theta0.rotate(off)) {
                Ok(c) => {
                    holds &= c.holds;
                    if c.rhs > 0.0 {
                        worst_ratio = worst_ratio.max(c.lhs / c.rhs);
                    }
                    rhs = c.rhs;
                    rows.push(format!("r={rad} lhs={:.3e} rhs={:.3e}", c.lhs, c.rhs));
                }
                Err(e) => {
                    holds = false;
                    rows.push(format!("r={rad}: {e}"));
                }
            }
        }
        rhs_by_r.push(rhs);
    }
    let decreasing =
        rhs_by_r.windows(2).all(|w| w[1] < w[0]) || rhs_by_r.iter().all(|x| *x == 0.0);
    let mut out = vec![
        CheckRecord::new(
            "remainder.bound",
            "the level tail is bounded by the Poisson kernel maximum off a ball times the tail mass",
            holds,
        )
        .measured(worst_ratio, 1.0)
        .detail(format!("theta0 = {}, delta = {delta}, N = {split}; {}", theta0.radians(), rows.join("; "))),
        CheckRecord::new(
            "remainder.vanishes",
            "the tail bound decreases to zero as r tends to one",
            decreasing,
        )
        .measured(*rhs_by_r.last().unwrap_or(&0.0), rhs_by_r[0]),
    ];

    let mut r = rng(options.seed, 3);
    let mut worst: f64 = 0.0;
    let depth = series.depth();
    for _ in 0..100 {
        let z = random_point(&mut r, 0.99);
        let n = r.gen_range(0..=depth);
        let (w, wt) = series_eval.remainder_decomposition(n, z).expect("interior");
        worst = worst.max((w + wt - series_eval.eval_u(z).value).abs());
    }
    out.push(
        CheckRecord::new("remainder.additivity", "u splits into partial sum plus remainder", worst < 1e-10)
            .measured(worst, 1e-10),
    );
    out
}

/// Depth of `theta` inside the deepest plateau arc containing it.
pub fn plateau_depth(tower: &CoverTower, theta: Angle) -> f64 {
    let level = tower.level(tower.depth());
    level.locate(theta).map_or(0.0, |m| {
        let core = level.cells()[m].core();
        if !core.contains(theta) {
            return 0.0;
        }
        let off = core.offset_of(theta);
        off.min(core.length() - off)
    })
}

/// Radii `2, 1, 0.5, 0.1, 0.01, …` down to `1e-2` times the plateau depth.
pub fn blowup_radii(depth: f64) -> Vec<f64> {
    let smallest = 1e-2 * depth;
    let mut radii = vec![2.0, 1.0, 0.5];
    let mut rho = 0.1;
    while rho > 2.0 * smallest {
        radii.push(rho);
        rho *= 0.1;
    }
    radii.push(smallest);
    radii
}

/// Values on the zero set and the blow-up profile around one of its points.
pub fn blowup_checks(kernel_eval: &HarmonicEvaluator) -> Vec<CheckRecord> {
    let series = kernel_eval.series();
    let Some(tower) = series.tower() else {
        return Vec::new();
    };
    let depth = tower.depth() as f64;
    let points = tower.boundary_set().certified_points(64);
    let worst = points
        .iter()
        .map(|&t| {
            let u = kernel_eval.eval_u(DiskPoint::boundary(t));
            let phi = series.eval_phi(t);
            if u.at_f {
                (phi - depth).abs().max((u.value - depth).abs())
            } else {
                f64::INFINITY
            }
        })
        .fold(0.0, f64::max);
    let mut out = vec![CheckRecord::new(
        "blowup.boundary_values",
        "on the zero set u equals the truncation depth",
        worst <= 1e-12,
    )
    .measured(worst, 1e-12)
    .detail(format!("{} certified points", points.len()))];

    let theta0 = points[0];
    let pd = plateau_depth(tower, theta0);
    let radii = blowup_radii(pd);
    match kernel_eval.uniform_blowup_profile(theta0, &radii) {
        Ok(profile) => {
            let monotone = profile.windows(2).all(|w| w[1].min_u >= w[0].min_u);
            let last = profile.last().map_or(0.0, |p| p.min_u);
            out.push(
                CheckRecord::new(
                    "blowup.profile_monotone",
                    "the minimum of u over shrinking neighbourhoods of a zero-set point never decreases",
                    monotone && profile[0].min_u >= 0.0,
                )
                .measured(profile[0].min_u, 0.0),
            );
            out.push(
                CheckRecord::new(
                    "blowup.profile_limit",
                    "u tends to infinity uniformly near the zero set, reaching the depth in truncated form",
                    pd > 0.0 && last >= depth - 0.5,
                )
                .measured(last, depth - 0.5)
                .detail(format!("theta0 = {}, smallest radius {:.3e}", theta0.radians(), radii.last().unwrap())),
            );
        }
        Err(e) => out.push(CheckRecord::new(
            "blowup.profile_monotone",
            "the minimum of u over shrinking neighbourhoods of a zero-set point never decreases",
            false,
        )
        .detail(e.to_string())),
    }
    out
}

/// Zero set and modulus of `ω` and `λ`, and their algebraic identities.
pub fn interpolant_checks(series_eval: &HarmonicEvaluator, options: &SuiteOptions) -> Result<Vec<CheckRecord>> {
    let series = series_eval.series();
    let set = series.tower().map(|t| t.boundary_set().clone()).unwrap_or_else(BoundarySet::empty);
    let depth = series.depth();
    let omega = Interpolant::new(series_eval, Kind::Omega);
    let lambda = Interpolant::new(series_eval, Kind::Lambda);
    let grid = GridSpec {
        radii: vec![0.5, 0.9, 0.99, 1.0],
        angles: 512,
    };
    let zero = omega.zero_set_report(&set, &grid, &[0.0, 1e-3, 1e-2, 1e-1])?;
    let lam = lambda.modulus_report_lambda(&set, &grid)?;
    let lf = depth as f64 / (1.0 + depth as f64);
    let mut out = vec![
        CheckRecord::new(
            "interp.omega_on_f",
            "omega is at most 1/(1+L) on the zero set and vanishes there in the limit",
            zero.max_abs_on_f <= zero.bound_on_f,
        )
        .measured(zero.max_abs_on_f, zero.bound_on_f),
    ];
    let band_min = zero.bands.iter().filter(|b| b.points > 0).map(|b| b.min_abs).fold(f64::INFINITY, f64::min);
    out.push(
        CheckRecord::new(
            "interp.omega_off_f",
            "omega does not vanish off the zero set",
            zero.passed(),
        )
        .measured(band_min.min(zero.interior_min_abs), 0.0),
    );
    out.push(
        CheckRecord::new("interp.lambda_off_f", "lambda has modulus below one on the circle off the zero set", lam.passed())
            .measured(lam.max_abs_off_f, 1.0)
            .detail(format!("{} boundary points", lam.points)),
    );
    out.push(
        CheckRecord::new(
            "interp.lambda_on_f",
            "lambda is at least L/(1+L) on the zero set and equals one there in the limit",
            lam.min_abs_on_f >= lf - 1e-10,
        )
        .measured(lam.min_abs_on_f, lf - 1e-10),
    );

    let mut r = rng(options.seed, 4);
    let (mut worst_id, mut worst_mod) = (0.0f64, f64::NEG_INFINITY);
    for i in 0..options.identity_points {
        let z = if i % 5 == 0 {
            DiskPoint::boundary(random_angle(&mut r))
        } else {
            random_point(&mut r, 1.0)
        };
        let u = series_eval.eval_u(z).value;
        let w = omega.eval(z)?.value;
        let l = lambda.eval(z)?.value;
        worst_id = worst_id.max((w + l - 1.0).norm());
        worst_mod = worst_mod.max(w.norm() - 1.0 / (1.0 + u));
    }
    out.push(
        CheckRecord::new("interp.identity", "omega plus lambda equals one", worst_id < 1e-12)
            .measured(worst_id, 1e-12)
            .detail(format!("{} points", options.identity_points)),
    );
    out.push(
        CheckRecord::new(
            "interp.modulus_bound",
            "the modulus of omega is at most 1/(1+u) because the real part of 1+u+iv is 1+u",
            worst_mod <= 1e-15,
        )
        .measured(worst_mod, 1e-15),
    );

    if let Some(theta) = set.certified_points(1).first() {
        let mut depths = vec![depth.div_ceil(3), (2 * depth).div_ceil(3), depth];
        depths.dedup();
        let values: Vec<f64> = depths
            .iter()
            .map(|&l| {
                let u: f64 = series.levels().take(l).map(|lv| lv.value(*theta)).sum();
                1.0 / (1.0 + u)
            })
            .collect();
        out.push(
            CheckRecord::new(
                "interp.pinning",
                "omega at a zero-set point decreases strictly with the truncation depth",
                values.windows(2).all(|w| w[1] < w[0]),
            )
            .measured(*values.last().unwrap(), values[0])
            .detail(format!("depths {depths:?}")),
        );
    }

    let pts: Vec<DiskPoint> = (0..100).map(|_| random_point(&mut r, 0.8)).collect();
    let f = |z: DiskPoint| omega.eval(z).expect("interior").value;
    let ratio = cauchy_riemann_rms(f, &pts, 0.01) / cauchy_riemann_rms(f, &pts, 0.005);
    out.push(
        CheckRecord::new(
            "interp.analytic",
            "omega satisfies the Cauchy-Riemann equations inside the disk",
            in_window(ratio, options.tolerances.ratio_window),
        )
        .measured(ratio, 4.0),
    );
    Ok(out)
}

/// Builds both evaluators for a tower.
pub fn evaluators(series: &BumpSeries, options: &SuiteOptions) -> Result<(HarmonicEvaluator, HarmonicEvaluator)> {
    let opts = EvaluatorOptions {
        max_freq: options.max_freq,
        quad_tol: options.tolerances.quadrature,
    };
    Ok((
        HarmonicEvaluator::new(series.clone(), Backend::Series, opts)?,
        HarmonicEvaluator::new(series.clone(), Backend::Kernel, opts)?,
    ))
}

fn trivial_report() -> VerificationReport {
    let e = trivial_evaluator();
    let omega = Interpolant::new(&e, Kind::Omega);
    let lambda = Interpolant::new(&e, Kind::Lambda);
    let one = Complex64::new(1.0, 0.0);
    let ok = GridSpec::default().points().all(|z| {
        omega.eval(z).map(|v| v.value == one).unwrap_or(false)
            && lambda.eval(z).map(|v| v.value.norm() == 0.0).unwrap_or(false)
    });
    let mut report = VerificationReport::new(0);
    report.push(CheckRecord::new(
        "trivial.constant",
        "for an empty zero set omega is identically one and lambda identically zero",
        ok,
    ));
    report
}

/// Builds the tower for `set` at `depth` and runs every group.
pub fn run_suite(set: &BoundarySet, depth: usize, options: &SuiteOptions, fault: Option<Fault>) -> Result<VerificationReport> {
    if set.is_empty() {
        return Ok(trivial_report());
    }
    let mut tower = build_tower(set, depth)?;
    if let Some(f) = fault {
        tower = inject_fault(&tower, f)?;
    }
    let mut report = VerificationReport::new(depth);
    for c in cover_checks(&tower) {
        report.push(c);
    }
    let series = match BumpSeries::from_tower(Shared::new(tower)) {
        Ok(s) => s,
        Err(e) => {
            report.push(CheckRecord::new("bump.build", "each level yields well-defined ramps", false).detail(e.to_string()));
            return Ok(report);
        }
    };
    for c in bump_checks(&series, options) {
        report.push(c);
    }
    let (series_eval, kernel_eval) = evaluators(&series, options)?;
    for c in fourier_checks(&series, &series_eval, options) {
        report.push(c);
    }
    for c in harmonic_checks(&series_eval, &kernel_eval, options) {
        report.push(c);
    }
    for c in remainder_checks(&series_eval, &kernel_eval, options) {
        report.push(c);
    }
    for c in blowup_checks(&kernel_eval) {
        report.push(c);
    }
    for c in interpolant_checks(&series_eval, options)? {
        report.push(c);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> SuiteOptions {
        SuiteOptions {
            bump_samples: 2000,
            backend_points: 40,
            margin_pairs: 300,
            identity_points: 300,
            fourier_max_freq: 20,
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn three_points_pass() {
        let set = BoundarySet::finite(&[0.0, 2.0, 4.0]).unwrap();
        let report = run_suite(&set, 6, &quick(), None).unwrap();
        let failed: Vec<_> = report.failures().collect();
        assert!(report.pass, "{failed:#?}");
        assert!(report.checks.iter().all(|c| !c.anchor.is_empty()));
    }

    #[test]
    fn nesting_fault_is_caught() {
        let set = BoundarySet::finite(&[1.0]).unwrap();
        let report = run_suite(&set, 4, &quick(), Some(Fault::Nesting)).unwrap();
        assert!(!report.pass);
        assert!(!report.get("cover.nesting").unwrap().pass);
    }

    #[test]
    fn empty_set_is_trivial() {
        let report = run_suite(&BoundarySet::empty(), 12, &quick(), None).unwrap();
        assert!(report.pass);
        assert_eq!(report.checks.len(), 1);
    }

    #[test]
    fn radii_reach_requested_floor() {
        let r = blowup_radii(1e-5);
        assert!((r.last().unwrap() - 1e-7).abs() < 1e-20);
        assert!(r[r.len() - 2] > 2e-7);
        assert!(r.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn quadrature_oracle_matches_closed_form() {
        let set = BoundarySet::finite(&[0.5]).unwrap();
        let tower = Shared::new(build_tower(&set, 3).unwrap());
        let series = BumpSeries::from_tower(tower).unwrap();
        let level = series.level(2);
        let a = level.fourier_coefficients(30);
        let b = fourier_by_quadrature(&level, 30, 1e-13);
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
