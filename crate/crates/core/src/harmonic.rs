//! Harmonic extension `u` of `φ^(L)` into the closed disk, its conjugate `v`,
//! and the per-level pieces `u_n`.
//!
//! Two interchangeable backends evaluate `h = u + iv`:
//!
//! * [`Backend::Kernel`] integrates `φ_n(t) (e^{it} + z)/(e^{it} - z) / 2π`
//!   segment by segment. Plateau segments use the closed-form antiderivatives
//!   of `P_r` and `Q_r`; ramp segments use adaptive Gauss–Kronrod with
//!   breakpoints graded geometrically in `1 - r` around the kernel peak.
//!   Runs of bumps far from the kernel peak are summed through a moment
//!   expansion instead (see [`crate::far_field`]).
//! * [`Backend::Series`] sums `c_0 + 2 Σ_{k ≤ K} c_k z^k` by Horner's scheme
//!   from the closed-form Fourier coefficients.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use num_complex::Complex64;

use crate::bump::{Bump, BumpSeries, RampSegment, SegmentKind};
use crate::error::{Error, Result};
use crate::far_field::FarFieldTree;
use crate::geometry::{Angle, GEOM_TOLERANCE};
use crate::quadrature;

/// Default absolute tolerance of the kernel backend.
pub const QUAD_TOLERANCE: f64 = 1e-10;

/// Upper limit on the series length chosen by [`default_max_freq`].
pub const MAX_SERIES_LENGTH: usize = 20_000;

/// A point `z = r e^{iθ}` of the closed unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint {
    r: f64,
    theta: Angle,
}

impl DiskPoint {
    pub fn new(r: f64, theta: Angle) -> Result<DiskPoint> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Domain(format!("radius {r} is outside [0, 1]")));
        }
        Ok(DiskPoint { r, theta })
    }

    pub fn polar(r: f64, theta: f64) -> Result<DiskPoint> {
        DiskPoint::new(r, Angle::new(theta)?)
    }

    /// Moduli within `1e-14` above one are rounded onto the circle.
    pub fn from_complex(z: Complex64) -> Result<DiskPoint> {
        let r = z.norm();
        if !r.is_finite() || r > 1.0 + 1e-14 {
            return Err(Error::Domain(format!("{z} is outside the closed disk")));
        }
        let theta = if r == 0.0 { Angle::ZERO } else { Angle::new(z.arg())? };
        DiskPoint::new(r.min(1.0), theta)
    }

    pub fn boundary(theta: Angle) -> DiskPoint {
        DiskPoint { r: 1.0, theta }
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> Angle {
        self.theta
    }

    pub fn is_boundary(&self) -> bool {
        self.r == 1.0
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta.radians())
    }
}

fn check_radius(r: f64) -> Result<()> {
    if (0.0..1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::Domain(format!("kernel radius {r} is outside [0, 1)")))
    }
}

/// `1 - 2r cos t + r²`, written to stay accurate near `r = 1, t = 0`.
fn kernel_denominator(r: f64, t: f64) -> f64 {
    let s = (0.5 * t).sin();
    (1.0 - r) * (1.0 - r) + 4.0 * r * s * s
}

/// `P_r(t) = (1 - r²) / (1 - 2r cos t + r²)`.
pub fn poisson_kernel(r: f64, t: f64) -> Result<f64> {
    check_radius(r)?;
    Ok((1.0 - r) * (1.0 + r) / kernel_denominator(r, t))
}

/// `Q_r(t) = 2r sin t / (1 - 2r cos t + r²)`.
pub fn conjugate_kernel(r: f64, t: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(2.0 * r * t.sin() / kernel_denominator(r, t))
}

/// `∫_a^b P_r` for `-π ≤ a ≤ b ≤ π`.
fn poisson_antiderivative(r: f64, a: f64, b: f64) -> f64 {
    let prim = |x: f64| {
        let h = 0.5 * x;
        2.0 * ((1.0 + r) * h.sin()).atan2((1.0 - r) * h.cos())
    };
    prim(b) - prim(a)
}

/// `∫_a^b (P_r(x) - i Q_r(x)) dx` for `-π ≤ a ≤ b < 3π`.
fn herglotz_integral(r: f64, a: f64, b: f64) -> Complex64 {
    let re = if b <= PI {
        poisson_antiderivative(r, a, b)
    } else {
        poisson_antiderivative(r, a, PI) + poisson_antiderivative(r, -PI, b - TAU)
    };
    let im = (kernel_denominator(r, b) / kernel_denominator(r, a)).ln();
    Complex64::new(re, -im)
}

/// Smallest `K` with `2 c_0 ρ^{K+1} / (1 - ρ) < 1e-10` at `ρ = 0.99`, using
/// `|c_k| ≤ c_0` for nonnegative data; capped at [`MAX_SERIES_LENGTH`].
pub fn default_max_freq(c0: f64) -> usize {
    const RHO: f64 = 0.99;
    const TARGET: f64 = 1e-10;
    if !(c0 > 0.0) {
        return 0;
    }
    let k = ((TARGET * (1.0 - RHO) / (2.0 * c0)).ln() / RHO.ln()).ceil() - 1.0;
    (k.max(0.0) as usize).min(MAX_SERIES_LENGTH)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Kernel,
    Series,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Kernel => "kernel",
            Backend::Series => "series",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvaluatorOptions {
    /// Series length `K`; `None` picks [`default_max_freq`].
    pub max_freq: Option<usize>,
    /// Absolute tolerance of the kernel backend.
    pub quad_tol: f64,
}

impl Default for EvaluatorOptions {
    fn default() -> Self {
        EvaluatorOptions {
            max_freq: None,
            quad_tol: QUAD_TOLERANCE,
        }
    }
}

/// `u` at a point, with the flag raised on boundary points of `F`, where the
/// value is the truncation depth `L`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UValue {
    pub value: f64,
    pub at_f: bool,
}

struct SeriesCoefficients {
    levels: Vec<Vec<Complex64>>,
    total: Vec<Complex64>,
}

/// Evaluates `u`, `v`, `h = u + iv` and `u_n` on the closed disk.
pub struct HarmonicEvaluator {
    series: BumpSeries,
    backend: Backend,
    quad_tol: f64,
    coeffs: Option<SeriesCoefficients>,
    trees: Vec<FarFieldTree>,
    ramp_width: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartialSumCheck {
    /// `u(z) - Σ_{n ≤ l} u_n(z)`.
    pub margin: f64,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RemainderCheck {
    /// `|W̃_N(z)|`.
    pub lhs: f64,
    /// `P_r(δ/2) · (1/2π) ∫ φ̃_N`.
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfilePoint {
    pub radius: f64,
    pub min_u: f64,
    pub samples: usize,
}

/// Polar evaluation grid, row-major in `(r, θ)` with `θ_j = 2πj / angles`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub radii: Vec<f64>,
    pub angles: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            radii: vec![0.0, 0.5, 0.9, 0.99, 1.0],
            angles: 64,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() || self.angles == 0 {
            return Err(Error::Validation("grid needs at least one radius and one angle".into()));
        }
        for &r in &self.radii {
            if !(0.0..=1.0).contains(&r) {
                return Err(Error::Validation(format!("grid radius {r} is outside [0, 1]")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> impl Iterator<Item = DiskPoint> + '_ {
        let m = self.angles;
        self.radii.iter().flat_map(move |&r| {
            (0..m).map(move |j| DiskPoint {
                r,
                theta: Angle::wrapped(TAU * j as f64 / m as f64),
            })
        })
    }
}

/// Breakpoints `±(1 - r)·4^j` inside `(a, b)`, plus the ends.
fn graded_points(r: f64, a: f64, b: f64) -> Vec<f64> {
    let mut pts = vec![a];
    if a < 0.0 && 0.0 < b {
        pts.push(0.0);
    }
    let mut e = (1.0 - r).max(f64::MIN_POSITIVE);
    while e < b - a + a.abs().max(b.abs()) {
        for x in [-e, e] {
            if a < x && x < b {
                pts.push(x);
            }
        }
        e *= 4.0;
    }
    pts.push(b);
    pts.sort_by(f64::total_cmp);
    pts
}

impl HarmonicEvaluator {
    pub fn new(series: BumpSeries, backend: Backend, options: EvaluatorOptions) -> Result<HarmonicEvaluator> {
        if !(options.quad_tol > 0.0 && options.quad_tol.is_finite()) {
            return Err(Error::Validation(format!(
                "quadrature tolerance {} must be positive",
                options.quad_tol
            )));
        }
        let coeffs = match backend {
            Backend::Kernel => None,
            Backend::Series => {
                let k = options
                    .max_freq
                    .unwrap_or_else(|| default_max_freq(series.integral_phi() / TAU));
                let levels = series.level_coefficients(k);
                let total = crate::bump::sum_levels(&levels, k);
                Some(SeriesCoefficients { levels, total })
            }
        };
        let trees = match backend {
            Backend::Kernel => series.levels().map(|l| FarFieldTree::build(&l)).collect(),
            Backend::Series => Vec::new(),
        };
        let ramp_width = series
            .levels()
            .flat_map(|l| l.bumps().map(|b| b.rise_width() + b.fall_width()).collect::<Vec<_>>())
            .sum();
        Ok(HarmonicEvaluator {
            series,
            backend,
            quad_tol: options.quad_tol,
            coeffs,
            trees,
            ramp_width,
        })
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn series(&self) -> &BumpSeries {
        &self.series
    }

    pub fn depth(&self) -> usize {
        self.series.depth()
    }

    pub fn quad_tol(&self) -> f64 {
        self.quad_tol
    }

    /// `K` of the series backend.
    pub fn max_freq(&self) -> Option<usize> {
        self.coeffs.as_ref().map(|c| c.total.len() - 1)
    }

    /// `c_0, …, c_K` of the series backend.
    pub fn coefficients(&self) -> Option<&[Complex64]> {
        self.coeffs.as_ref().map(|c| c.total.as_slice())
    }

    /// Bound on the series truncation error of `h` at radius `r < 1`.
    pub fn series_tail_bound(&self, r: f64) -> Option<f64> {
        let k = self.max_freq()?;
        let c0 = self.series.integral_phi() / TAU;
        Some(2.0 * c0 * r.powi(k as i32 + 1) / (1.0 - r))
    }

    fn at_f(&self, theta: Angle) -> bool {
        self.series
            .tower()
            .is_some_and(|t| t.boundary_set().contains(theta))
    }

    fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs[1..].iter().rev() {
            acc = acc * z + c;
        }
        coeffs[0] + 2.0 * acc * z
    }

    fn level_h_kernel(&self, n: usize, z: DiskPoint) -> Complex64 {
        let level = self.series.level(n);
        let near = |m: usize| self.bump_h_kernel(&level.bump(m), z);
        self.trees[n - 1].integral(z.r, z.theta.radians(), near) / TAU
    }

    /// `∫ φ_{n,m}(t) (e^{it} + z)/(e^{it} - z) dt` by direct quadrature.
    fn bump_h_kernel(&self, bump: &Bump, z: DiskPoint) -> Complex64 {
        let r = z.r;
        let mut sum = Complex64::new(0.0, 0.0);
        for seg in bump.segments() {
            if seg.width <= 0.0 {
                continue;
            }
            let mut a = seg.start.offset_from(z.theta);
            if a >= PI {
                a -= TAU;
            }
            let b = a + seg.width;
            match seg.kind {
                SegmentKind::PlateauOne => sum += herglotz_integral(r, a, b),
                SegmentKind::PlateauZero => {}
                SegmentKind::Rise | SegmentKind::Fall => {
                    sum += self.ramp_integral(&seg, r, a, b);
                }
            }
        }
        sum
    }

    fn ramp_integral(&self, seg: &RampSegment, r: f64, a: f64, b: f64) -> Complex64 {
        let tol = self.quad_tol * seg.width / self.ramp_width.max(seg.width);
        let f = |x: f64| {
            let d = kernel_denominator(r, x);
            let k = Complex64::new((1.0 - r) * (1.0 + r), -2.0 * r * x.sin()) / d;
            k * seg.value_at((x - a).clamp(0.0, seg.width))
        };
        quadrature::integrate_pieces(f, &graded_points(r, a, b), tol).value
    }

    fn level_h(&self, n: usize, z: DiskPoint) -> Complex64 {
        match &self.coeffs {
            Some(c) => Self::horner(&c.levels[n - 1], z.to_complex()),
            None => self.level_h_kernel(n, z),
        }
    }

    /// `h(z)` for `|z| < 1`.
    fn interior_h(&self, z: DiskPoint) -> Complex64 {
        match &self.coeffs {
            Some(c) => Self::horner(&c.total, z.to_complex()),
            None => (1..=self.depth()).map(|n| self.level_h(n, z)).sum(),
        }
    }

    pub fn eval_u(&self, z: DiskPoint) -> UValue {
        if z.is_boundary() {
            if self.at_f(z.theta) {
                return UValue {
                    value: self.depth() as f64,
                    at_f: true,
                };
            }
            return UValue {
                value: self.series.eval_phi(z.theta),
                at_f: false,
            };
        }
        if self.depth() == 0 {
            return UValue { value: 0.0, at_f: false };
        }
        UValue {
            value: self.interior_h(z).re,
            at_f: false,
        }
    }

    /// `v(z)`. On the circle the value is the conjugate series summed at
    /// `r = 1`, available from the series backend only and refused on `F`.
    pub fn eval_v(&self, z: DiskPoint) -> Result<f64> {
        Ok(self.eval_h(z)?.im)
    }

    pub fn eval_h(&self, z: DiskPoint) -> Result<Complex64> {
        if self.depth() == 0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if !z.is_boundary() {
            return Ok(self.interior_h(z));
        }
        if self.at_f(z.theta) {
            return Err(Error::Domain(format!(
                "v is undefined at {} on the boundary set",
                z.theta.radians()
            )));
        }
        let Some(c) = &self.coeffs else {
            return Err(Error::Domain(
                "boundary values of v need the series backend".into(),
            ));
        };
        let v = Self::horner(&c.total, z.to_complex()).im;
        Ok(Complex64::new(self.series.eval_phi(z.theta), v))
    }

    /// `u_n(z)` for `1 ≤ n ≤ L`; on the circle this is `φ_n(θ)`.
    pub fn eval_u_level(&self, n: usize, z: DiskPoint) -> Result<f64> {
        if n == 0 || n > self.depth() {
            return Err(Error::Validation(format!(
                "level {n} is outside 1..={}",
                self.depth()
            )));
        }
        if z.is_boundary() {
            return Ok(self.series.level(n).value(z.theta));
        }
        Ok(self.level_h(n, z).re)
    }

    /// `[u_1(z), …, u_L(z)]`.
    pub fn level_values(&self, z: DiskPoint) -> Vec<f64> {
        (1..=self.depth())
            .map(|n| {
                if z.is_boundary() {
                    self.series.level(n).value(z.theta)
                } else {
                    self.level_h(n, z).re
                }
            })
            .collect()
    }

    /// Checks `u(z) ≥ Σ_{n ≤ l} u_n(z)` up to the backend tolerance.
    pub fn check_partial_sum_bound(&self, z: DiskPoint, l: usize) -> Result<PartialSumCheck> {
        if l > self.depth() {
            return Err(Error::Validation(format!("level {l} exceeds depth {}", self.depth())));
        }
        let u = self.eval_u(z).value;
        let partial: f64 = self.level_values(z)[..l].iter().sum();
        let margin = u - partial;
        Ok(PartialSumCheck {
            margin,
            holds: margin >= -self.quad_tol,
        })
    }

    /// `(W_N(z), W̃_N(z))`: the sums of `u_k(z)` over `k ≤ N` and `N < k ≤ L`.
    pub fn remainder_decomposition(&self, split: usize, z: DiskPoint) -> Result<(f64, f64)> {
        if split > self.depth() {
            return Err(Error::Validation(format!(
                "split level {split} exceeds depth {}",
                self.depth()
            )));
        }
        if z.is_boundary() {
            return Err(Error::Domain("remainder decomposition needs |z| < 1".into()));
        }
        let values = self.level_values(z);
        Ok((values[..split].iter().sum(), values[split..].iter().sum()))
    }

    /// Smallest `N` such that `G_k` misses the closed ball of radius `delta`
    /// about `theta0` for every `k > N`.
    pub fn minimal_split_level(&self, theta0: Angle, delta: f64) -> usize {
        let Some(tower) = self.series.tower() else {
            return 0;
        };
        (0..tower.depth())
            .find(|&n| !level_meets_ball(tower.level(n + 1), theta0, delta))
            .unwrap_or(tower.depth())
    }

    /// Compares `|W̃_N(r e^{iθ})|` with `P_r(δ/2) · (1/2π) ∫ φ̃_N`.
    pub fn check_remainder_bound(
        &self,
        split: usize,
        theta0: Angle,
        delta: f64,
        r: f64,
        theta: Angle,
    ) -> Result<RemainderCheck> {
        check_radius(r)?;
        if !(delta > 0.0 && delta <= PI) {
            return Err(Error::Domain(format!("ball radius {delta} is outside (0, π]")));
        }
        if split > self.depth() {
            return Err(Error::Validation(format!(
                "split level {split} exceeds depth {}",
                self.depth()
            )));
        }
        if self.at_f(theta0) {
            return Err(Error::Precondition(format!(
                "centre {} lies on the boundary set",
                theta0.radians()
            )));
        }
        if theta.distance(theta0) >= 0.5 * delta {
            return Err(Error::Precondition(format!(
                "evaluation angle {} is not within δ/2 of the centre",
                theta.radians()
            )));
        }
        if let Some(tower) = self.series.tower() {
            if split < tower.depth() && level_meets_ball(tower.level(split + 1), theta0, delta) {
                return Err(Error::Precondition(format!(
                    "level {} meets the ball of radius {delta} about {}",
                    split + 1,
                    theta0.radians()
                )));
            }
        }
        let (_, tail) = self.remainder_decomposition(split, DiskPoint::new(r, theta)?)?;
        let mass: f64 = self
            .series
            .levels()
            .skip(split)
            .map(|l| l.integral())
            .sum::<f64>()
            / TAU;
        let rhs = poisson_kernel(r, 0.5 * delta)? * mass;
        let lhs = tail.abs();
        Ok(RemainderCheck {
            lhs,
            rhs,
            holds: lhs <= rhs,
        })
    }

    /// For each radius `ρ`, the minimum of `u` over a fixed sample set
    /// restricted to `|z - e^{iθ_0}| ≤ ρ`.
    pub fn uniform_blowup_profile(&self, theta0: Angle, radii: &[f64]) -> Result<Vec<ProfilePoint>> {
        if !self.at_f(theta0) {
            return Err(Error::Precondition(format!(
                "{} is not a point of the boundary set",
                theta0.radians()
            )));
        }
        if let Some(&bad) = radii.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
            return Err(Error::Domain(format!("neighbourhood radius {bad} must be positive")));
        }
        let centre = Complex64::from_polar(1.0, theta0.radians());
        let mut samples: Vec<(f64, f64)> = vec![(0.0, self.eval_u(DiskPoint::boundary(theta0)).value)];
        const FAN: usize = 15;
        for &rho in radii {
            if rho < 2.0 {
                let beta = 2.0 * (0.5 * rho).asin();
                for s in [-beta, beta] {
                    let z = DiskPoint::boundary(theta0.rotate(s));
                    let d = (z.to_complex() - centre).norm();
                    samples.push((d, self.eval_u(z).value));
                }
            }
            for i in 0..FAN {
                let alpha = PI * ((i as f64 + 0.5) / FAN as f64 - 0.5);
                if rho >= 2.0 * alpha.cos() - 1e-12 {
                    continue;
                }
                let w = centre * (1.0 - rho * Complex64::cis(alpha));
                let z = DiskPoint::from_complex(w)?;
                samples.push(((w - centre).norm(), self.eval_u(z).value));
            }
        }
        Ok(radii
            .iter()
            .map(|&rho| {
                let inside = samples.iter().filter(|(d, _)| *d <= rho * (1.0 + 1e-12));
                let (count, min_u) = inside.fold((0, f64::INFINITY), |(c, m), &(_, u)| (c + 1, m.min(u)));
                ProfilePoint {
                    radius: rho,
                    min_u,
                    samples: count,
                }
            })
            .collect())
    }

    /// Writes `r, theta, u, v, at_F_flag` rows; `v` is left blank where it is
    /// undefined or unavailable from this backend.
    pub fn write_grid_csv<W: Write>(&self, grid: &GridSpec, out: W) -> Result<()> {
        grid.validate()?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["r", "theta", "u", "v", "at_F_flag"]).map_err(csv_error)?;
        for z in grid.points() {
            let u = self.eval_u(z);
            let v = if u.at_f { None } else { self.eval_v(z).ok() };
            w.write_record([
                z.r.to_string(),
                z.theta.radians().to_string(),
                u.value.to_string(),
                v.map_or_else(String::new, |v| v.to_string()),
                u8::from(u.at_f).to_string(),
            ])
            .map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

/// Whether any outer arc of `level` meets the closed ball of radius `delta`
/// about `theta0`.
fn level_meets_ball(level: &crate::cover::CoverLevel, theta0: Angle, delta: f64) -> bool {
    level
        .outer_arcs()
        .any(|arc| arc.distance_to(theta0) < delta - GEOM_TOLERANCE || arc.contains(theta0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundarySet;
    use crate::cover::build_tower;
    use std::sync::Arc as Shared;

    fn evaluator(angles: &[f64], depth: usize, backend: Backend) -> HarmonicEvaluator {
        let set = BoundarySet::finite(angles).unwrap();
        let tower = Shared::new(build_tower(&set, depth).unwrap());
        HarmonicEvaluator::new(BumpSeries::from_tower(tower).unwrap(), backend, EvaluatorOptions::default()).unwrap()
    }

    #[test]
    fn far_field_tree_matches_direct_sum() {
        let set = BoundarySet::cantor(TAU - 0.3, 1.2, vec![1.0 / 3.0], 30).unwrap();
        let tower = Shared::new(build_tower(&set, 6).unwrap());
        let ev = HarmonicEvaluator::new(BumpSeries::from_tower(tower).unwrap(), Backend::Kernel, EvaluatorOptions::default())
            .unwrap();
        for (r, theta) in [(0.3, 1.0), (0.9, 0.2), (0.99, 6.1), (0.999, 0.4), (0.9999, 3.0), (0.95, 6.25)] {
            let z = DiskPoint::polar(r, theta).unwrap();
            for n in [1, 4, 6] {
                let level = ev.series().level(n);
                let direct: Complex64 = level.bumps().map(|b| ev.bump_h_kernel(&b, z)).sum::<Complex64>() / TAU;
                let tree = ev.level_h_kernel(n, z);
                assert!((tree - direct).norm() < 1e-11, "n = {n}, z = {r} e^i{theta}: {tree} vs {direct}");
            }
        }
    }

    #[test]
    fn kernel_values() {
        assert_eq!(poisson_kernel(0.0, 1.3).unwrap(), 1.0);
        let r = 0.7;
        assert!((poisson_kernel(r, 0.0).unwrap() - (1.0 + r) / (1.0 - r)).abs() < 1e-14);
        assert_eq!(conjugate_kernel(r, 0.0).unwrap(), 0.0);
        assert_eq!(conjugate_kernel(0.0, 2.0).unwrap(), 0.0);
        assert!(poisson_kernel(1.0, 0.3).is_err());
        assert!(conjugate_kernel(1.2, 0.3).is_err());
        for t in [0.1, 1.0, 2.5] {
            assert_eq!(poisson_kernel(r, t).unwrap(), poisson_kernel(r, -t).unwrap());
            assert_eq!(conjugate_kernel(r, t).unwrap(), -conjugate_kernel(r, -t).unwrap());
        }
    }

    #[test]
    fn kernel_normalisation() {
        for r in [0.0, 0.5, 0.9] {
            let (v, _) = quadrature::integrate_real(|t| poisson_kernel(r, t).unwrap(), -PI, PI, 1e-12);
            assert!((v / TAU - 1.0).abs() < 1e-10, "r = {r}");
        }
    }

    #[test]
    fn closed_form_plateau_matches_quadrature() {
        for (r, a, b) in [(0.3, -0.4, 0.9), (0.999, -0.01, 0.02), (0.95, 2.9, 3.6), (0.5, -PI, PI)] {
            let exact = herglotz_integral(r, a, b);
            let est = quadrature::integrate_pieces(
                |x| Complex64::new(poisson_kernel(r, x).unwrap(), -conjugate_kernel(r, x).unwrap()),
                &graded_points(r, a, b),
                1e-13,
            );
            assert!((exact - est.value).norm() < 1e-11, "{r} {a} {b}: {exact} vs {}", est.value);
        }
    }

    #[test]
    fn default_series_length() {
        assert_eq!(default_max_freq(0.0), 0);
        let c0 = 0.05;
        let k = default_max_freq(c0);
        let bound = |k: usize| 2.0 * c0 * 0.99f64.powi(k as i32 + 1) / 0.01;
        assert!(bound(k) < 1e-10 && bound(k - 1) >= 1e-10);
        assert_eq!(default_max_freq(1e300), MAX_SERIES_LENGTH);
        assert_eq!(default_max_freq(1e-300), 0);
    }

    #[test]
    fn centre_is_mean() {
        for backend in [Backend::Kernel, Backend::Series] {
            let e = evaluator(&[0.0, 2.0, 4.0], 6, backend);
            let c0 = e.series().integral_phi() / TAU;
            let z = DiskPoint::new(0.0, Angle::ZERO).unwrap();
            let h = e.eval_h(z).unwrap();
            assert!((h.re - c0).abs() < 1e-12, "{backend:?}");
            assert!(h.im.abs() < 1e-12, "{backend:?}");
        }
    }

    #[test]
    fn backends_agree() {
        let k = evaluator(&[0.0, 2.0, 4.0], 6, Backend::Kernel);
        let s = evaluator(&[0.0, 2.0, 4.0], 6, Backend::Series);
        for (r, t) in [(0.3, 0.1), (0.9, 0.01), (0.99, 2.0), (0.99, 0.0), (0.7, 5.0)] {
            let z = DiskPoint::polar(r, t).unwrap();
            let d = (k.eval_h(z).unwrap() - s.eval_h(z).unwrap()).norm();
            assert!(d < 1e-8, "({r}, {t}): {d}");
        }
    }

    #[test]
    fn boundary_values() {
        let e = evaluator(&[0.0], 5, Backend::Series);
        let at = e.eval_u(DiskPoint::boundary(Angle::ZERO));
        assert_eq!(at, UValue { value: 5.0, at_f: true });
        assert!(e.eval_v(DiskPoint::boundary(Angle::ZERO)).is_err());
        let off = DiskPoint::boundary(Angle::new(PI).unwrap());
        assert_eq!(e.eval_u(off), UValue { value: 0.0, at_f: false });
        // φ is even about 0, so v vanishes on the axis of symmetry.
        assert!(e.eval_v(off).unwrap().abs() < 1e-9);
        assert!(e.eval_v(DiskPoint::polar(0.8, 0.0).unwrap()).unwrap().abs() < 1e-12);
        let kernel = evaluator(&[0.0], 5, Backend::Kernel);
        assert!(matches!(kernel.eval_v(off), Err(Error::Domain(_))));
        assert_eq!(kernel.eval_u_level(2, DiskPoint::boundary(Angle::ZERO)).unwrap(), 1.0);
        assert_eq!(kernel.eval_u_level(2, off).unwrap(), 0.0);
        assert!(kernel.eval_u_level(6, off).is_err());
    }

    #[test]
    fn empty_series_is_zero() {
        let e = HarmonicEvaluator::new(BumpSeries::empty(), Backend::Kernel, EvaluatorOptions::default()).unwrap();
        let z = DiskPoint::polar(0.5, 1.0).unwrap();
        assert_eq!(e.eval_u(z).value, 0.0);
        assert_eq!(e.eval_h(DiskPoint::boundary(Angle::ZERO)).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn partial_sums() {
        let e = evaluator(&[0.0, 3.0], 6, Backend::Series);
        let z = DiskPoint::polar(0.95, 0.02).unwrap();
        let full = e.check_partial_sum_bound(z, 6).unwrap();
        assert!(full.margin.abs() < 1e-12);
        let none = e.check_partial_sum_bound(z, 0).unwrap();
        assert_eq!(none.margin, e.eval_u(z).value);
        let at = e.check_partial_sum_bound(DiskPoint::boundary(Angle::ZERO), 1).unwrap();
        assert_eq!(at.margin, 5.0);
        let (w, wt) = e.remainder_decomposition(2, z).unwrap();
        assert!((w + wt - e.eval_u(z).value).abs() < 1e-12);
    }

    #[test]
    fn remainder_bound_one_point() {
        let e = evaluator(&[0.0], 12, Backend::Kernel);
        let theta0 = Angle::new(PI).unwrap();
        assert_eq!(e.minimal_split_level(theta0, 1.0), 0);
        let mut last = f64::INFINITY;
        for r in [0.9, 0.99, 0.999] {
            let c = e.check_remainder_bound(0, theta0, 1.0, r, theta0).unwrap();
            assert!(c.holds && c.rhs < last);
            last = c.rhs;
        }
        // P_r(1/2) · Σ_n 1.25 r_n / 2π with r_n = 2^-n / 8.
        let mass = 1.25 / 8.0 * (1.0 - 2f64.powi(-12)) / TAU;
        let expected = poisson_kernel(0.999, 0.5).unwrap() * mass;
        assert!((last - expected).abs() < 1e-15);
        assert!(last < 1e-3);
        let bad = e.check_remainder_bound(0, Angle::new(0.5).unwrap(), 1.0, 0.9, Angle::new(0.5).unwrap());
        assert!(matches!(bad, Err(Error::Precondition(_))));
        let far = e.check_remainder_bound(0, theta0, 1.0, 0.9, Angle::new(PI + 0.6).unwrap());
        assert!(matches!(far, Err(Error::Precondition(_))));
    }

    #[test]
    fn blowup_profile_is_monotone() {
        let e = evaluator(&[0.0], 8, Backend::Kernel);
        let radii = [2.0, 0.5, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
        let p = e.uniform_blowup_profile(Angle::ZERO, &radii).unwrap();
        for w in p.windows(2) {
            assert!(w[1].min_u >= w[0].min_u);
        }
        assert!(p[0].min_u >= 0.0);
        assert!(p.last().unwrap().min_u > 7.5, "{:?}", p.last());
        assert!(e.uniform_blowup_profile(Angle::new(1.0).unwrap(), &radii).is_err());
    }

    #[test]
    fn grid_csv_shape() {
        let e = evaluator(&[0.0], 3, Backend::Series);
        let mut buf = Vec::new();
        let grid = GridSpec {
            radii: vec![0.5, 1.0],
            angles: 4,
        };
        e.write_grid_csv(&grid, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 8);
        assert_eq!(lines[0], "r,theta,u,v,at_F_flag");
        assert_eq!(lines[5], "1,0,3,,1");
    }
}
