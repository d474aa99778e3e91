//! `ω = 1/(1 + h)` and `λ = h/(1 + h)` for `h = u + iv`.
//!
//! `ω` lies in the disk algebra and vanishes exactly on `F` in the limit
//! `L → ∞`; `λ` equals one on `F` and has modulus below one elsewhere on the
//! circle. At finite depth, boundary points of `F` are flagged and carry the
//! `v`-free values `ω = 1/(1 + L)`, `λ = L/(1 + L)`.

use std::io::Write;

use num_complex::Complex64;

use crate::boundary::BoundarySet;
use crate::bump::BumpSeries;
use crate::error::Result;
use crate::geometry::Angle;
use crate::harmonic::{csv_error, Backend, DiskPoint, EvaluatorOptions, GridSpec, HarmonicEvaluator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Omega,
    Lambda,
}

impl Kind {
    pub fn name(&self) -> &'static str {
        match self {
            Kind::Omega => "omega",
            Kind::Lambda => "lambda",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterpValue {
    pub value: Complex64,
    pub at_f: bool,
}

/// Either interpolant over a harmonic evaluator.
pub struct Interpolant<'e> {
    evaluator: &'e HarmonicEvaluator,
    kind: Kind,
}

/// Both functions for `F = ∅`: `ω ≡ 1`, `λ ≡ 0`.
pub fn trivial_evaluator() -> HarmonicEvaluator {
    HarmonicEvaluator::new(BumpSeries::empty(), Backend::Series, EvaluatorOptions::default())
        .expect("default options are valid")
}

fn apply(kind: Kind, h: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    match kind {
        Kind::Omega => one / (one + h),
        Kind::Lambda => h / (one + h),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceBand {
    /// Boundary grid points at geodesic distance at least this from `F`.
    pub distance: f64,
    pub points: usize,
    pub min_abs: f64,
    /// `1 / (1 + max u + max |v|)` over the same points.
    pub lower_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSetReport {
    pub depth: usize,
    pub f_points: usize,
    /// Largest `|ω|` over certified points of `F`.
    pub max_abs_on_f: f64,
    /// `1 / (1 + L)`.
    pub bound_on_f: f64,
    pub bands: Vec<DistanceBand>,
    /// Smallest `|ω|` over the interior radii of the grid.
    pub interior_min_abs: f64,
}

impl ZeroSetReport {
    pub fn passed(&self) -> bool {
        self.max_abs_on_f <= self.bound_on_f
            && self
                .bands
                .iter()
                .all(|b| b.points == 0 || (b.min_abs > 0.0 && b.min_abs >= b.lower_bound))
            && self.interior_min_abs > 0.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LambdaReport {
    pub points: usize,
    /// Largest `|λ|` over off-`F` boundary grid points.
    pub max_abs_off_f: f64,
    /// Smallest `1 - |λ|` over the same points.
    pub min_margin: f64,
    pub f_points: usize,
    /// Smallest `|λ|` over certified points of `F`.
    pub min_abs_on_f: f64,
}

impl LambdaReport {
    pub fn passed(&self) -> bool {
        self.max_abs_off_f < 1.0
    }
}

impl<'e> Interpolant<'e> {
    pub fn new(evaluator: &'e HarmonicEvaluator, kind: Kind) -> Interpolant<'e> {
        Interpolant { evaluator, kind }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn evaluator(&self) -> &HarmonicEvaluator {
        self.evaluator
    }

    pub fn depth(&self) -> usize {
        self.evaluator.depth()
    }

    /// `ω(z)` or `λ(z)`. Fails only for boundary points off `F` when the
    /// evaluator cannot supply `v` there.
    pub fn eval(&self, z: DiskPoint) -> Result<InterpValue> {
        let u = self.evaluator.eval_u(z);
        if u.at_f {
            return Ok(InterpValue {
                value: apply(self.kind, Complex64::new(u.value, 0.0)),
                at_f: true,
            });
        }
        Ok(InterpValue {
            value: apply(self.kind, self.evaluator.eval_h(z)?),
            at_f: false,
        })
    }

    /// Zero-set diagnostics for `ω`: its size on `F`, on boundary points at
    /// each distance from `F`, and on interior radii of `grid`.
    pub fn zero_set_report(
        &self,
        set: &BoundarySet,
        grid: &GridSpec,
        distances: &[f64],
    ) -> Result<ZeroSetReport> {
        let omega = Interpolant::new(self.evaluator, Kind::Omega);
        let f_points = set.certified_points(64);
        let mut max_abs_on_f: f64 = 0.0;
        for &theta in &f_points {
            max_abs_on_f = max_abs_on_f.max(omega.eval(DiskPoint::boundary(theta))?.value.norm());
        }
        let mut boundary = Vec::new();
        for j in 0..grid.angles {
            let theta = Angle::wrapped(std::f64::consts::TAU * j as f64 / grid.angles as f64);
            let d = set.distance(theta);
            let z = DiskPoint::boundary(theta);
            let u = self.evaluator.eval_u(z);
            if u.at_f {
                continue;
            }
            let h = self.evaluator.eval_h(z)?;
            boundary.push((d, h, apply(Kind::Omega, h).norm()));
        }
        let bands = distances
            .iter()
            .map(|&distance| {
                let inside: Vec<_> = boundary.iter().filter(|(d, _, _)| *d >= distance).collect();
                let min_abs = inside.iter().map(|p| p.2).fold(f64::INFINITY, f64::min);
                let max_u = inside.iter().map(|p| p.1.re).fold(0.0, f64::max);
                let max_v = inside.iter().map(|p| p.1.im.abs()).fold(0.0, f64::max);
                DistanceBand {
                    distance,
                    points: inside.len(),
                    min_abs,
                    lower_bound: 1.0 / (1.0 + max_u + max_v),
                }
            })
            .collect();
        let mut interior_min_abs = f64::INFINITY;
        for z in grid.points().filter(|z| !z.is_boundary()) {
            interior_min_abs = interior_min_abs.min(omega.eval(z)?.value.norm());
        }
        Ok(ZeroSetReport {
            depth: self.depth(),
            f_points: f_points.len(),
            max_abs_on_f,
            bound_on_f: 1.0 / (1.0 + self.depth() as f64),
            bands,
            interior_min_abs,
        })
    }

    /// Modulus diagnostics for `λ` on the boundary circle of `grid`.
    pub fn modulus_report_lambda(&self, set: &BoundarySet, grid: &GridSpec) -> Result<LambdaReport> {
        let lambda = Interpolant::new(self.evaluator, Kind::Lambda);
        let mut points = 0;
        let mut max_abs_off_f: f64 = 0.0;
        for j in 0..grid.angles {
            let theta = Angle::wrapped(std::f64::consts::TAU * j as f64 / grid.angles as f64);
            let value = lambda.eval(DiskPoint::boundary(theta))?;
            if !value.at_f {
                points += 1;
                max_abs_off_f = max_abs_off_f.max(value.value.norm());
            }
        }
        let f_points = set.certified_points(64);
        let mut min_abs_on_f = f64::INFINITY;
        for &theta in &f_points {
            min_abs_on_f = min_abs_on_f.min(lambda.eval(DiskPoint::boundary(theta))?.value.norm());
        }
        Ok(LambdaReport {
            points,
            max_abs_off_f,
            min_margin: 1.0 - max_abs_off_f,
            f_points: f_points.len(),
            min_abs_on_f,
        })
    }

    /// Writes `r, theta, re, im, abs, at_F_flag` rows over `grid`.
    pub fn write_grid_csv<W: Write>(&self, grid: &GridSpec, out: W) -> Result<()> {
        grid.validate()?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["r", "theta", "re", "im", "abs", "at_F_flag"]).map_err(csv_error)?;
        for z in grid.points() {
            let v = self.eval(z)?;
            w.write_record([
                z.r().to_string(),
                z.theta().radians().to_string(),
                v.value.re.to_string(),
                v.value.im.to_string(),
                v.value.norm().to_string(),
                u8::from(v.at_f).to_string(),
            ])
            .map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }
}
