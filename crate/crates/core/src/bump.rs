//! C¹ bump functions built from half-cosine ramps, one per cover level, and
//! their truncated sum `φ^(L) = φ_1 + … + φ_L`.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::io::Write;
use std::sync::Arc as Shared;

use num_complex::Complex64;

use crate::cover::{Cell, CoverLevel, CoverTower};
use crate::error::{Error, Result};
use crate::geometry::{neumaier_sum, Angle, GEOM_TOLERANCE};

/// `(1 - cos(πx)) / 2` for `x ∈ [0, 1]`.
fn ramp(x: f64) -> f64 {
    0.5 * (1.0 - (PI * x).cos())
}

/// Derivative of `ramp(x / w)` with respect to the angle.
fn ramp_slope(x: f64, w: f64) -> f64 {
    0.5 * PI / w * (PI * x).sin()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegmentKind {
    PlateauZero,
    Rise,
    PlateauOne,
    Fall,
}

/// A piece of a bump over the closed arc `[start, start + width]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RampSegment {
    pub kind: SegmentKind,
    pub start: Angle,
    pub width: f64,
}

impl RampSegment {
    /// Value at offset `x ∈ [0, width]` from the segment start.
    pub fn value_at(&self, x: f64) -> f64 {
        match self.kind {
            SegmentKind::PlateauZero => 0.0,
            SegmentKind::PlateauOne => 1.0,
            SegmentKind::Rise => ramp(x / self.width),
            SegmentKind::Fall => ramp(1.0 - x / self.width),
        }
    }

    pub fn slope_at(&self, x: f64) -> f64 {
        match self.kind {
            SegmentKind::PlateauZero | SegmentKind::PlateauOne => 0.0,
            SegmentKind::Rise => ramp_slope(x / self.width, self.width),
            SegmentKind::Fall => -ramp_slope(1.0 - x / self.width, self.width),
        }
    }
}

/// One bump `φ_{n,m}`: zero off `I`, a rise across the gap before `J`, one
/// on `J`, and a fall across the gap after it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bump {
    start: f64,
    rise: f64,
    plateau: f64,
    fall: f64,
}

impl Bump {
    fn from_cell(cell: &Cell) -> Bump {
        Bump {
            start: cell.start().radians(),
            rise: cell.core_offset(),
            plateau: cell.core_length(),
            fall: cell.fall_width(),
        }
    }

    pub fn start(&self) -> Angle {
        Angle::wrapped(self.start)
    }

    pub fn rise_width(&self) -> f64 {
        self.rise
    }

    pub fn plateau_width(&self) -> f64 {
        self.plateau
    }

    pub fn fall_width(&self) -> f64 {
        self.fall
    }

    pub fn support_width(&self) -> f64 {
        self.rise + self.plateau + self.fall
    }

    pub fn segments(&self) -> [RampSegment; 3] {
        let s = self.start();
        [
            RampSegment {
                kind: SegmentKind::Rise,
                start: s,
                width: self.rise,
            },
            RampSegment {
                kind: SegmentKind::PlateauOne,
                start: s.rotate(self.rise),
                width: self.plateau,
            },
            RampSegment {
                kind: SegmentKind::Fall,
                start: s.rotate(self.rise + self.plateau),
                width: self.fall,
            },
        ]
    }

    /// Segment containing offset `x` from the bump start, and the offset
    /// within it. Offsets outside the support map to the zero plateau.
    fn piece(&self, x: f64) -> (SegmentKind, f64, f64) {
        let plateau_end = self.rise + self.plateau;
        if x <= 0.0 || x >= plateau_end + self.fall {
            (SegmentKind::PlateauZero, 0.0, 0.0)
        } else if x < self.rise {
            (SegmentKind::Rise, x, self.rise)
        } else if x <= plateau_end {
            (SegmentKind::PlateauOne, x - self.rise, self.plateau)
        } else {
            (SegmentKind::Fall, x - plateau_end, self.fall)
        }
    }

    pub fn value(&self, theta: Angle) -> f64 {
        let (kind, x, width) = self.piece(theta.offset_from(self.start()));
        RampSegment {
            kind,
            start: Angle::ZERO,
            width,
        }
        .value_at(x)
    }

    pub fn slope(&self, theta: Angle) -> f64 {
        let (kind, x, width) = self.piece(theta.offset_from(self.start()));
        RampSegment {
            kind,
            start: Angle::ZERO,
            width,
        }
        .slope_at(x)
    }

    /// `∫ φ_{n,m} dθ`: the plateau plus half of each ramp.
    pub fn integral(&self) -> f64 {
        self.plateau + 0.5 * (self.rise + self.fall)
    }

    /// Total variation of the second derivative, `2π²/w²` per ramp.
    pub fn second_derivative_variation(&self) -> f64 {
        2.0 * PI * PI * (self.rise.powi(-2) + self.fall.powi(-2))
    }

    /// `∫ φ_{n,m}(θ) e^{-ikθ} dθ` for `k = 1..=max_freq`, added into `out[k]`.
    fn accumulate_transform(&self, out: &mut [Complex64]) {
        let mut rise = PhaseRun::new(self.rise);
        let mut plateau = PhaseRun::new(self.plateau);
        let mut fall = PhaseRun::new(self.fall);
        let mut origin = PhaseRun::new(self.start);
        let w_rise = PI / self.rise;
        let w_fall = PI / self.fall;
        for (k, slot) in out.iter_mut().enumerate().skip(1) {
            let kf = k as f64;
            rise.advance(k);
            plateau.advance(k);
            fall.advance(k);
            origin.advance(k);
            let e_a = origin.phase();
            let e_b = e_a * rise.phase();
            let e_c = e_b * plateau.phase();
            let ik = Complex64::new(0.0, kf);
            let i_half = Complex64::new(0.0, 0.5);
            let up = (rise.one_minus() / (2.0 * ik)) - i_half * cosine_factor(kf, w_rise, self.rise, &rise);
            let flat = plateau.one_minus() / ik;
            let down = (fall.one_minus() / (2.0 * ik)) + i_half * cosine_factor(kf, w_fall, self.fall, &fall);
            *slot += e_a * up + e_b * flat + e_c * down;
        }
    }
}

/// `S = k (1 + e^{-ikw}) / (ω² - k²)` with `ω = π / w`, the weight of the
/// cosine part of a ramp against `e^{-ikθ}`.
fn cosine_factor(k: f64, omega: f64, w: f64, run: &PhaseRun) -> Complex64 {
    let delta = k - omega;
    if delta.abs() >= 0.5 {
        return k * (2.0 - run.one_minus()) / ((omega - k) * (omega + k));
    }
    // Here 1 + e^{-ikw} = 1 - e^{-iδw}, evaluated without cancellation.
    let x = delta * w;
    let ratio = if delta.abs() < 1e-6 {
        let y = Complex64::new(0.0, x);
        Complex64::new(0.0, w) * (1.0 - y / 2.0 + y * y / 6.0 - y * y * y / 24.0)
    } else {
        let half = (0.5 * x).sin();
        Complex64::new(2.0 * half * half, x.sin()) / delta
    };
    -k / (omega + k) * ratio
}

/// Adds `e^{-iks}` to `out[k]` for `k ≥ 1`.
fn accumulate_phases(s: f64, out: &mut [Complex64]) {
    let step = Complex64::cis(-s);
    let mut phase = Complex64::new(1.0, 0.0);
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        phase = if k % REFRESH == 1 {
            Complex64::cis(-(k as f64) * s)
        } else {
            phase * step
        };
        *slot += phase;
    }
}

/// Tracks `e^{-ikw}` and `1 - e^{-ikw}` along `k = 1, 2, …` by recurrence,
/// refreshed from direct evaluation every few steps.
struct PhaseRun {
    width: f64,
    step: Complex64,
    step_one_minus: Complex64,
    phase: Complex64,
    one_minus: Complex64,
}

const REFRESH: usize = 32;

fn one_minus_cis(angle: f64) -> Complex64 {
    let half = (0.5 * angle).sin();
    Complex64::new(2.0 * half * half, angle.sin())
}

impl PhaseRun {
    fn new(width: f64) -> PhaseRun {
        PhaseRun {
            width,
            step: Complex64::cis(-width),
            step_one_minus: one_minus_cis(width),
            phase: Complex64::new(1.0, 0.0),
            one_minus: Complex64::new(0.0, 0.0),
        }
    }

    fn advance(&mut self, k: usize) {
        if k % REFRESH == 1 {
            let angle = k as f64 * self.width;
            self.phase = Complex64::cis(-angle);
            self.one_minus = one_minus_cis(angle);
        } else {
            self.one_minus = self.one_minus * self.step + self.step_one_minus;
            self.phase *= self.step;
        }
    }

    fn phase(&self) -> Complex64 {
        self.phase
    }

    fn one_minus(&self) -> Complex64 {
        self.one_minus
    }
}

/// The bumps of one cover level; `φ_n` is their sum.
#[derive(Clone, Copy, Debug)]
pub struct BumpLevel<'a> {
    level: &'a CoverLevel,
}

impl<'a> BumpLevel<'a> {
    /// Checks that every gap between a core and its outer arc has positive
    /// width, so each ramp is well defined.
    pub fn from_cover(level: &'a CoverLevel) -> Result<BumpLevel<'a>> {
        for (m, c) in level.cells().iter().enumerate() {
            let reason = if !(c.core_offset() > 0.0) {
                Some("rise gap has zero width")
            } else if !(c.fall_width() > 0.0) {
                Some("fall gap has zero width")
            } else if !(c.core_length() >= 0.0) {
                Some("core has negative length")
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(Error::MalformedCover {
                    level: level.n(),
                    arc: m,
                    reason: reason.into(),
                });
            }
        }
        Ok(BumpLevel { level })
    }

    pub fn n(&self) -> usize {
        self.level.n()
    }

    pub fn len(&self) -> usize {
        self.level.len()
    }

    pub fn is_empty(&self) -> bool {
        self.level.is_empty()
    }

    pub fn bump(&self, m: usize) -> Bump {
        Bump::from_cell(&self.level.cells()[m])
    }

    pub fn bumps(&self) -> impl ExactSizeIterator<Item = Bump> + 'a {
        self.level.cells().iter().map(Bump::from_cell)
    }

    pub fn segment_count(&self) -> usize {
        3 * self.len()
    }

    /// `φ_n(θ)`.
    pub fn value(&self, theta: Angle) -> f64 {
        self.level
            .locate(theta)
            .map_or(0.0, |m| self.bump(m).value(theta))
    }

    /// `φ_n'(θ)`.
    pub fn slope(&self, theta: Angle) -> f64 {
        self.level
            .locate(theta)
            .map_or(0.0, |m| self.bump(m).slope(theta))
    }

    /// `∫_0^{2π} φ_n dθ` in closed form.
    pub fn integral(&self) -> f64 {
        neumaier_sum(self.bumps().map(|b| b.integral()))
    }

    /// `c_k(φ_n) = (1/2π) ∫ φ_n e^{-ikθ} dθ` for `k = 0..=max_freq`.
    pub fn fourier_coefficients(&self, max_freq: usize) -> Vec<Complex64> {
        // Bumps of one shape differ only by the factor e^{-iks}: transform
        // each shape once and multiply by the sum of its phases.
        let mut index: HashMap<(u64, u64, u64), usize> = HashMap::new();
        let mut groups: Vec<(Bump, Vec<f64>)> = Vec::new();
        for b in self.bumps() {
            let key = (b.rise.to_bits(), b.plateau.to_bits(), b.fall.to_bits());
            let g = *index.entry(key).or_insert_with(|| {
                groups.push((Bump { start: 0.0, ..b }, Vec::new()));
                groups.len() - 1
            });
            groups[g].1.push(b.start);
        }
        let mut out = vec![Complex64::new(0.0, 0.0); max_freq + 1];
        let mut shape = vec![Complex64::new(0.0, 0.0); max_freq + 1];
        let mut phases = vec![Complex64::new(0.0, 0.0); max_freq + 1];
        for (b, starts) in &groups {
            shape.fill(Complex64::new(0.0, 0.0));
            b.accumulate_transform(&mut shape);
            phases.fill(Complex64::new(0.0, 0.0));
            for &s in starts {
                accumulate_phases(s, &mut phases);
            }
            for k in 1..=max_freq {
                out[k] += shape[k] * phases[k];
            }
        }
        out[0] = Complex64::new(self.integral(), 0.0);
        for c in &mut out {
            *c /= TAU;
        }
        out
    }

    pub fn second_derivative_variation(&self) -> f64 {
        self.bumps().map(|b| b.second_derivative_variation()).sum()
    }
}

/// `φ^(L) = Σ_{n ≤ L} φ_n` over a cover tower.
#[derive(Clone, Debug)]
pub struct BumpSeries {
    tower: Option<Shared<CoverTower>>,
}

impl BumpSeries {
    pub fn from_tower(tower: Shared<CoverTower>) -> Result<BumpSeries> {
        for level in tower.levels() {
            BumpLevel::from_cover(level)?;
        }
        Ok(BumpSeries { tower: Some(tower) })
    }

    /// The series with no levels, `φ ≡ 0`.
    pub fn empty() -> BumpSeries {
        BumpSeries { tower: None }
    }

    pub fn tower(&self) -> Option<&CoverTower> {
        self.tower.as_deref()
    }

    pub fn depth(&self) -> usize {
        self.tower.as_ref().map_or(0, |t| t.depth())
    }

    /// Level `n`, counted from 1.
    pub fn level(&self, n: usize) -> BumpLevel<'_> {
        let tower = self.tower.as_ref().expect("series has levels");
        BumpLevel {
            level: tower.level(n),
        }
    }

    pub fn levels(&self) -> impl Iterator<Item = BumpLevel<'_>> {
        self.tower
            .iter()
            .flat_map(|t| t.levels().iter().map(|level| BumpLevel { level }))
    }

    /// `φ^(L)(θ)`. Levels past the first one whose cover misses `θ` are
    /// skipped, since the covers are nested.
    pub fn eval_phi(&self, theta: Angle) -> f64 {
        let mut sum = 0.0;
        for level in self.levels() {
            match level.level.locate(theta) {
                Some(m) => sum += level.bump(m).value(theta),
                None => break,
            }
        }
        sum
    }

    /// `φ^(L)'(θ)`; refused within the tie tolerance of the boundary set.
    pub fn eval_phi_derivative(&self, theta: Angle) -> Result<f64> {
        if let Some(t) = &self.tower {
            let d = t.boundary_set().distance(theta);
            if d < GEOM_TOLERANCE {
                return Err(Error::Proximity {
                    theta: theta.radians(),
                    distance: d,
                });
            }
        }
        let mut sum = 0.0;
        for level in self.levels() {
            match level.level.locate(theta) {
                Some(m) => sum += level.bump(m).slope(theta),
                None => break,
            }
        }
        Ok(sum)
    }

    /// `Σ_{n ≤ L} ∫ φ_n dθ`.
    pub fn integral_phi(&self) -> f64 {
        neumaier_sum(self.levels().map(|l| l.integral()))
    }

    /// Per-level coefficients `c_k(φ_n)`, `k = 0..=max_freq`.
    pub fn level_coefficients(&self, max_freq: usize) -> Vec<Vec<Complex64>> {
        self.levels().map(|l| l.fourier_coefficients(max_freq)).collect()
    }

    /// `c_k(φ^(L))`, `k = 0..=max_freq`.
    pub fn fourier_coefficients(&self, max_freq: usize) -> Vec<Complex64> {
        sum_levels(&self.level_coefficients(max_freq), max_freq)
    }

    /// `V = TV(φ^(L)'')`, so that `|c_k| ≤ V / (2π k³)` for `k ≥ 1`.
    pub fn second_derivative_variation(&self) -> f64 {
        self.levels().map(|l| l.second_derivative_variation()).sum()
    }

    /// Bound on `|c_k|` for `k ≥ 1`.
    pub fn coefficient_bound(&self, k: usize) -> f64 {
        self.second_derivative_variation() / (TAU * (k as f64).powi(3))
    }

    /// Bound on `2 Σ_{k > K} |c_k|²`, the Parseval tail past `K`.
    pub fn parseval_tail_bound(&self, max_freq: usize) -> f64 {
        let v = self.second_derivative_variation() / TAU;
        2.0 * v * v / (5.0 * (max_freq as f64).powi(5))
    }

    /// `(1/2π) ∫ |φ^(L)|² dθ`, integrated exactly on each interval between
    /// consecutive segment endpoints of all levels.
    pub fn mean_square(&self) -> f64 {
        let mut cuts: Vec<f64> = vec![0.0, TAU];
        for level in self.levels() {
            for b in level.bumps() {
                for off in [0.0, b.rise, b.rise + b.plateau, b.support_width()] {
                    cuts.push(Angle::wrapped(b.start + off).radians());
                }
            }
        }
        cuts.sort_by(f64::total_cmp);
        cuts.dedup();
        let mut total = Vec::with_capacity(cuts.len());
        let mut terms: Vec<CosTerm> = Vec::new();
        for w in cuts.windows(2) {
            let (x0, x1) = (w[0], w[1]);
            if x1 - x0 <= 0.0 {
                continue;
            }
            let mid = Angle::wrapped(0.5 * (x0 + x1));
            terms.clear();
            for level in self.levels() {
                let Some(m) = level.level.locate(mid) else { break };
                let b = level.bump(m);
                let off = mid.offset_from(b.start());
                let origin = mid.radians() - off;
                terms.push(CosTerm::of_piece(&b, b.piece(off).0, origin));
            }
            total.push(square_integral(&terms, x0, x1));
        }
        neumaier_sum(total.into_iter()) / TAU
    }

    /// Writes `k, re(c_k), im(c_k)` rows with shortest round-trip decimals.
    pub fn write_coefficients_csv<W: Write>(&self, max_freq: usize, out: W) -> Result<()> {
        write_coefficients_csv(&self.fourier_coefficients(max_freq), out)
    }
}

/// Sums per-level coefficient vectors in level order.
pub(crate) fn sum_levels(levels: &[Vec<Complex64>], max_freq: usize) -> Vec<Complex64> {
    let mut total = vec![Complex64::new(0.0, 0.0); max_freq + 1];
    for level in levels {
        for (t, c) in total.iter_mut().zip(level) {
            *t += c;
        }
    }
    total
}

pub fn write_coefficients_csv<W: Write>(coeffs: &[Complex64], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.into());
    w.write_record(["k", "re", "im"]).map_err(io)?;
    for (k, c) in coeffs.iter().enumerate() {
        w.write_record([k.to_string(), c.re.to_string(), c.im.to_string()])
            .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// `a + b cos(ω θ + ψ)`.
#[derive(Clone, Copy, Debug)]
struct CosTerm {
    a: f64,
    b: f64,
    omega: f64,
    psi: f64,
}

impl CosTerm {
    /// The piece `kind` of bump `b`, whose start sits at unwrapped `origin`.
    fn of_piece(b: &Bump, kind: SegmentKind, origin: f64) -> CosTerm {
        let constant = |a| CosTerm {
            a,
            b: 0.0,
            omega: 0.0,
            psi: 0.0,
        };
        match kind {
            SegmentKind::PlateauZero => constant(0.0),
            SegmentKind::PlateauOne => constant(1.0),
            SegmentKind::Rise => {
                let omega = PI / b.rise;
                CosTerm {
                    a: 0.5,
                    b: -0.5,
                    omega,
                    psi: -omega * origin,
                }
            }
            SegmentKind::Fall => {
                let omega = PI / b.fall;
                let fall_start = origin + b.rise + b.plateau;
                CosTerm {
                    a: 0.5,
                    b: 0.5,
                    omega,
                    psi: -omega * fall_start,
                }
            }
        }
    }
}

/// `∫_{x0}^{x1} cos(νθ + ψ) dθ`, stable for small `ν`.
fn cos_integral(nu: f64, psi: f64, x0: f64, x1: f64) -> f64 {
    let h = 0.5 * (x1 - x0);
    let m = 0.5 * (x0 + x1);
    let t = nu * h;
    let sinc = if t.abs() < 1e-8 { 1.0 - t * t / 6.0 } else { t.sin() / t };
    2.0 * h * sinc * (nu * m + psi).cos()
}

/// `∫_{x0}^{x1} (Σ terms)² dθ`.
fn square_integral(terms: &[CosTerm], x0: f64, x1: f64) -> f64 {
    let a: f64 = terms.iter().map(|t| t.a).sum();
    let mut s = a * a * (x1 - x0);
    for t in terms.iter().filter(|t| t.b != 0.0) {
        s += 2.0 * a * t.b * cos_integral(t.omega, t.psi, x0, x1);
    }
    for (i, p) in terms.iter().enumerate().filter(|(_, t)| t.b != 0.0) {
        for q in terms[i..].iter().filter(|t| t.b != 0.0) {
            let weight = if std::ptr::eq(p, q) { 1.0 } else { 2.0 };
            let diff = cos_integral(p.omega - q.omega, p.psi - q.psi, x0, x1);
            let sum = cos_integral(p.omega + q.omega, p.psi + q.psi, x0, x1);
            s += weight * p.b * q.b * 0.5 * (diff + sum);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundarySet;
    use crate::cover::build_tower;
    use crate::geometry::Arc;

    fn example_bump() -> (CoverLevel, f64) {
        let outer = Arc::open(-0.125, 0.25).unwrap();
        let core = Arc::closed(-1.0 / 32.0, 1.0 / 16.0).unwrap();
        (CoverLevel::new_unchecked(1, vec![outer], vec![core]), 0.125 - 1.0 / 32.0)
    }

    fn series(angles: &[f64], depth: usize) -> BumpSeries {
        let set = BoundarySet::finite(angles).unwrap();
        BumpSeries::from_tower(Shared::new(build_tower(&set, depth).unwrap())).unwrap()
    }

    #[test]
    fn example_bump_values() {
        let (level, w) = example_bump();
        let bl = BumpLevel::from_cover(&level).unwrap();
        assert_eq!(bl.value(Angle::ZERO), 1.0);
        for edge in [0.125, -0.125] {
            let t = Angle::new(edge).unwrap();
            assert!(bl.value(t).abs() < 1e-15);
            assert!(bl.slope(t).abs() < 1e-12);
        }
        let mid = Angle::new(-0.125 + w / 2.0).unwrap();
        assert!((bl.value(mid) - 0.5).abs() < 1e-14);
        assert!((bl.slope(mid) - PI / (2.0 * w)).abs() < 1e-9);
        let junction = Angle::new(-1.0 / 32.0).unwrap();
        assert!(bl.slope(junction).abs() < 1e-12);
        assert!((bl.integral() - (1.0 / 16.0 + w)).abs() < 1e-15);
    }

    #[test]
    fn zero_width_gap_is_malformed() {
        let outer = Arc::open(0.0, 0.2).unwrap();
        let core = Arc::closed(0.0, 0.1).unwrap();
        let level = CoverLevel::new_unchecked(1, vec![outer], vec![core]);
        assert!(matches!(
            BumpLevel::from_cover(&level),
            Err(Error::MalformedCover { .. })
        ));
    }

    #[test]
    fn empty_series() {
        let s = BumpSeries::empty();
        assert_eq!(s.integral_phi(), 0.0);
        assert!(s.fourier_coefficients(5).iter().all(|c| c.norm() == 0.0));
        assert_eq!(s.eval_phi(Angle::ZERO), 0.0);
    }

    #[test]
    fn phi_on_boundary_equals_depth() {
        let s = series(&[0.0, 2.0], 7);
        assert_eq!(s.eval_phi(Angle::ZERO), 7.0);
        assert_eq!(s.eval_phi(Angle::new(2.0).unwrap()), 7.0);
        assert_eq!(s.eval_phi(Angle::new(PI + 1.0).unwrap()), 0.0);
        assert!(s.eval_phi_derivative(Angle::ZERO).is_err());
    }

    #[test]
    fn level_one_plateau_point() {
        let s = series(&[0.0], 2);
        // Level-1 core is [-r1/4, r1/4], inside the level-2 arc (-r1/2, r1/2).
        let r1 = 0.5 / 8.0;
        let t = Angle::new(0.2 * r1).unwrap();
        assert_eq!(s.level(1).value(t), 1.0);
        assert_eq!(s.eval_phi(t), 1.0 + s.level(2).value(t));
        let t = Angle::new(0.75 * r1).unwrap();
        assert_eq!(s.eval_phi(t), s.level(1).value(t));
        assert!(s.eval_phi(t) > 0.0 && s.eval_phi(t) < 1.0);
    }

    #[test]
    fn coefficient_zero_is_mean() {
        let s = series(&[0.5, 3.0], 4);
        let c = s.fourier_coefficients(3);
        assert!((c[0].re - s.integral_phi() / TAU).abs() < 1e-16);
    }

    #[test]
    fn symmetric_bump_has_real_coefficients() {
        let s = series(&[0.0], 3);
        for c in s.fourier_coefficients(50) {
            assert!(c.im.abs() < 1e-12, "{c}");
        }
    }

    #[test]
    fn resonant_frequency_matches_neighbours() {
        // Rise width π/5 makes k = 5 exactly resonant.
        let w = PI / 5.0;
        let outer = Arc::open(0.0, 2.0 * w + 0.3).unwrap();
        let core = Arc::closed(w, 0.3).unwrap();
        let level = CoverLevel::new_unchecked(1, vec![outer], vec![core]);
        let bl = BumpLevel::from_cover(&level).unwrap();
        let c = bl.fourier_coefficients(6);
        let brute = |k: usize| {
            let n = 200_000;
            let h = (2.0 * w + 0.3) / n as f64;
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                let t = (i as f64 + 0.5) * h;
                acc += bl.value(Angle::new(t).unwrap()) * Complex64::cis(-(k as f64) * t);
            }
            acc * h / TAU
        };
        for k in 4..=6 {
            assert!((c[k] - brute(k)).norm() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn mean_square_single_bump() {
        let (level, w) = example_bump();
        let tower = CoverTower::from_levels_unchecked(BoundarySet::finite(&[0.0]).unwrap(), vec![level]);
        let s = BumpSeries::from_tower(Shared::new(tower)).unwrap();
        // ∫ ramp² over a width-w ramp is 3w/8.
        let expected = (1.0 / 16.0 + 2.0 * 3.0 * w / 8.0) / TAU;
        assert!((s.mean_square() - expected).abs() < 1e-15);
    }
}
