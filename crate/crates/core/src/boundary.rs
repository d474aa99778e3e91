//! Declarative descriptions of closed, measure-zero subsets of the circle.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{reduce, Angle, Arc, GEOM_TOLERANCE};

/// Generation depth at which Cantor intervals are resolved below any
/// meaningful double-precision scale.
const RESOLUTION_FLOOR: f64 = 1e-17;
const MAX_RESOLVED_GENERATION: usize = 256;

/// A closed subset `F` of the unit circle with Lebesgue measure zero.
#[derive(Clone, Debug, PartialEq)]
pub enum BoundarySet {
    Finite(FinitePoints),
    Cantor(CantorSet),
    Union(Vec<BoundarySet>),
}

/// Finitely many distinct points, sorted by angle.
#[derive(Clone, Debug, PartialEq)]
pub struct FinitePoints {
    points: Vec<Angle>,
}

impl FinitePoints {
    pub fn new(angles: &[f64]) -> Result<FinitePoints> {
        if angles.is_empty() {
            return Err(Error::Validation("finite set has no angles".into()));
        }
        let mut points = angles
            .iter()
            .map(|&t| reduce(t).map_err(|e| Error::Validation(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        points.sort_by(|a, b| a.radians().total_cmp(&b.radians()));
        let n = points.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if i != j && points[i].distance(points[j]) <= GEOM_TOLERANCE {
                return Err(Error::Validation(format!(
                    "angles {} and {} coincide",
                    points[i], points[j]
                )));
            }
        }
        Ok(FinitePoints { points })
    }

    pub fn points(&self) -> &[Angle] {
        &self.points
    }

    pub fn distance(&self, theta: Angle) -> f64 {
        let idx = self.points.partition_point(|p| p.radians() <= theta.radians());
        let n = self.points.len();
        let before = self.points[(idx + n - 1) % n];
        let after = self.points[idx % n];
        theta.distance(before).min(theta.distance(after))
    }

    fn hull_in(&self, arc: &Arc) -> Option<(f64, f64)> {
        let mut hull: Option<(f64, f64)> = None;
        for p in self.points.iter().filter(|p| arc.contains(**p)) {
            let off = arc.offset_of(*p);
            hull = Some(match hull {
                None => (off, off),
                Some((lo, hi)) => (lo.min(off), hi.max(off)),
            });
        }
        hull
    }
}

/// A symmetric Cantor-type set inside a closed base arc.
///
/// Generation `g` consists of `2^g` closed intervals of common length `ℓ_g`;
/// each interval of generation `g - 1` loses an open middle portion of
/// relative size `ρ_g`. The ratio list is used in order and its last entry
/// repeats indefinitely, so the remaining length `2^g ℓ_g` always tends to
/// zero. `max_generation` caps how deep a cover may descend.
#[derive(Clone, Debug, PartialEq)]
pub struct CantorSet {
    base: Arc,
    ratios: Vec<f64>,
    max_generation: u32,
    lengths: Vec<f64>,
}

impl CantorSet {
    pub fn new(start: f64, length: f64, ratios: Vec<f64>, max_generation: u32) -> Result<CantorSet> {
        let invalid = |m: String| Error::Validation(m);
        if !(length.is_finite() && length > 0.0 && length < TAU) {
            return Err(invalid(format!("cantor base length {length} outside (0, 2π)")));
        }
        let base = Arc::closed(start, length).map_err(|e| invalid(e.to_string()))?;
        if ratios.is_empty() {
            return Err(invalid("cantor ratio schedule is empty".into()));
        }
        if let Some(r) = ratios.iter().find(|r| !(r.is_finite() && **r > 0.0 && **r < 1.0)) {
            return Err(invalid(format!("cantor removal ratio {r} outside (0, 1)")));
        }
        if max_generation == 0 {
            return Err(invalid("cantor max_generation must be at least 1".into()));
        }
        let mut lengths = vec![length];
        while lengths.len() < MAX_RESOLVED_GENERATION {
            let g = lengths.len();
            let prev = lengths[g - 1];
            if prev < RESOLUTION_FLOOR {
                break;
            }
            let rho = ratios[(g - 1).min(ratios.len() - 1)];
            lengths.push(prev * (1.0 - rho) * 0.5);
        }
        Ok(CantorSet {
            base,
            ratios,
            max_generation,
            lengths,
        })
    }

    pub fn base(&self) -> &Arc {
        &self.base
    }

    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    pub fn max_generation(&self) -> u32 {
        self.max_generation
    }

    /// Removal ratio applied when passing from generation `g - 1` to `g`.
    pub fn ratio(&self, g: usize) -> f64 {
        assert!(g >= 1);
        self.ratios[(g - 1).min(self.ratios.len() - 1)]
    }

    /// Common length of the generation-`g` intervals.
    pub fn interval_length(&self, g: usize) -> f64 {
        if g < self.lengths.len() {
            return self.lengths[g];
        }
        let mut len = *self.lengths.last().expect("nonempty");
        for k in self.lengths.len()..=g {
            len *= (1.0 - self.ratio(k)) * 0.5;
        }
        len
    }

    /// Total length `2^g ℓ_g` of the generation-`g` skeleton.
    pub fn remaining_length(&self, g: usize) -> f64 {
        self.interval_length(g) * 2f64.powi(g as i32)
    }

    /// Width of the gap removed between two sibling intervals of generation `g`.
    pub fn gap(&self, g: usize) -> f64 {
        assert!(g >= 1);
        self.ratio(g) * self.interval_length(g - 1)
    }

    /// Smallest gap between any two intervals of generation `g`.
    pub fn min_gap_through(&self, g: usize) -> f64 {
        (1..=g).map(|k| self.gap(k)).fold(f64::INFINITY, f64::min)
    }

    /// Smallest generation whose remaining length is below `budget / 2`.
    pub fn generation_for_budget(&self, budget: f64) -> usize {
        let mut g = 0;
        while self.remaining_length(g) >= 0.5 * budget {
            g += 1;
        }
        g
    }

    /// Left endpoints of the generation-`g` intervals, as offsets from the
    /// base start, in increasing order.
    pub fn skeleton(&self, g: usize) -> Vec<f64> {
        let mut offsets = vec![0.0; 1usize << g];
        for k in 1..=g {
            let shift = self.interval_length(k - 1) - self.interval_length(k);
            let n = 1usize << (k - 1);
            for i in (0..n).rev() {
                let o = offsets[i];
                offsets[2 * i + 1] = o + shift;
                offsets[2 * i] = o;
            }
        }
        offsets
    }

    pub fn distance(&self, theta: Angle) -> f64 {
        let x = theta.offset_from(self.base.start());
        if x > self.lengths[0] {
            return theta
                .distance(self.base.start())
                .min(theta.distance(self.base.end()));
        }
        let mut a = 0.0;
        for g in 0..self.lengths.len() - 1 {
            let len = self.lengths[g];
            let child = self.lengths[g + 1];
            let gap_lo = a + child;
            let gap_hi = a + len - child;
            if x >= gap_hi {
                a = gap_hi;
            } else if x > gap_lo {
                return (x - gap_lo).min(gap_hi - x);
            }
        }
        let len = *self.lengths.last().expect("nonempty");
        (x - a).min(a + len - x).max(0.0)
    }

    /// Generation from which no skeleton interval contains the base-frame
    /// point `x`; `None` when `x` is (to resolution) a point of the set.
    fn separation_generation(&self, x: f64) -> Option<usize> {
        if x > self.lengths[0] {
            return Some(0);
        }
        let mut a = 0.0;
        for g in 0..self.lengths.len() - 1 {
            let len = self.lengths[g];
            let child = self.lengths[g + 1];
            let gap_lo = a + child;
            let gap_hi = a + len - child;
            if x >= gap_hi {
                a = gap_hi;
            } else if x > gap_lo {
                return Some(g + 1);
            }
        }
        None
    }

    /// Generation from which no skeleton interval contains angle zero.
    pub fn zero_separation_generation(&self) -> Option<usize> {
        self.separation_generation(Angle::ZERO.offset_from(self.base.start()))
    }

    fn first_in(&self, a: f64, g: usize, lo: f64, hi: f64) -> Option<f64> {
        let b = a + self.lengths[g];
        if b < lo || a > hi {
            return None;
        }
        if a >= lo {
            return Some(a);
        }
        if g + 1 >= self.lengths.len() {
            return Some(b.min(hi).max(lo));
        }
        let child = self.lengths[g + 1];
        self.first_in(a, g + 1, lo, hi)
            .or_else(|| self.first_in(b - child, g + 1, lo, hi))
    }

    fn last_in(&self, a: f64, g: usize, lo: f64, hi: f64) -> Option<f64> {
        let b = a + self.lengths[g];
        if b < lo || a > hi {
            return None;
        }
        if b <= hi {
            return Some(b);
        }
        if g + 1 >= self.lengths.len() {
            return Some(a.max(lo).min(hi));
        }
        let child = self.lengths[g + 1];
        self.last_in(b - child, g + 1, lo, hi)
            .or_else(|| self.last_in(a, g + 1, lo, hi))
    }

    fn hull_in(&self, arc: &Arc) -> Option<(f64, f64)> {
        let d = arc.start().offset_from(self.base.start());
        let len0 = self.lengths[0];
        let mut hull: Option<(f64, f64)> = None;
        for shift in [0.0, TAU] {
            let lo = d - shift;
            let hi = lo + arc.length();
            if hi < 0.0 || lo > len0 {
                continue;
            }
            let (first, last) = (
                self.first_in(0.0, 0, lo.max(0.0), hi.min(len0)),
                self.last_in(0.0, 0, lo.max(0.0), hi.min(len0)),
            );
            if let (Some(f), Some(l)) = (first, last) {
                let (f, l) = (f - lo, l - lo);
                hull = Some(match hull {
                    None => (f, l),
                    Some((a, b)) => (a.min(f), b.max(l)),
                });
            }
        }
        hull
    }

    /// Endpoints of the generation-`g` intervals; all of them lie in the set.
    pub fn endpoints(&self, g: usize) -> Vec<Angle> {
        let len = self.interval_length(g);
        let s = self.base.start();
        self.skeleton(g)
            .into_iter()
            .flat_map(|o| [s.rotate(o), s.rotate(o + len)])
            .collect()
    }
}

impl BoundarySet {
    pub fn finite(angles: &[f64]) -> Result<BoundarySet> {
        Ok(BoundarySet::Finite(FinitePoints::new(angles)?))
    }

    pub fn cantor(start: f64, length: f64, ratios: Vec<f64>, max_generation: u32) -> Result<BoundarySet> {
        Ok(BoundarySet::Cantor(CantorSet::new(
            start,
            length,
            ratios,
            max_generation,
        )?))
    }

    /// The empty set, represented as a union of no parts.
    pub fn empty() -> BoundarySet {
        BoundarySet::Union(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.leaves().is_empty()
    }

    /// Finite and Cantor components, with nested unions flattened.
    pub fn leaves(&self) -> Vec<&BoundarySet> {
        match self {
            BoundarySet::Union(parts) => parts.iter().flat_map(|p| p.leaves()).collect(),
            other => vec![other],
        }
    }

    /// Geodesic distance from `theta` to the set (`+∞` for the empty set).
    pub fn distance(&self, theta: Angle) -> f64 {
        match self {
            BoundarySet::Finite(f) => f.distance(theta),
            BoundarySet::Cantor(c) => c.distance(theta),
            BoundarySet::Union(parts) => parts
                .iter()
                .map(|p| p.distance(theta))
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// Membership up to the geometric tie tolerance.
    pub fn contains(&self, theta: Angle) -> bool {
        self.distance(theta) <= GEOM_TOLERANCE
    }

    /// Offsets (from the arc start) of the first and last points of the set
    /// inside `arc`, or `None` if the arc misses the set.
    pub fn hull_in(&self, arc: &Arc) -> Option<(f64, f64)> {
        match self {
            BoundarySet::Finite(f) => f.hull_in(arc),
            BoundarySet::Cantor(c) => c.hull_in(arc),
            BoundarySet::Union(parts) => parts
                .iter()
                .filter_map(|p| p.hull_in(arc))
                .reduce(|(a, b), (c, d)| (a.min(c), b.max(d))),
        }
    }

    /// A finite sample of points known to lie in the set. Cantor parts
    /// contribute interval endpoints of the deepest generation whose
    /// endpoint count stays within `per_part`.
    pub fn certified_points(&self, per_part: usize) -> Vec<Angle> {
        let mut out: Vec<Angle> = Vec::new();
        for leaf in self.leaves() {
            match leaf {
                BoundarySet::Finite(f) => out.extend_from_slice(f.points()),
                BoundarySet::Cantor(c) => {
                    let mut g = 0;
                    while g < c.max_generation() as usize && (4usize << g) <= per_part.max(2) {
                        g += 1;
                    }
                    out.extend(c.endpoints(g));
                }
                BoundarySet::Union(_) => unreachable!("leaves are flattened"),
            }
        }
        out.sort_by(|a, b| a.radians().total_cmp(&b.radians()));
        out.dedup_by(|a, b| a.distance(*b) <= GEOM_TOLERANCE);
        out
    }

    pub fn from_json(text: &str) -> Result<BoundarySet> {
        let doc: BoundarySetDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.to_set()
    }

    pub fn to_doc(&self) -> BoundarySetDoc {
        match self {
            BoundarySet::Finite(f) => BoundarySetDoc::Finite {
                angles: f.points().iter().map(|p| Number::from(p.radians())).collect(),
            },
            BoundarySet::Cantor(c) => BoundarySetDoc::Cantor {
                base: [
                    Number::from(c.base().start().radians()),
                    Number::from(c.base().length()),
                ],
                ratios: c.ratios().iter().map(|r| Number::from(*r)).collect(),
                max_generation: c.max_generation(),
            },
            BoundarySet::Union(parts) => BoundarySetDoc::Union {
                parts: parts.iter().map(BoundarySet::to_doc).collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("documents always serialize")
    }
}

/// A real number in a document: a decimal string or a bare JSON number.
/// Serialized as the shortest round-tripping decimal string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Text(String),
    Value(f64),
}

impl From<f64> for Number {
    fn from(x: f64) -> Number {
        Number::Text(format!("{x}"))
    }
}

impl Number {
    pub fn value(&self) -> Result<f64> {
        match self {
            Number::Value(v) => Ok(*v),
            Number::Text(s) => s
                .trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("`{s}` is not a decimal number"))),
        }
    }
}

/// Wire form of a [`BoundarySet`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BoundarySetDoc {
    Finite {
        angles: Vec<Number>,
    },
    Cantor {
        base: [Number; 2],
        ratios: Vec<Number>,
        max_generation: u32,
    },
    Union {
        parts: Vec<BoundarySetDoc>,
    },
}

impl BoundarySetDoc {
    /// Converts to a validated set. Malformed numbers are parse errors;
    /// everything else is a validation error.
    pub fn to_set(&self) -> Result<BoundarySet> {
        match self {
            BoundarySetDoc::Finite { angles } => {
                let values = angles.iter().map(Number::value).collect::<Result<Vec<_>>>()?;
                BoundarySet::finite(&values)
            }
            BoundarySetDoc::Cantor {
                base,
                ratios,
                max_generation,
            } => {
                let start = base[0].value()?;
                let length = base[1].value()?;
                let ratios = ratios.iter().map(Number::value).collect::<Result<Vec<_>>>()?;
                BoundarySet::cantor(start, length, ratios, *max_generation)
            }
            BoundarySetDoc::Union { parts } => Ok(BoundarySet::Union(
                parts.iter().map(|p| p.to_set()).collect::<Result<Vec<_>>>()?,
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn middle_thirds() -> CantorSet {
        CantorSet::new(0.0, PI / 2.0, vec![1.0 / 3.0], 30).unwrap()
    }

    #[test]
    fn finite_rejects_empty_and_duplicates() {
        assert!(matches!(FinitePoints::new(&[]), Err(Error::Validation(_))));
        assert!(matches!(
            FinitePoints::new(&[0.0, TAU]),
            Err(Error::Validation(_))
        ));
        assert!(FinitePoints::new(&[0.0, 1e-9]).is_ok());
    }

    #[test]
    fn cantor_validation() {
        assert!(CantorSet::new(0.0, 1.0, vec![], 5).is_err());
        assert!(CantorSet::new(0.0, 1.0, vec![1.0], 5).is_err());
        assert!(CantorSet::new(0.0, 1.0, vec![0.5], 0).is_err());
        assert!(CantorSet::new(0.0, TAU, vec![0.5], 3).is_err());
    }

    #[test]
    fn skeleton_is_sorted_and_sized() {
        let c = middle_thirds();
        let s = c.skeleton(5);
        assert_eq!(s.len(), 32);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        let len = c.interval_length(5);
        assert!((s[31] + len - PI / 2.0).abs() < 1e-14);
        assert!((c.remaining_length(5) - (PI / 2.0) * (2.0f64 / 3.0).powi(5)).abs() < 1e-14);
    }

    #[test]
    fn cantor_distance() {
        let c = middle_thirds();
        let l = PI / 2.0;
        // Middle of the first removed gap.
        let d = c.distance(Angle::new(l / 2.0).unwrap());
        assert!((d - l / 6.0).abs() < 1e-14);
        assert_eq!(c.distance(Angle::new(l / 3.0).unwrap()), 0.0);
        let outside = c.distance(Angle::new(PI).unwrap());
        assert!((outside - PI / 2.0).abs() < 1e-14);
        for p in c.endpoints(6) {
            assert!(c.distance(p) < 1e-15);
        }
    }

    #[test]
    fn cantor_hull_query() {
        let c = middle_thirds();
        let l = PI / 2.0;
        // An arc covering the middle gap and a little of each side.
        let arc = Arc::open(l / 3.0 - 0.01, l / 3.0 + 0.02).unwrap();
        let (lo, hi) = c.hull_in(&arc).unwrap();
        assert!(lo > 0.0 && lo <= 0.01);
        assert!(c.distance(arc.point_at(lo)) < 1e-15);
        assert!(c.distance(arc.point_at(lo - 1e-4)) > 0.0);
                assert!(hi > l / 3.0 + 0.01 && hi < l / 3.0 + 0.02);
        assert!(c.distance(arc.point_at(hi)) < 1e-15);
        assert!(c.distance(arc.point_at(hi + 1e-4)) > 0.0);
        let miss = Arc::open(l * 0.4, l * 0.2).unwrap();
        assert!(c.hull_in(&miss).is_none());
    }

    #[test]
    fn seam_crossing_cantor_hull() {
        let c = CantorSet::new(TAU - 0.5, 1.0, vec![0.5], 20).unwrap();
        let arc = Arc::open(TAU - 0.1, 0.5).unwrap();
        // Right half of the base is [0.25, 0.5] past the seam, i.e. offset 0.35.
        let (lo, hi) = c.hull_in(&arc).unwrap();
        assert!((lo - 0.35).abs() < 1e-12);
        assert!(hi <= 0.5 && hi > lo);
        assert_eq!(c.zero_separation_generation(), Some(1));
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let text = r#"{"type":"union","parts":[
            {"type":"finite","angles":["0","3.141592653589793"]},
            {"type":"cantor","base":[1.0,"0.5"],"ratios":["0.3333333333333333"],"max_generation":12}
        ]}"#;
        let set = BoundarySet::from_json(text).unwrap();
        assert_eq!(set.leaves().len(), 2);
        let again = BoundarySet::from_json(&set.to_json()).unwrap();
        assert_eq!(set, again);
        assert!(matches!(BoundarySet::from_json("{"), Err(Error::Parse(_))));
        assert!(matches!(
            BoundarySet::from_json(r#"{"type":"finite","angles":["abc"]}"#),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            BoundarySet::from_json(r#"{"type":"finite","angles":[]}"#),
            Err(Error::Validation(_))
        ));
        assert!(BoundarySet::from_json(r#"{"type":"union","parts":[]}"#)
            .unwrap()
            .is_empty());
    }
}
