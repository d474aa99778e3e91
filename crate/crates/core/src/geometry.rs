//! Angles, arcs and finite unions of arcs on the unit circle.
//!
//! Arcs are stored as `(start, length)` with `start` reduced into `[0, 2π)`,
//! so an arc that runs across the seam at angle zero needs no special case
//! in callers. Set operations work on a linearised view of each arc: an arc
//! crossing the seam becomes two [`Span`]s on `[0, 2π]`, and the pieces are
//! glued back together after the sweep.
//!
//! Endpoint comparisons treat two values closer than [`GEOM_TOLERANCE`] as
//! equal; at such a tie the open/closed flags decide.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt;

use crate::error::{Error, Result};

/// Tie tolerance for endpoint comparisons, in radians.
pub const GEOM_TOLERANCE: f64 = 1e-12;

/// Reduces a finite value into `[0, 2π)`.
pub(crate) fn wrap(theta: f64) -> f64 {
    if (0.0..TAU).contains(&theta) {
        return theta;
    }
    if (-TAU..0.0).contains(&theta) {
        let r = theta + TAU;
        return if r >= TAU { 0.0 } else { r };
    }
    let r = theta.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// An angle canonically reduced into `[0, 2π)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(theta: f64) -> Result<Angle> {
        reduce(theta)
    }

    /// Wraps a value the caller knows to be finite.
    pub(crate) fn wrapped(theta: f64) -> Angle {
        debug_assert!(theta.is_finite());
        Angle(wrap(theta))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Counter-clockwise offset from `origin` to `self`, in `[0, 2π)`.
    pub fn offset_from(self, origin: Angle) -> f64 {
        wrap(self.0 - origin.0)
    }

    /// Geodesic (shorter-way) distance between two angles, in `[0, π]`.
    pub fn distance(self, other: Angle) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(TAU - d)
    }

    pub fn rotate(self, delta: f64) -> Angle {
        Angle::wrapped(self.0 + delta)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Reduces `theta` modulo 2π into `[0, 2π)`.
pub fn reduce(theta: f64) -> Result<Angle> {
    if !theta.is_finite() {
        return Err(Error::Domain(format!("angle {theta} is not finite")));
    }
    Ok(Angle(wrap(theta)))
}

/// Geodesic distance from `theta` to the nearest of `points`.
pub fn distance_to_points(theta: Angle, points: &[Angle]) -> Result<f64> {
    points
        .iter()
        .map(|p| theta.distance(*p))
        .min_by(f64::total_cmp)
        .ok_or_else(|| Error::Domain("distance to an empty point set".into()))
}

/// An open or closed arc of the unit circle.
///
/// The same flag governs both endpoints. A length of `2π` denotes the full
/// circle (minus the start point, for an open arc).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    start: Angle,
    length: f64,
    closed: bool,
}

impl Arc {
    pub fn new(start: f64, length: f64, closed: bool) -> Result<Arc> {
        let start = reduce(start)?;
        if !(length.is_finite() && length > 0.0 && length <= TAU) {
            return Err(Error::Domain(format!(
                "arc length {length} outside (0, 2π]"
            )));
        }
        Ok(Arc {
            start,
            length,
            closed,
        })
    }

    pub fn open(start: f64, length: f64) -> Result<Arc> {
        Arc::new(start, length, false)
    }

    pub fn closed(start: f64, length: f64) -> Result<Arc> {
        Arc::new(start, length, true)
    }

    pub(crate) fn from_parts(start: Angle, length: f64, closed: bool) -> Arc {
        debug_assert!(length > 0.0 && length <= TAU, "bad arc length {length}");
        Arc {
            start,
            length,
            closed,
        }
    }

    pub fn start(&self) -> Angle {
        self.start
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn end(&self) -> Angle {
        Angle::wrapped(self.start.0 + self.length)
    }

    pub fn midpoint(&self) -> Angle {
        self.point_at(0.5 * self.length)
    }

    /// The point at counter-clockwise offset `offset` from the start.
    pub fn point_at(&self, offset: f64) -> Angle {
        Angle::wrapped(self.start.0 + offset)
    }

    pub fn crosses_seam(&self) -> bool {
        self.start.0 + self.length > TAU
    }

    /// Offset of `theta` from the arc start, in `[0, 2π)`.
    pub fn offset_of(&self, theta: Angle) -> f64 {
        theta.offset_from(self.start)
    }

    pub fn contains(&self, theta: Angle) -> bool {
        let off = self.offset_of(theta);
        if self.closed {
            off <= self.length
        } else {
            off > 0.0 && off < self.length
        }
    }

    pub fn closure(&self) -> Arc {
        Arc {
            closed: true,
            ..*self
        }
    }

    pub fn interior(&self) -> Arc {
        Arc {
            closed: false,
            ..*self
        }
    }

    /// Geodesic distance from `theta` to the closed arc.
    pub fn distance_to(&self, theta: Angle) -> f64 {
        if self.offset_of(theta) <= self.length {
            0.0
        } else {
            theta.distance(self.start).min(theta.distance(self.end()))
        }
    }

    /// Linear pieces of the arc on `[0, 2π]`: the piece starting at `start`,
    /// and for a seam-crossing arc the wrapped head `[0, end]`.
    pub(crate) fn spans(&self) -> (Span, Option<Span>) {
        let lo = self.start.0;
        let hi = lo + self.length;
        if hi > TAU {
            let head_hi = hi - TAU;
            (
                Span::new(lo, TAU, self.closed, true),
                Some(Span::new(0.0, head_hi, true, self.closed)),
            )
        } else {
            (Span::new(lo, hi, self.closed, self.closed), None)
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r) = if self.closed { ('[', ']') } else { ('(', ')') };
        write!(
            f,
            "{l}{}, {}+{}{r}",
            self.start.0,
            self.start.0,
            self.length
        )
    }
}

/// Membership test with the open/closed convention of `a`.
pub fn arc_contains(a: &Arc, theta: Angle) -> bool {
    a.contains(theta)
}

/// A linear interval on `[0, 2π]` with per-endpoint inclusion flags.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct Span {
    pub lo: f64,
    pub hi: f64,
    pub lo_in: bool,
    pub hi_in: bool,
}

impl Span {
    pub fn new(lo: f64, hi: f64, lo_in: bool, hi_in: bool) -> Span {
        Span {
            lo,
            hi,
            lo_in,
            hi_in,
        }
    }

    pub fn closure(self) -> Span {
        Span {
            lo_in: true,
            hi_in: true,
            ..self
        }
    }

    /// `self` starts no later than `other`.
    fn starts_before(&self, other: &Span) -> bool {
        if (self.lo - other.lo).abs() <= GEOM_TOLERANCE {
            self.lo_in || !other.lo_in
        } else {
            self.lo < other.lo
        }
    }

    /// `self` ends no earlier than `other`.
    fn ends_after(&self, other: &Span) -> bool {
        if (self.hi - other.hi).abs() <= GEOM_TOLERANCE {
            self.hi_in || !other.hi_in
        } else {
            self.hi > other.hi
        }
    }

    pub fn covers(&self, other: &Span) -> bool {
        self.starts_before(other) && self.ends_after(other)
    }
}

/// Sorts spans by left endpoint, included endpoints first on exact ties.
fn span_order(a: &Span, b: &Span) -> Ordering {
    a.lo.total_cmp(&b.lo).then(b.lo_in.cmp(&a.lo_in))
}

/// Union of spans already sorted by `span_order`.
fn union_sorted(spans: impl Iterator<Item = Span>) -> Vec<Span> {
    let mut out: Vec<Span> = Vec::new();
    for s in spans {
        let Some(cur) = out.last_mut() else {
            out.push(s);
            continue;
        };
        let touching = (s.lo - cur.hi).abs() <= GEOM_TOLERANCE;
        let overlapping = s.lo < cur.hi - GEOM_TOLERANCE;
        if overlapping || (touching && (cur.hi_in || s.lo_in)) {
            if (s.lo - cur.lo).abs() <= GEOM_TOLERANCE {
                cur.lo_in |= s.lo_in;
            }
            if (s.hi - cur.hi).abs() <= GEOM_TOLERANCE {
                cur.hi_in |= s.hi_in;
            } else if s.hi > cur.hi {
                cur.hi = s.hi;
                cur.hi_in = s.hi_in;
            }
        } else {
            out.push(s);
        }
    }
    out
}

/// Merges two sorted span streams into one sorted stream.
fn merge_streams<A, B>(a: A, b: B) -> impl Iterator<Item = Span>
where
    A: Iterator<Item = Span>,
    B: Iterator<Item = Span>,
{
    let mut a = a.peekable();
    let mut b = b.peekable();
    std::iter::from_fn(move || match (a.peek(), b.peek()) {
        (Some(x), Some(y)) => {
            if span_order(x, y) != Ordering::Greater {
                a.next()
            } else {
                b.next()
            }
        }
        (Some(_), None) => a.next(),
        (None, Some(_)) => b.next(),
        (None, None) => None,
    })
}

/// Intersection of two sorted streams of pairwise-disjoint spans.
fn intersect_streams(
    a: impl Iterator<Item = Span>,
    b: impl Iterator<Item = Span>,
) -> Vec<Span> {
    let mut a = a.peekable();
    let mut b = b.peekable();
    let mut out = Vec::new();
    while let (Some(x), Some(y)) = (a.peek().copied(), b.peek().copied()) {
        let (lo, lo_in) = if (x.lo - y.lo).abs() <= GEOM_TOLERANCE {
            (x.lo.max(y.lo), x.lo_in && y.lo_in)
        } else if x.lo > y.lo {
            (x.lo, x.lo_in)
        } else {
            (y.lo, y.lo_in)
        };
        let ends_tie = (x.hi - y.hi).abs() <= GEOM_TOLERANCE;
        let (hi, hi_in) = if ends_tie {
            (x.hi.min(y.hi), x.hi_in && y.hi_in)
        } else if x.hi < y.hi {
            (x.hi, x.hi_in)
        } else {
            (y.hi, y.hi_in)
        };
        if hi - lo > GEOM_TOLERANCE {
            out.push(Span::new(lo, hi, lo_in, hi_in));
        }
        if ends_tie {
            a.next();
            b.next();
        } else if x.hi < y.hi {
            a.next();
        } else {
            b.next();
        }
    }
    out
}

/// Whether every span of `sub` lies inside some span of `sup`. Both streams
/// must be sorted; `sup` must be pairwise disjoint.
pub(crate) fn spans_within(
    sub: impl Iterator<Item = Span>,
    sup: impl Iterator<Item = Span>,
) -> bool {
    let mut sup = sup.peekable();
    let mut cur = sup.next();
    for s in sub {
        loop {
            match cur {
                None => return false,
                Some(b) if b.hi < s.lo - GEOM_TOLERANCE => cur = sup.next(),
                Some(_) => break,
            }
        }
        let b = cur.expect("checked above");
        if b.covers(&s) {
            continue;
        }
        match sup.peek() {
            Some(nb) if nb.covers(&s) => cur = sup.next(),
            _ => return false,
        }
    }
    true
}

/// Sorted spans of `n` pairwise-disjoint arcs listed in cyclic order.
pub(crate) fn cyclic_spans<'a, F>(n: usize, at: F) -> impl Iterator<Item = Span> + 'a
where
    F: Fn(usize) -> Arc + 'a,
{
    let first = (1..n)
        .find(|&i| at(i).start.0 < at(i - 1).start.0)
        .unwrap_or(0);
    let head = (n > 0).then(|| at((first + n - 1) % n).spans().1).flatten();
    head.into_iter()
        .chain((0..n).map(move |i| at((first + i) % n).spans().0))
}

/// Glues spans touching the seam back into one arc and converts to arcs.
fn spans_to_arcs(mut spans: Vec<Span>) -> Result<Vec<Arc>> {
    if spans.is_empty() {
        return Ok(Vec::new());
    }
    let first = spans[0];
    let last = spans[spans.len() - 1];
    let at_zero = first.lo <= GEOM_TOLERANCE;
    let at_tau = last.hi >= TAU - GEOM_TOLERANCE;
    if spans.len() == 1 && at_zero && at_tau {
        return Ok(vec![Arc::from_parts(
            Angle::ZERO,
            TAU,
            first.lo_in || first.hi_in,
        )]);
    }
    if spans.len() >= 2 && at_zero && at_tau && (first.lo_in || last.hi_in) {
        let glued = Span::new(last.lo, TAU + first.hi, last.lo_in, first.hi_in);
        spans.pop();
        spans.remove(0);
        spans.push(glued);
    }
    spans
        .into_iter()
        .map(|s| {
            if s.lo_in != s.hi_in {
                return Err(Error::Domain(format!(
                    "set piece [{}, {}] has one open and one closed endpoint",
                    s.lo, s.hi
                )));
            }
            let length = (s.hi - s.lo).min(TAU);
            Ok(Arc::from_parts(Angle::wrapped(s.lo), length, s.lo_in))
        })
        .collect()
}

/// A finite union of pairwise-disjoint arcs, sorted by start, in maximal form.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ArcSet {
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn empty() -> ArcSet {
        ArcSet { arcs: Vec::new() }
    }

    /// Normalises arbitrary arcs into their union.
    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Result<ArcSet> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        if let Some(rot) = cyclic_rotation_if_separated(&arcs) {
            arcs.rotate_left(rot);
            return Ok(ArcSet { arcs });
        }
        let mut spans = Vec::with_capacity(arcs.len() + 1);
        for a in &arcs {
            let (main, head) = a.spans();
            spans.push(main);
            spans.extend(head);
        }
        spans.sort_by(span_order);
        let arcs = spans_to_arcs(union_sorted(spans.into_iter()))?;
        Ok(ArcSet::sorted(arcs))
    }

    /// Wraps arcs the caller guarantees are disjoint, maximal and sorted by start.
    pub(crate) fn from_sorted_unchecked(arcs: Vec<Arc>) -> ArcSet {
        ArcSet { arcs }
    }

    pub fn single(arc: Arc) -> ArcSet {
        ArcSet { arcs: vec![arc] }
    }

    fn sorted(mut arcs: Vec<Arc>) -> ArcSet {
        arcs.sort_by(|a, b| a.start.0.total_cmp(&b.start.0));
        ArcSet { arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Sum of arc lengths (compensated summation).
    pub fn total_length(&self) -> f64 {
        neumaier_sum(self.arcs.iter().map(|a| a.length))
    }

    /// Whether the exact sum of the stored lengths is strictly below `2^-n`.
    pub fn length_below_pow2(&self, n: u32) -> bool {
        let mut acc = ExactSum::default();
        for a in &self.arcs {
            acc.add(a.length);
        }
        acc.below_pow2(n)
    }

    /// Sorted linear pieces of the set on `[0, 2π]`.
    pub(crate) fn spans(&self) -> impl Iterator<Item = Span> + '_ {
        let head = self.arcs.last().and_then(|a| a.spans().1);
        head.into_iter()
            .chain(self.arcs.iter().map(|a| a.spans().0))
    }

    pub fn union(&self, other: &ArcSet) -> Result<ArcSet> {
        let merged = union_sorted(merge_streams(self.spans(), other.spans()));
        Ok(ArcSet::sorted(spans_to_arcs(merged)?))
    }

    pub fn intersection(&self, other: &ArcSet) -> Result<ArcSet> {
        let pieces = intersect_streams(self.spans(), other.spans());
        Ok(ArcSet::sorted(spans_to_arcs(pieces)?))
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &ArcSet) -> bool {
        spans_within(self.spans(), other.spans())
    }

    /// Whether the closure of `self` lies in `other`.
    pub fn closure_is_subset_of(&self, other: &ArcSet) -> bool {
        spans_within(self.spans().map(Span::closure), other.spans())
    }

    pub fn closure(&self) -> ArcSet {
        let spans: Vec<Span> = self.spans().map(Span::closure).collect();
        let arcs = spans_to_arcs(union_sorted(spans.into_iter()))
            .expect("closed pieces never mix endpoint kinds");
        ArcSet::sorted(arcs)
    }

    /// Index of the arc containing `theta`, if any.
    pub fn locate(&self, theta: Angle) -> Option<usize> {
        let i = self.cyclic_predecessor(theta)?;
        self.arcs[i].contains(theta).then_some(i)
    }

    pub fn contains(&self, theta: Angle) -> bool {
        self.locate(theta).is_some()
    }

    /// Index of the arc with the largest start not after `theta`, cyclically.
    fn cyclic_predecessor(&self, theta: Angle) -> Option<usize> {
        if self.arcs.is_empty() {
            return None;
        }
        let idx = self.arcs.partition_point(|a| a.start.0 <= theta.0);
        Some(if idx == 0 { self.arcs.len() - 1 } else { idx - 1 })
    }

    /// Geodesic distance from `theta` to the closure of the set.
    pub fn distance_to(&self, theta: Angle) -> Result<f64> {
        let i = self
            .cyclic_predecessor(theta)
            .ok_or_else(|| Error::Domain("distance to an empty arc set".into()))?;
        let pred = &self.arcs[i];
        let succ = &self.arcs[(i + 1) % self.arcs.len()];
        Ok(pred.distance_to(theta).min(succ.distance_to(theta)))
    }
}

/// If `arcs` are, up to a rotation, sorted by start and separated by gaps
/// wider than the tolerance, returns the rotation that sorts them.
fn cyclic_rotation_if_separated(arcs: &[Arc]) -> Option<usize> {
    let n = arcs.len();
    if n == 0 {
        return Some(0);
    }
    let mut rot = 0;
    for i in 1..n {
        if arcs[i].start.0 < arcs[i - 1].start.0 {
            if rot != 0 {
                return None;
            }
            rot = i;
        }
    }
    let at = |i: usize| &arcs[(rot + i) % n];
    let first = at(0);
    if n == 1 {
        return (first.length < TAU).then_some(rot);
    }
    for i in 0..n - 1 {
        let (a, b) = (at(i), at(i + 1));
        if a.start.0 + a.length + GEOM_TOLERANCE >= b.start.0 {
            return None;
        }
    }
    let last = at(n - 1);
    if last.start.0 + last.length + GEOM_TOLERANCE >= first.start.0 + TAU {
        return None;
    }
    Some(rot)
}

/// Compensated (Neumaier) summation.
pub(crate) fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Fixed-point accumulator for non-negative doubles with `FIX_BITS`
/// fractional bits. Bits below `2^-FIX_BITS` are rounded up, so the
/// accumulated value is an upper bound that is exact for typical lengths.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct ExactSum {
    acc: i128,
    saturated: bool,
}

const FIX_BITS: i32 = 100;

impl ExactSum {
    pub fn add(&mut self, x: f64) {
        debug_assert!(x >= 0.0 && x.is_finite());
        let bits = x.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        if mant == 0 {
            return;
        }
        let shift = exp + FIX_BITS;
        let units: i128 = if shift >= 0 {
            if shift > 70 {
                self.saturated = true;
                return;
            }
            (mant as i128) << shift
        } else if -shift >= 64 {
            1
        } else {
            let s = (-shift) as u32;
            let q = mant >> s;
            (q + u64::from(q << s != mant)) as i128
        };
        match self.acc.checked_add(units) {
            Some(v) => self.acc = v,
            None => self.saturated = true,
        }
    }

    /// Whether the accumulated sum is strictly less than `2^-n`.
    pub fn below_pow2(&self, n: u32) -> bool {
        if self.saturated || n as i32 > FIX_BITS {
            return false;
        }
        self.acc < 1i128 << (FIX_BITS - n as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn a(x: f64) -> Angle {
        Angle::new(x).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(0.0).unwrap().radians(), 0.0);
        assert_eq!(reduce(TAU).unwrap().radians(), 0.0);
        assert!((reduce(-FRAC_PI_2).unwrap().radians() - 3.0 * FRAC_PI_2).abs() < 1e-15);
        assert!(reduce(-1e-300).unwrap().radians() < TAU);
        assert!(matches!(reduce(f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(reduce(f64::INFINITY), Err(Error::Domain(_))));
    }

    #[test]
    fn arc_contains_examples() {
        let seam = Arc::open(3.0 * FRAC_PI_2, PI).unwrap();
        assert!(seam.crosses_seam());
        assert!(arc_contains(&seam, a(0.0)));
        let open = Arc::open(0.0, FRAC_PI_2).unwrap();
        assert!(!arc_contains(&open, a(0.0)));
        assert!(!arc_contains(&open, a(FRAC_PI_2)));
        let closed = Arc::closed(0.0, FRAC_PI_2).unwrap();
        assert!(arc_contains(&closed, a(FRAC_PI_2)));
        assert!(arc_contains(&closed, a(0.0)));
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(Arc::open(0.0, 0.0).is_err());
        assert!(Arc::open(0.0, 7.0).is_err());
        assert!(Arc::open(0.0, f64::NAN).is_err());
        assert!(Arc::closed(0.0, TAU).is_ok());
    }

    #[test]
    fn distance_examples() {
        assert!((distance_to_points(a(PI), &[a(0.0)]).unwrap() - PI).abs() < 1e-15);
        assert_eq!(distance_to_points(a(0.0), &[a(0.0)]).unwrap(), 0.0);
        assert!(distance_to_points(a(0.0), &[]).is_err());
        let s = ArcSet::single(Arc::closed(FRAC_PI_2, FRAC_PI_2).unwrap());
        let d = s.distance_to(a(PI / 4.0)).unwrap();
        assert!((d - PI / 4.0).abs() < 1e-15);
        assert_eq!(s.distance_to(a(3.0)).unwrap(), 0.0);
        assert!(ArcSet::empty().distance_to(a(1.0)).is_err());
    }

    #[test]
    fn union_merges_adjacent_closed() {
        let s = ArcSet::from_arcs([
            Arc::closed(0.0, 1.0).unwrap(),
            Arc::closed(1.0, 1.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.arcs()[0].start().radians(), 0.0);
        assert!((s.arcs()[0].length() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn union_keeps_touching_open_arcs_apart() {
        let s = ArcSet::from_arcs([
            Arc::open(0.0, 1.0).unwrap(),
            Arc::open(1.0, 1.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(s.len(), 2);
        assert!(!s.contains(a(1.0)));
    }

    #[test]
    fn intersection_example() {
        let x = ArcSet::single(Arc::open(0.0, 2.0).unwrap());
        let y = ArcSet::single(Arc::open(1.0, 2.0).unwrap());
        let z = x.intersection(&y).unwrap();
        assert_eq!(z.len(), 1);
        let arc = z.arcs()[0];
        assert!(!arc.is_closed());
        assert!((arc.start().radians() - 1.0).abs() < 1e-15);
        assert!((arc.length() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn containment_example() {
        let inner = ArcSet::single(Arc::open(0.1, 0.1).unwrap());
        let outer = ArcSet::single(Arc::open(0.0, 0.3).unwrap());
        assert!(inner.closure().is_subset_of(&outer));
        assert!(inner.closure_is_subset_of(&outer));
        let touching = ArcSet::single(Arc::open(0.0, 0.2).unwrap());
        assert!(touching.is_subset_of(&outer));
        assert!(!touching.closure_is_subset_of(&outer));
    }

    #[test]
    fn seam_crossing_union_glues() {
        let s = ArcSet::from_arcs([
            Arc::closed(6.0, TAU - 6.0).unwrap(),
            Arc::closed(0.0, 0.5).unwrap(),
        ])
        .unwrap();
        assert_eq!(s.len(), 1);
        let arc = s.arcs()[0];
        assert!(arc.crosses_seam());
        assert!((arc.start().radians() - 6.0).abs() < 1e-15);
        assert!(s.contains(a(0.0)));
        assert!(s.contains(a(0.25)));
    }

    #[test]
    fn full_circle_union() {
        let s = ArcSet::from_arcs([
            Arc::closed(0.0, 4.0).unwrap(),
            Arc::closed(3.0, TAU - 3.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.arcs()[0].length(), TAU);
        assert!(s.contains(a(5.0)));
    }

    #[test]
    fn mixed_endpoint_kinds_are_rejected() {
        let x = ArcSet::single(Arc::open(0.0, 1.0).unwrap());
        let y = ArcSet::single(Arc::closed(0.5, 1.0).unwrap());
        assert!(x.union(&y).is_err());
    }

    #[test]
    fn locate_across_the_seam() {
        let s = ArcSet::from_arcs([
            Arc::open(1.0, 0.5).unwrap(),
            Arc::open(6.0, 1.0).unwrap(),
        ])
        .unwrap();
        assert_eq!(s.locate(a(0.2)), Some(1));
        assert_eq!(s.locate(a(1.2)), Some(0));
        assert_eq!(s.locate(a(3.0)), None);
    }

    #[test]
    fn exact_sum_is_strict() {
        let mut acc = ExactSum::default();
        acc.add(0.25);
        assert!(!acc.below_pow2(2));
        assert!(acc.below_pow2(1));
        let mut acc = ExactSum::default();
        for _ in 0..4 {
            acc.add(0.0625);
        }
        assert!(!acc.below_pow2(2));
        acc = ExactSum::default();
        acc.add(f64::from_bits(0.25f64.to_bits() - 1));
        assert!(acc.below_pow2(2));
    }
}
