//! Nested finite covers `G_1 ⊃ closure(G_2) ⊃ G_2 ⊃ …` of a boundary set,
//! each arc carrying a closed core on which the level's bump is flat.

use std::f64::consts::TAU;

use crate::boundary::{BoundarySet, CantorSet};
use crate::error::{Error, Result};
use crate::geometry::{
    cyclic_spans, neumaier_sum, spans_within, Angle, Arc, ArcSet, ExactSum, Span, GEOM_TOLERANCE,
};

/// Deepest Cantor generation the builder will materialise (`2^25` intervals).
pub const SKELETON_CAP: usize = 25;

/// One outer arc `I = (a, a + len)` with its closed core
/// `J = [a + core_offset, a + core_offset + core_len]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cell {
    start: f64,
    len: f64,
    core_offset: f64,
    core_len: f64,
}

impl Cell {
    /// Pairs an outer arc with a core; the core is not checked to lie inside.
    pub fn new(outer: &Arc, core: &Arc) -> Cell {
        Cell {
            start: outer.start().radians(),
            len: outer.length(),
            core_offset: outer.offset_of(core.start()),
            core_len: core.length(),
        }
    }

    pub fn start(&self) -> Angle {
        Angle::wrapped(self.start)
    }

    pub fn length(&self) -> f64 {
        self.len
    }

    /// Offset of the core start from the outer start; the rise width.
    pub fn core_offset(&self) -> f64 {
        self.core_offset
    }

    pub fn core_length(&self) -> f64 {
        self.core_len
    }

    /// Width of the gap between the core end and the outer end.
    pub fn fall_width(&self) -> f64 {
        self.len - self.core_offset - self.core_len
    }

    /// `I`, open.
    pub fn outer(&self) -> Arc {
        Arc::from_parts(self.start(), self.len, false)
    }

    /// `J`, closed.
    pub fn core(&self) -> Arc {
        Arc::from_parts(self.start().rotate(self.core_offset), self.core_len, true)
    }
}

/// One level of the tower: disjoint open arcs `I_m`, sorted by start, each
/// with a closed core `J_m` satisfying `closure(J_m) ⊂ I_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverLevel {
    n: usize,
    cells: Vec<Cell>,
}

impl CoverLevel {
    /// Assembles a level without checking any invariant; pairs are reordered
    /// by outer start. Intended for deserialisation and for fixtures that
    /// exercise the verifier.
    pub fn new_unchecked(n: usize, outer: Vec<Arc>, inner: Vec<Arc>) -> CoverLevel {
        assert_eq!(outer.len(), inner.len(), "one core per outer arc");
        let mut cells: Vec<Cell> = outer.iter().zip(&inner).map(|(i, j)| Cell::new(i, j)).collect();
        cells.sort_by(|a, b| a.start.total_cmp(&b.start));
        CoverLevel { n, cells }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// `k_n`.
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn outer_arcs(&self) -> impl ExactSizeIterator<Item = Arc> + '_ {
        self.cells.iter().map(Cell::outer)
    }

    pub fn inner_arcs(&self) -> impl ExactSizeIterator<Item = Arc> + '_ {
        self.cells.iter().map(Cell::core)
    }

    /// `G_n`.
    pub fn outer(&self) -> ArcSet {
        ArcSet::from_sorted_unchecked(self.outer_arcs().collect())
    }

    /// `E_n`, the union of the cores.
    pub fn plateau(&self) -> Result<ArcSet> {
        ArcSet::from_arcs(self.inner_arcs())
    }

    pub fn total_length(&self) -> f64 {
        neumaier_sum(self.cells.iter().map(|c| c.len))
    }

    /// Whether the exact sum of the outer lengths is strictly below `2^-n`.
    pub fn length_below_pow2(&self, n: u32) -> bool {
        let mut acc = ExactSum::default();
        for c in &self.cells {
            acc.add(c.len);
        }
        acc.below_pow2(n)
    }

    /// Index of the outer arc containing `theta`.
    pub fn locate(&self, theta: Angle) -> Option<usize> {
        if self.cells.is_empty() {
            return None;
        }
        let idx = self.cells.partition_point(|c| c.start <= theta.radians());
        let m = if idx == 0 { self.cells.len() - 1 } else { idx - 1 };
        self.cells[m].outer().contains(theta).then_some(m)
    }

    pub fn contains(&self, theta: Angle) -> bool {
        self.locate(theta).is_some()
    }

    fn outer_spans(&self) -> impl Iterator<Item = Span> + '_ {
        cyclic_spans(self.cells.len(), move |i| self.cells[i].outer())
    }

    fn inner_spans(&self) -> impl Iterator<Item = Span> + '_ {
        cyclic_spans(self.cells.len(), move |i| self.cells[i].core())
    }

    /// `closure(G_self) ⊂ G_coarse`.
    pub fn closure_nested_in(&self, coarse: &CoverLevel) -> bool {
        spans_within(self.outer_spans().map(Span::closure), coarse.outer_spans())
    }

    /// `E_self ⊂ E_coarse`.
    pub fn plateau_nested_in(&self, coarse: &CoverLevel) -> bool {
        spans_within(self.inner_spans(), coarse.inner_spans())
    }
}

/// The levels `n = 1..=L` built for one boundary set.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverTower {
    set: BoundarySet,
    levels: Vec<CoverLevel>,
}

impl CoverTower {
    /// Wraps prebuilt levels without verification.
    pub fn from_levels_unchecked(set: BoundarySet, levels: Vec<CoverLevel>) -> CoverTower {
        CoverTower { set, levels }
    }

    pub fn boundary_set(&self) -> &BoundarySet {
        &self.set
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[CoverLevel] {
        &self.levels
    }

    /// Level `n`, counted from 1.
    pub fn level(&self, n: usize) -> &CoverLevel {
        &self.levels[n - 1]
    }

    /// Number of leading levels whose `G_n` contains `theta`.
    pub fn active_depth(&self, theta: Angle) -> usize {
        self.levels
            .iter()
            .take_while(|l| l.contains(theta))
            .count()
    }

    /// `{n ≤ L : theta ∈ G_n}`, always of the form `1..=j`.
    pub fn active_levels(&self, theta: Angle) -> Vec<usize> {
        (1..=self.active_depth(theta)).collect()
    }
}

/// Per-leaf allowance at level `n` when `leaves` components share `2^-n`.
fn leaf_budget(n: usize, leaves: usize) -> f64 {
    2f64.powi(-(n as i32)) / leaves as f64
}

/// Generation whose skeleton the level-`n` cover of a Cantor leaf is built on.
pub fn cantor_generation(c: &CantorSet, n: usize, leaves: usize) -> usize {
    c.generation_for_budget(leaf_budget(n, leaves))
}

/// Half-width of the angle-zero exclusion zone at level `n`, when zero is
/// not in the set.
fn seam_clearance(set: &BoundarySet, n: usize) -> Option<f64> {
    let d0 = set.distance(Angle::ZERO);
    (d0 > GEOM_TOLERANCE).then(|| 0.5 * d0 * (1.0 - 2f64.powi(-(n as i32))))
}

/// An open arc under construction, in unwrapped coordinates, with the
/// offsets of the first and last boundary points it contains.
#[derive(Clone, Copy, Debug)]
struct Piece {
    start: f64,
    len: f64,
    lo: f64,
    hi: f64,
}

impl Piece {
    fn end(&self) -> f64 {
        self.start + self.len
    }

    /// Absorbs `other`, whose start is expressed in the same unwrapped frame.
    fn absorb(&mut self, other: &Piece) {
        let shift = other.start - self.start;
        self.len = self.len.max(shift + other.len);
        self.lo = self.lo.min(shift + other.lo);
        self.hi = self.hi.max(shift + other.hi);
    }
}

/// Per-leaf state carried from one level to the next.
enum LeafState {
    Finite,
    Cantor { width: Option<f64> },
}

/// Builds levels `1..=depth` for `set`.
///
/// Finite leaves with `p` points get arcs of half-width `B_n / (8p)` around
/// each point, where `B_n = 2^-n / q` for `q` leaves. Cantor leaves widen the
/// generation-`g(n)` skeleton by `min(gap / 4, w_{n-1} / 2, (B_n - 2^g ℓ_g) / 2^{g+2})`,
/// with `g(n)` the first generation whose remaining length is below `B_n / 2`.
/// Overlapping arcs merge. When zero is not in the set, arcs are clipped
/// away from a neighbourhood of zero that grows with `n`.
pub fn build_tower(set: &BoundarySet, depth: usize) -> Result<CoverTower> {
    if depth == 0 {
        return Err(Error::Validation("depth must be at least 1".into()));
    }
    let leaves = set.leaves();
    if leaves.is_empty() {
        return Err(Error::Degenerate);
    }
    let q = leaves.len();
    let mut states: Vec<LeafState> = leaves
        .iter()
        .map(|l| match l {
            BoundarySet::Cantor(_) => LeafState::Cantor { width: None },
            _ => LeafState::Finite,
        })
        .collect();
    let mut levels = Vec::with_capacity(depth);
    for n in 1..=depth {
        let budget = leaf_budget(n, q);
        let mut pieces = Vec::with_capacity(pieces_at_level(&leaves, n, q));
        for (leaf, state) in leaves.iter().zip(states.iter_mut()) {
            match (leaf, state) {
                (BoundarySet::Finite(f), LeafState::Finite) => {
                    let r = budget / (8.0 * f.points().len() as f64);
                    if 0.75 * r <= GEOM_TOLERANCE {
                        return Err(Error::Infeasible(format!(
                            "level {n}: arc half-width {r:e} is below geometric resolution"
                        )));
                    }
                    pieces.extend(f.points().iter().map(|p| Piece {
                        start: p.rotate(-r).radians(),
                        len: 2.0 * r,
                        lo: r,
                        hi: r,
                    }));
                }
                (BoundarySet::Cantor(c), LeafState::Cantor { width }) => {
                    let g = cantor_generation(c, n, q);
                    if g > c.max_generation() as usize {
                        return Err(Error::Infeasible(format!(
                            "level {n} needs cantor generation {g}, beyond max_generation {}",
                            c.max_generation()
                        )));
                    }
                    if g > SKELETON_CAP {
                        return Err(Error::Infeasible(format!(
                            "level {n} needs cantor generation {g}, beyond the skeleton cap {SKELETON_CAP}"
                        )));
                    }
                    let slack = (budget - c.remaining_length(g)) / 2f64.powi(g as i32 + 2);
                    let mut w = (c.min_gap_through(g) / 4.0).min(slack);
                    if let Some(prev) = *width {
                        w = w.min(prev / 2.0);
                    }
                    if 0.75 * w <= GEOM_TOLERANCE {
                        return Err(Error::Infeasible(format!(
                            "level {n}: cantor widening {w:e} is below geometric resolution"
                        )));
                    }
                    *width = Some(w);
                    let len = c.interval_length(g);
                    let s = c.base().start();
                    pieces.extend(c.skeleton(g).into_iter().map(|o| Piece {
                        start: s.rotate(o - w).radians(),
                        len: len + 2.0 * w,
                        lo: w,
                        hi: w + len,
                    }));
                }
                _ => unreachable!("leaf states follow leaf kinds"),
            }
        }
        let mut pieces = merge_pieces(pieces)?;
        if let Some(c) = seam_clearance(set, n) {
            pieces = clip_seam(set, pieces, c);
        }
        let level = assemble_level(n, pieces)?;
        let level = match levels.last() {
            Some(prev) => nest_plateau(level, prev)?,
            None => level,
        };
        if !level.length_below_pow2(n as u32) {
            return Err(Error::Infeasible(format!(
                "level {n}: cover length {} does not fit below 2^-{n}",
                level.total_length()
            )));
        }
        levels.push(level);
    }
    Ok(CoverTower {
        set: set.clone(),
        levels,
    })
}

/// Number of unmerged pieces level `n` starts from.
fn pieces_at_level(leaves: &[&BoundarySet], n: usize, q: usize) -> usize {
    leaves
        .iter()
        .map(|l| match l {
            BoundarySet::Finite(f) => f.points().len(),
            BoundarySet::Cantor(c) => 1usize << cantor_generation(c, n, q).min(SKELETON_CAP),
            _ => 0,
        })
        .sum()
}

/// Sorts by start, in linear time when the input is a rotation of a sorted run.
fn sort_cyclic(pieces: &mut [Piece]) {
    let breaks: Vec<usize> = (1..pieces.len())
        .filter(|&i| pieces[i].start < pieces[i - 1].start)
        .take(2)
        .collect();
    match breaks[..] {
        [] => {}
        [k] if pieces[pieces.len() - 1].start <= pieces[0].start => pieces.rotate_left(k),
        _ => pieces.sort_unstable_by(|a, b| a.start.total_cmp(&b.start)),
    }
}

/// Merges overlapping (or touching, within tolerance) pieces, cyclically.
fn merge_pieces(mut pieces: Vec<Piece>) -> Result<Vec<Piece>> {
    sort_cyclic(&mut pieces);
    let mut kept = 0;
    for i in 0..pieces.len() {
        let p = pieces[i];
        if kept > 0 && p.start <= pieces[kept - 1].end() + GEOM_TOLERANCE {
            pieces[kept - 1].absorb(&p);
        } else {
            pieces[kept] = p;
            kept += 1;
        }
    }
    pieces.truncate(kept);
    let mut out = pieces;
    let mut absorbed = 0;
    while out.len() - absorbed > 1 {
        let last = out[out.len() - 1];
        let mut first = out[absorbed];
        if first.start + TAU > last.end() + GEOM_TOLERANCE {
            break;
        }
        first.start += TAU;
        out.last_mut().expect("nonempty").absorb(&first);
        absorbed += 1;
    }
    out.drain(..absorbed);
    if out.iter().any(|p| p.len >= TAU - GEOM_TOLERANCE) {
        return Err(Error::Infeasible("cover arcs wrap the whole circle".into()));
    }
    Ok(out)
}

/// Removes `[-c, c]` (mod 2π) from every piece, recomputing hulls exactly for
/// the pieces that were cut and dropping parts that miss the set.
fn clip_seam(set: &BoundarySet, pieces: Vec<Piece>, c: f64) -> Vec<Piece> {
    let mut out = Vec::with_capacity(pieces.len());
    for p in pieces {
        let (s, e) = (p.start, p.end());
        let zones: Vec<(f64, f64)> = [0.0, TAU, 2.0 * TAU]
            .iter()
            .map(|k| (k - c, k + c))
            .filter(|&(a, b)| s < b && e > a)
            .collect();
        if zones.is_empty() {
            out.push(p);
            continue;
        }
        let mut cursor = s;
        let mut parts = Vec::new();
        for (a, b) in zones {
            if a > cursor {
                parts.push((cursor, a));
            }
            cursor = cursor.max(b);
        }
        if e > cursor {
            parts.push((cursor, e));
        }
        for (a, b) in parts {
            let Ok(arc) = Arc::open(a, b - a) else { continue };
            if let Some((lo, hi)) = set.hull_in(&arc) {
                out.push(Piece {
                    start: arc.start().radians(),
                    len: b - a,
                    lo,
                    hi,
                });
            }
        }
    }
    out.sort_unstable_by(|a, b| a.start.total_cmp(&b.start));
    out
}

/// Turns pieces into cells with cores padded by a quarter of each gap.
fn assemble_level(n: usize, pieces: Vec<Piece>) -> Result<CoverLevel> {
    if let Some(m) = pieces
        .iter()
        .position(|p| 0.75 * p.lo <= GEOM_TOLERANCE || 0.75 * (p.len - p.hi) <= GEOM_TOLERANCE)
    {
        return Err(Error::MalformedCover {
            level: n,
            arc: m,
            reason: "boundary set reaches the arc ends".into(),
        });
    }
    let cells = pieces
        .into_iter()
        .map(|p| {
            let lo = 0.75 * p.lo;
            let hi = p.hi + 0.25 * (p.len - p.hi);
            Cell {
                start: p.start,
                len: p.len,
                core_offset: lo,
                core_len: hi - lo,
            }
        })
        .collect();
    Ok(CoverLevel { n, cells })
}

/// Replaces the level's plateau by its intersection with the previous one
/// when it is not already contained there.
fn nest_plateau(level: CoverLevel, prev: &CoverLevel) -> Result<CoverLevel> {
    if level.plateau_nested_in(prev) {
        return Ok(level);
    }
    let cut = level.plateau()?.intersection(&prev.plateau()?)?;
    let mut inner: Vec<Option<Arc>> = vec![None; level.len()];
    for piece in cut.arcs() {
        let m = level.locate(piece.midpoint()).ok_or_else(|| {
            Error::Infeasible(format!("level {}: plateau piece {piece} left its arc", level.n))
        })?;
        if inner[m].replace(*piece).is_some() {
            return Err(Error::Infeasible(format!(
                "level {}: nesting split the core of arc {m}",
                level.n
            )));
        }
    }
    let cells = level
        .cells
        .iter()
        .zip(inner)
        .enumerate()
        .map(|(m, (c, j))| {
            j.map(|j| Cell::new(&c.outer(), &j)).ok_or_else(|| {
                Error::Infeasible(format!("level {}: core of arc {m} vanished", level.n))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoverLevel { n: level.n, cells })
}

/// Outcome of every structural check on one level.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelCheck {
    pub n: usize,
    pub arcs: usize,
    pub total_length: f64,
    /// `m(G_n) < 2^-n`, decided on the exact sum of the stored lengths.
    pub measure_bound: bool,
    /// `closure(J_m) ⊂ I_m` with a margin above the tie tolerance.
    pub core_inside: bool,
    /// `closure(G_{n+1}) ⊂ G_n`; `None` on the last level.
    pub nesting: Option<bool>,
    /// `E_{n+1} ⊂ E_n`; `None` on the last level.
    pub plateau_nesting: Option<bool>,
    /// Every certified piece of the set lies in a core, so `F ⊂ E_n` and
    /// `J_m ∩ F = I_m ∩ F`.
    pub boundary_in_cores: bool,
    /// Every outer arc meets the set.
    pub arcs_meet_boundary: bool,
}

impl LevelCheck {
    pub fn passed(&self) -> bool {
        self.measure_bound
            && self.core_inside
            && self.nesting.unwrap_or(true)
            && self.plateau_nesting.unwrap_or(true)
            && self.boundary_in_cores
            && self.arcs_meet_boundary
    }

    /// Name of the first failed check, if any.
    pub fn first_failure(&self) -> Option<&'static str> {
        [
            (self.measure_bound, "measure"),
            (self.core_inside, "core"),
            (self.nesting.unwrap_or(true), "nesting"),
            (self.plateau_nesting.unwrap_or(true), "plateau-nesting"),
            (self.boundary_in_cores, "coverage"),
            (self.arcs_meet_boundary, "meets-boundary"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, name)| name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerReport {
    pub levels: Vec<LevelCheck>,
    /// Certified points lie in `G_L` and every arc of `G_L` is within its
    /// own length of the set, so points farther than `m(G_L)` lie outside.
    pub truncated_intersection: bool,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.truncated_intersection && self.levels.iter().all(LevelCheck::passed)
    }

    /// First failing level and check name.
    pub fn first_failure(&self) -> Option<(usize, &'static str)> {
        self.levels
            .iter()
            .find_map(|l| l.first_failure().map(|f| (l.n, f)))
    }
}

/// Cheap repeated lookup into a level for queries in increasing order.
struct Cursor<'a> {
    level: &'a CoverLevel,
    at: usize,
}

impl Cursor<'_> {
    fn locate(&mut self, theta: Angle) -> Option<usize> {
        let cells = &self.level.cells;
        if cells.is_empty() {
            return None;
        }
        for step in 0..2 {
            let j = (self.at + step) % cells.len();
            if cells[j].outer().contains(theta) {
                self.at = j;
                return Some(j);
            }
        }
        let found = self.level.locate(theta);
        if let Some(j) = found {
            self.at = j;
        }
        found
    }
}

/// Closed pieces `(start, length)` known to cover every point of the set
/// near level `n`, sorted by start.
fn certified_pieces(set: &BoundarySet, n: usize) -> Option<Vec<(Angle, f64)>> {
    let leaves = set.leaves();
    let q = leaves.len();
    let clearance = seam_clearance(set, n);
    let mut out = Vec::new();
    for leaf in leaves {
        match leaf {
            BoundarySet::Finite(f) => out.extend(f.points().iter().map(|p| (*p, 0.0))),
            BoundarySet::Cantor(c) => {
                let mut g = cantor_generation(c, n, q);
                if let Some(cl) = clearance {
                    while c.interval_length(g) >= cl {
                        g += 1;
                    }
                }
                if g > SKELETON_CAP {
                    return None;
                }
                let len = c.interval_length(g);
                let s = c.base().start();
                out.extend(c.skeleton(g).into_iter().map(|o| (s.rotate(o), len)));
            }
            BoundarySet::Union(_) => unreachable!("leaves are flattened"),
        }
    }
    if !out.is_sorted_by(|a, b| a.0 <= b.0) {
        out.sort_unstable_by(|a, b| a.0.radians().total_cmp(&b.0.radians()));
    }
    Some(out)
}

fn check_level(set: &BoundarySet, level: &CoverLevel) -> LevelCheck {
    let n = level.n;
    let core_inside = level.cells.iter().all(|c| {
        c.core_offset > GEOM_TOLERANCE && c.fall_width() > GEOM_TOLERANCE && c.core_len > 0.0
    });
    let mut boundary_in_cores = false;
    let mut arcs_meet_boundary = false;
    if let (true, Some(pieces)) = (core_inside, certified_pieces(set, n)) {
        let mut hit = vec![false; level.len()];
        let mut cursor = Cursor { level, at: 0 };
        boundary_in_cores = pieces.iter().all(|&(start, len)| {
            let Some(m) = cursor.locate(start) else {
                return false;
            };
            hit[m] = true;
            let j = level.cells[m].core();
            j.contains(start) && j.offset_of(start) + len <= j.length()
        });
        arcs_meet_boundary = hit.iter().all(|&h| h);
    }
    LevelCheck {
        n,
        arcs: level.len(),
        total_length: level.total_length(),
        measure_bound: level.length_below_pow2(n as u32),
        core_inside,
        nesting: None,
        plateau_nesting: None,
        boundary_in_cores,
        arcs_meet_boundary,
    }
}

/// Re-checks every tower invariant against `set` from scratch.
pub fn verify_tower(tower: &CoverTower, set: &BoundarySet) -> TowerReport {
    let mut checks: Vec<LevelCheck> = tower.levels.iter().map(|l| check_level(set, l)).collect();
    for i in 0..tower.levels.len().saturating_sub(1) {
        let (coarse, fine) = (&tower.levels[i], &tower.levels[i + 1]);
        checks[i].nesting = Some(fine.closure_nested_in(coarse));
        checks[i].plateau_nesting = Some(fine.plateau_nested_in(coarse));
    }
    let truncated_intersection = match (tower.levels.last(), checks.last()) {
        (Some(last), Some(check)) => {
            let total = last.total_length();
            check.boundary_in_cores
                && check.arcs_meet_boundary
                && last.cells.iter().all(|c| c.len <= total)
        }
        _ => false,
    };
    TowerReport {
        levels: checks,
        truncated_intersection,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn angle(t: f64) -> Angle {
        Angle::new(t).unwrap()
    }

    #[test]
    fn single_point_follows_width_rule() {
        let set = BoundarySet::finite(&[0.0]).unwrap();
        let tower = build_tower(&set, 3).unwrap();
        for level in tower.levels() {
            let n = level.n() as i32;
            assert_eq!(level.len(), 1);
            let i = level.cells()[0].outer();
            let j = level.cells()[0].core();
            assert!((i.length() - 2f64.powi(-n - 2)).abs() < 1e-15);
            assert!((j.length() - 2f64.powi(-n - 4)).abs() < 1e-15);
            assert!(i.contains(Angle::ZERO) && j.contains(Angle::ZERO));
        }
        assert!(verify_tower(&tower, &set).passed());
    }

    #[test]
    fn two_antipodal_points() {
        let set = BoundarySet::finite(&[0.0, PI]).unwrap();
        let tower = build_tower(&set, 1).unwrap();
        assert_eq!(tower.level(1).len(), 2);
        assert!(tower.level(1).total_length() < 0.5);
        assert!(verify_tower(&tower, &set).passed());
    }

    #[test]
    fn near_points_merge_then_separate() {
        let set = BoundarySet::finite(&[1.0, 1.001]).unwrap();
        let tower = build_tower(&set, 12).unwrap();
        assert_eq!(tower.level(1).len(), 1);
        assert_eq!(tower.level(12).len(), 2);
        let report = verify_tower(&tower, &set);
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn seam_is_kept_clear_when_zero_is_outside() {
        let set = BoundarySet::finite(&[0.01, TAU - 0.01]).unwrap();
        let tower = build_tower(&set, 6).unwrap();
        for level in tower.levels() {
            assert!(!level.contains(Angle::ZERO));
        }
        assert!(verify_tower(&tower, &set).passed());
    }

    #[test]
    fn cantor_tower_verifies() {
        let set = BoundarySet::cantor(0.0, PI / 2.0, vec![1.0 / 3.0], 30).unwrap();
        let tower = build_tower(&set, 6).unwrap();
        let report = verify_tower(&tower, &set);
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn cantor_across_seam_verifies() {
        let set = BoundarySet::cantor(TAU - 0.3, 0.5, vec![0.4], 30).unwrap();
        let tower = build_tower(&set, 5).unwrap();
        let report = verify_tower(&tower, &set);
        assert!(report.passed(), "{:?}", report.first_failure());
    }

    #[test]
    fn infeasible_and_degenerate() {
        let set = BoundarySet::cantor(0.0, 1.0, vec![1.0 / 3.0], 4).unwrap();
        assert!(matches!(build_tower(&set, 20), Err(Error::Infeasible(_))));
        assert!(matches!(build_tower(&BoundarySet::empty(), 3), Err(Error::Degenerate)));
    }

    #[test]
    fn corrupted_measure_is_flagged_at_level_two() {
        let set = BoundarySet::finite(&[0.0]).unwrap();
        let tower = build_tower(&set, 3).unwrap();
        let mut levels = tower.levels().to_vec();
        let wide = Arc::open(-0.13, 0.26).unwrap();
        let core = Arc::closed(-0.01, 0.02).unwrap();
        levels[1] = CoverLevel::new_unchecked(2, vec![wide], vec![core]);
        let bad = CoverTower::from_levels_unchecked(set.clone(), levels);
        let report = verify_tower(&bad, &set);
        assert_eq!(report.first_failure().map(|f| f.0), Some(1));
        assert!(!report.levels[1].measure_bound);
    }

    #[test]
    fn core_touching_arc_end_is_flagged() {
        let set = BoundarySet::finite(&[0.0]).unwrap();
        let tower = build_tower(&set, 2).unwrap();
        let mut levels = tower.levels().to_vec();
        let i = levels[0].cells()[0].outer();
        let j = Arc::closed(i.start().radians(), i.length() / 2.0).unwrap();
        levels[0] = CoverLevel::new_unchecked(1, vec![i], vec![j]);
        let report = verify_tower(&CoverTower::from_levels_unchecked(set.clone(), levels), &set);
        assert!(!report.levels[0].core_inside);
        assert!(!report.passed());
    }

    #[test]
    fn active_levels_are_prefixes() {
        let set = BoundarySet::finite(&[0.0]).unwrap();
        let tower = build_tower(&set, 5).unwrap();
        assert_eq!(tower.active_levels(Angle::ZERO), vec![1, 2, 3, 4, 5]);
        assert!(tower.active_levels(angle(PI)).is_empty());
        // Midpoint of the part of G_1 outside closure(G_2), right of zero.
        let r1 = 2f64.powi(-1) / 8.0;
        let r2 = r1 / 2.0;
        assert_eq!(tower.active_levels(angle((r1 + r2) / 2.0)), vec![1]);
    }

    #[test]
    fn deterministic() {
        let set = BoundarySet::finite(&[0.3, 2.0, 4.5]).unwrap();
        assert_eq!(build_tower(&set, 8).unwrap(), build_tower(&set, 8).unwrap());
    }
}
