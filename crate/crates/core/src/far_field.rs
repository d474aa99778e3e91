//! Hierarchical moment expansion of one level's kernel integral.
//!
//! Bumps are grouped into a binary tree of contiguous runs. Each node keeps
//! the moments `∫ φ(t) ((t - C)/R)^j dt`, `j ≤ ORDER`, about its centre `C`,
//! scaled by its radius `R`. When the pole of the Herglotz kernel lies at
//! complex distance `ρ ≥ R / FAR_RATIO` from `C`, the node's contribution is
//! the Taylor expansion of the kernel paired with those moments; the
//! truncation error is below `FAR_RATIO^(ORDER+1)` relative.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::bump::{Bump, BumpLevel};
use crate::quadrature;

pub const ORDER: usize = 24;
pub const FAR_RATIO: f64 = 0.25;
const LEAF_BUMPS: usize = 8;
const NONE: u32 = u32::MAX;
const WIDTH: usize = ORDER + 1;

struct Node {
    centre: f64,
    radius: f64,
    lo: u32,
    hi: u32,
    left: u32,
    right: u32,
}

/// Moment tree over the bumps of one level.
pub struct FarFieldTree {
    nodes: Vec<Node>,
    moments: Vec<f64>,
    order: Vec<u32>,
}

fn binomials() -> Vec<[f64; WIDTH]> {
    let mut b = vec![[0.0; WIDTH]; WIDTH];
    for j in 0..WIDTH {
        b[j][0] = 1.0;
        for i in 1..=j {
            b[j][i] = b[j - 1][i - 1] + if i < j { b[j - 1][i] } else { 0.0 };
        }
    }
    b
}

/// Scaled moments of a bump about its own midpoint.
fn bump_moments(b: &Bump) -> [f64; WIDTH] {
    let half = 0.5 * b.support_width();
    let y_rise = b.rise_width() / half - 1.0;
    let y_fall = (b.rise_width() + b.plateau_width()) / half - 1.0;
    let [rise, _, fall] = b.segments();
    let mut m = [0.0; WIDTH];
    for (j, mj) in m.iter_mut().enumerate() {
        let p = j as i32;
        let plateau = (y_fall.powi(p + 1) - y_rise.powi(p + 1)) / (j + 1) as f64;
        let tol = 1e-15;
        let (up, _) = quadrature::integrate_real(
            |y| rise.value_at(((y + 1.0) * half).clamp(0.0, rise.width)) * y.powi(p),
            -1.0,
            y_rise,
            tol,
        );
        let (down, _) = quadrature::integrate_real(
            |y| fall.value_at(((y - y_fall) * half).clamp(0.0, fall.width)) * y.powi(p),
            y_fall,
            1.0,
            tol,
        );
        *mj = half * (plateau + up + down);
    }
    m
}

/// Adds `src` (about `c`, radius `rc`) re-expanded about `centre` with radius `radius`.
fn shift_into(binom: &[[f64; WIDTH]], src: &[f64], c: f64, rc: f64, centre: f64, radius: f64, dst: &mut [f64]) {
    let s = rc / radius;
    let d = (c - centre) / radius;
    let mut sp = [1.0; WIDTH];
    let mut dp = [1.0; WIDTH];
    for j in 1..WIDTH {
        sp[j] = sp[j - 1] * s;
        dp[j] = dp[j - 1] * d;
    }
    for j in 0..WIDTH {
        let mut acc = 0.0;
        for i in 0..=j {
            acc += binom[j][i] * src[i] * sp[i] * dp[j - i];
        }
        dst[j] += acc;
    }
}

impl FarFieldTree {
    pub fn build(level: &BumpLevel<'_>) -> FarFieldTree {
        let bumps: Vec<Bump> = level.bumps().collect();
        let mut order: Vec<u32> = (0..bumps.len() as u32).collect();
        order.sort_by(|&a, &b| bumps[a as usize].start().radians().total_cmp(&bumps[b as usize].start().radians()));
        let mut shapes: HashMap<(u64, u64, u64), [f64; WIDTH]> = HashMap::new();
        let own: Vec<[f64; WIDTH]> = bumps
            .iter()
            .map(|b| {
                let key = (b.rise_width().to_bits(), b.plateau_width().to_bits(), b.fall_width().to_bits());
                *shapes.entry(key).or_insert_with(|| bump_moments(b))
            })
            .collect();
        let mut tree = FarFieldTree {
            nodes: Vec::new(),
            moments: Vec::new(),
            order,
        };
        if !bumps.is_empty() {
            let binom = binomials();
            tree.build_node(&bumps, &own, &binom, 0, bumps.len());
        }
        tree
    }

    fn build_node(&mut self, bumps: &[Bump], own: &[[f64; WIDTH]], binom: &[[f64; WIDTH]], lo: usize, hi: usize) -> u32 {
        let span = |m: u32| {
            let b = &bumps[m as usize];
            let s = b.start().radians();
            (s, s + b.support_width())
        };
        let (left_end, right_end) = self.order[lo..hi]
            .iter()
            .map(|&m| span(m))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), (s, e)| (a.min(s), b.max(e)));
        let centre = 0.5 * (left_end + right_end);
        let radius = 0.5 * (right_end - left_end);
        let id = self.nodes.len();
        self.nodes.push(Node {
            centre,
            radius,
            lo: lo as u32,
            hi: hi as u32,
            left: NONE,
            right: NONE,
        });
        self.moments.extend([0.0; WIDTH]);
        let mut acc = [0.0; WIDTH];
        if hi - lo <= LEAF_BUMPS {
            for &m in &self.order[lo..hi] {
                let (s, e) = span(m);
                shift_into(binom, &own[m as usize], 0.5 * (s + e), 0.5 * (e - s), centre, radius, &mut acc);
            }
        } else {
            let mid = lo + (hi - lo) / 2;
            let l = self.build_node(bumps, own, binom, lo, mid);
            let r = self.build_node(bumps, own, binom, mid, hi);
            for child in [l, r] {
                let c = &self.nodes[child as usize];
                let base = child as usize * WIDTH;
                shift_into(binom, &self.moments[base..base + WIDTH], c.centre, c.radius, centre, radius, &mut acc);
            }
            self.nodes[id].left = l;
            self.nodes[id].right = r;
        }
        self.moments[id * WIDTH..(id + 1) * WIDTH].copy_from_slice(&acc);
        id as u32
    }

    /// `∫ φ_n(t) (e^{it} + z)/(e^{it} - z) dt` with `z = r e^{iθ}`, `r < 1`;
    /// `near(m)` integrates bump `m` directly.
    pub fn integral(&self, r: f64, theta: f64, near: impl Fn(usize) -> Complex64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        if self.nodes.is_empty() {
            return sum;
        }
        let lambda = -r.ln();
        let mut stack = vec![0u32];
        while let Some(id) = stack.pop() {
            let node = &self.nodes[id as usize];
            let mut delta = (theta - node.centre).rem_euclid(TAU);
            if delta > PI {
                delta -= TAU;
            }
            if node.radius <= FAR_RATIO * delta.hypot(lambda) {
                let base = id as usize * WIDTH;
                sum += expansion(r, delta, node.radius, &self.moments[base..base + WIDTH]);
            } else if node.left == NONE {
                for &m in &self.order[node.lo as usize..node.hi as usize] {
                    sum += near(m as usize);
                }
            } else {
                stack.push(node.left);
                stack.push(node.right);
            }
        }
        sum
    }
}

/// Pairs the Taylor coefficients of `x ↦ (1 + q e^{-iRx})/(1 - q e^{-iRx})`,
/// `q = r e^{iδ}`, with scaled moments.
fn expansion(r: f64, delta: f64, radius: f64, moments: &[f64]) -> Complex64 {
    let q = Complex64::from_polar(r, delta);
    let step = Complex64::new(0.0, -radius);
    let mut e = [Complex64::new(0.0, 0.0); WIDTH];
    let mut f = [Complex64::new(0.0, 0.0); WIDTH];
    e[0] = Complex64::new(1.0, 0.0);
    for j in 1..WIDTH {
        e[j] = e[j - 1] * step / j as f64;
    }
    f[0] = (Complex64::new(1.0, 0.0) - q).inv();
    let scale = f[0] * q;
    let mut sum = (2.0 * f[0] - 1.0) * moments[0];
    for j in 1..WIDTH {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=j {
            acc += e[i] * f[j - i];
        }
        f[j] = scale * acc;
        sum += 2.0 * f[j] * moments[j];
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_rows() {
        let b = binomials();
        assert_eq!(b[4][..5], [1.0, 4.0, 6.0, 4.0, 1.0]);
        assert_eq!(b[ORDER][ORDER], 1.0);
    }

    #[test]
    fn expansion_matches_kernel_for_point_masses() {
        // Moments of a unit mass at offset s: s^j; the sum must equal the kernel at t = C + s.
        let (r, delta, radius, s) = (0.8, 1.3, 0.2, 0.37f64);
        let moments: Vec<f64> = (0..WIDTH).map(|j| s.powi(j as i32)).collect();
        let got = expansion(r, delta, radius, &moments);
        let w = Complex64::from_polar(r, delta) * Complex64::from_polar(1.0, -radius * s);
        let want = (1.0 + w) / (1.0 - w);
        assert!((got - want).norm() < 1e-13, "{got} vs {want}");
    }

    #[test]
    fn shifted_moments_agree_with_direct_sum() {
        let binom = binomials();
        let src: Vec<f64> = (0..WIDTH).map(|j| 0.5f64.powi(j as i32)).collect();
        let mut dst = vec![0.0; WIDTH];
        shift_into(&binom, &src, 0.3, 0.1, 0.25, 0.2, &mut dst);
        // A unit mass at 0.3 + 0.05 seen from 0.25 with radius 0.2.
        for (j, d) in dst.iter().enumerate() {
            assert!((d - 0.5f64.powi(j as i32)).abs() < 1e-14);
        }
    }
}
