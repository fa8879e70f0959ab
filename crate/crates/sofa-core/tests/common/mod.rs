#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sofa_core::convex_core::{CapGrid, ConvexPolygon, SupportSamples, Vec2};
use sofa_core::sofa::Cap;

mod oracles;
#[allow(unused_imports)]
pub use oracles::*;

pub type V = Vec2<f64>;

pub fn v(x: f64, y: f64) -> V {
    Vec2::new(x, y)
}

pub fn poly(pts: &[(f64, f64)]) -> ConvexPolygon<f64> {
    ConvexPolygon::from_vertices(pts.iter().map(|&(x, y)| v(x, y)).collect()).unwrap()
}

pub fn unit_square() -> ConvexPolygon<f64> {
    poly(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
}

pub fn square(side: f64) -> ConvexPolygon<f64> {
    poly(&[(0.0, 0.0), (side, 0.0), (side, side), (0.0, side)])
}

/// Half-disk polygon with `n` equal chords on the arc.
pub fn inscribed_half_disk(n: usize) -> ConvexPolygon<f64> {
    let pts: Vec<V> = (0..=n).map(|k| Vec2::unit(PI * k as f64 / n as f64)).collect();
    ConvexPolygon::from_vertices(pts).unwrap()
}

/// Andrew's monotone chain, counterclockwise, no collinear points.
pub fn hull(mut pts: Vec<V>) -> Vec<V> {
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: V, a: V, b: V| (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    let mut lower: Vec<V> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-12 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<V> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-12 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

pub fn random_polygon(rng: &mut impl Rng, count: usize) -> ConvexPolygon<f64> {
    loop {
        let pts: Vec<V> = (0..count)
            .map(|_| v(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let h = hull(pts);
        if h.len() >= 3 {
            if let Ok(p) = ConvexPolygon::from_vertices(h) {
                return p;
            }
        }
    }
}

pub fn polygon_strategy() -> impl Strategy<Value = ConvexPolygon<f64>> {
    (any::<u64>(), 3usize..24).prop_map(|(seed, count)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_polygon(&mut rng, count)
    })
}

/// Brute-force support: max over vertices.
pub fn brute_support(p: &ConvexPolygon<f64>, t: f64) -> f64 {
    p.vertices().iter().map(|q| q.dot(Vec2::unit(t))).fold(f64::NEG_INFINITY, f64::max)
}

/// A grid containing every edge normal of `p` plus `extra` uniform angles.
pub fn grid_for(p: &ConvexPolygon<f64>, extra: usize) -> Vec<f64> {
    let mut g: Vec<f64> = p.normals().to_vec();
    g.extend((0..extra).map(|k| 2.0 * PI * (k as f64 + 0.37) / extra as f64));
    g.sort_by(|a, b| a.partial_cmp(b).unwrap());
    g.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    g
}

pub fn samples_of(p: &ConvexPolygon<f64>, extra: usize) -> SupportSamples<f64> {
    SupportSamples::from_polygon(p, FRAC_PI_2, grid_for(p, extra))
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (tol {tol})");
}

pub fn assert_vclose(a: V, b: V, tol: f64, what: &str) {
    assert!(a.dist(b) <= tol, "{what}: {a:?} vs {b:?} (tol {tol})");
}

/// Cap sampled from a support function on the cap grid.
pub fn cap_from_fn(omega: f64, n: usize, f: impl Fn(f64) -> f64) -> Cap<f64> {
    let grid = CapGrid::new(omega, n).unwrap();
    let s = SupportSamples::from_fn(grid.omega(), grid.angles(), f);
    Cap::new(grid, s).unwrap()
}

/// Support of the half-disk `{x² + y² ≤ 1, y ≥ 0}`.
pub fn half_disk_support(t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    if s >= 0.0 {
        1.0
    } else {
        c.abs()
    }
}

/// Support of `[0,1]² ∪` the quarter disk of radius 1 in the second quadrant.
pub fn square_quarter_support(t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    let corners = [(1.0, 0.0), (1.0, 1.0), (0.0, 1.0), (-1.0, 0.0), (0.0, 0.0)];
    let mut best = corners.iter().map(|&(x, y)| x * c + y * s).fold(f64::NEG_INFINITY, f64::max);
    if c <= 0.0 && s >= 0.0 {
        best = best.max(1.0);
    }
    best
}

/// Support of the axis box `[x0,x1] × [y0,y1]`.
pub fn box_support(x0: f64, x1: f64, y0: f64, y1: f64) -> impl Fn(f64) -> f64 {
    move |t: f64| {
        let (s, c) = t.sin_cos();
        (if c > 0.0 { x1 * c } else { x0 * c }) + (if s > 0.0 { y1 * s } else { y0 * s })
    }
}

pub const OMEGAS: [f64; 5] = [PI / 6.0, PI / 4.0, PI / 3.0, 1.3, FRAC_PI_2];

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A seeded random cap on a coarse grid.
pub fn random_cap_seeded(seed: u64, omega: f64, n: usize) -> Cap<f64> {
    let grid = CapGrid::new(omega, n).unwrap();
    sofa_core::maximizer::random_cap(grid, &mut seeded(seed)).unwrap()
}

pub fn cap_strategy(n: usize) -> impl Strategy<Value = Cap<f64>> {
    (any::<u64>(), 0usize..OMEGAS.len()).prop_map(move |(seed, k)| random_cap_seeded(seed, OMEGAS[k], n))
}

/// Closed-form support of `K_{ω,1}` on `J_ω` in standard position.
pub fn k1_support(omega: f64, s: f64) -> f64 {
    // Upper corner of the parallelogram; (1, 1) in the centred right-angle frame.
    let o = if omega < FRAC_PI_2 { v((1.0 - omega.sin()) / omega.cos(), 1.0) } else { v(1.0, 1.0) };
    if s <= omega + 1e-12 {
        omega - s + o.dot(Vec2::unit(s))
    } else {
        s - FRAC_PI_2 + o.dot(Vec2::unit(s))
    }
}

pub fn k1(omega: f64, n: usize) -> Cap<f64> {
    sofa_core::maximizer::build_maximizer(&sofa_core::maximizer::MaximizerSpec::new(omega, n)).unwrap()
}

/// A cap built from a polygon with normals on the grid of `(ω, n)`.
pub fn cap_of_polygon(omega: f64, n: usize, p: ConvexPolygon<f64>) -> Cap<f64> {
    Cap::from_polygon(CapGrid::new(omega, n).unwrap(), p).unwrap()
}

/// `[0, 100] × [0, 1]`.
pub fn wide_cap(n: usize) -> Cap<f64> {
    cap_of_polygon(FRAC_PI_2, n, ConvexPolygon::rect(v(0.0, 0.0), v(100.0, 1.0)))
}

/// An angle of `(0, ω)` that is not a grid slot.
pub fn off_grid(cap: &Cap<f64>, frac: f64) -> f64 {
    let g = cap.grid();
    let j = ((frac * g.cells() as f64) as usize).clamp(1, g.cells() - 1);
    j as f64 * g.step()
}
