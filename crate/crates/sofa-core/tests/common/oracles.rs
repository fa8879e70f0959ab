//! Independent oracles shared by several suites.

use std::collections::VecDeque;
use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use sofa_core::convex_core::{CapGrid, ConvexPolygon, Polyline, Vec2};
use sofa_core::functional::{curve_area, BoundaryMeasure};
use sofa_core::sofa::Cap;

use super::*;

/// Whether the raster of `K ∖ 𝒩(K)` is 4-connected. Each row of an inner
/// quadrant is an open interval, so the niche is painted row by row.
pub fn raster_connected(cap: &Cap<f64>, res: usize, t_samples: usize) -> bool {
    let k = cap.polygon();
    let (lo, hi) = k.bounds();
    let (dx, dy) = ((hi.x - lo.x) / res as f64, (hi.y - lo.y) / res as f64);
    let omega = cap.omega();
    let quadrants: Vec<(f64, f64, f64, f64)> = (1..t_samples - 1)
        .map(|i| {
            let t = omega * i as f64 / (t_samples - 1) as f64;
            let b = brute_support(k, t) - 1.0;
            let d = brute_support(k, t + FRAC_PI_2) - 1.0;
            (t.cos(), t.sin(), b, d)
        })
        .filter(|&(c, s, _, _)| c > 1e-12 && s > 1e-12)
        .collect();
    let edges: Vec<(f64, f64, f64)> = k
        .edges()
        .map(|(t, a, _)| (t.cos(), t.sin(), a.dot(Vec2::unit(t))))
        .collect();
    let mut keep = vec![false; res * res];
    for r in 0..res {
        let y = lo.y + (r as f64 + 0.5) * dy;
        // The row of K, from its edge half-planes.
        let (mut x0, mut x1) = (f64::NEG_INFINITY, f64::INFINITY);
        for &(c, s, h) in &edges {
            if c.abs() < 1e-12 {
                if y * s > h {
                    x1 = x0;
                }
            } else if c > 0.0 {
                x1 = x1.min((h - y * s) / c);
            } else {
                x0 = x0.max((h - y * s) / c);
            }
        }
        let mut cut: Vec<(f64, f64)> = quadrants
            .iter()
            .map(|&(c, s, b, d)| ((y * c - d) / s, (b - y * s) / c))
            .filter(|(a, b)| a < b)
            .collect();
        cut.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut next = 0;
        let mut reach = f64::NEG_INFINITY;
        for col in 0..res {
            let x = lo.x + (col as f64 + 0.5) * dx;
            while next < cut.len() && cut[next].0 < x {
                reach = reach.max(cut[next].1);
                next += 1;
            }
            keep[r * res + col] = x >= x0 && x <= x1 && x >= reach;
        }
    }
    let Some(start) = keep.iter().position(|&b| b) else { return true };
    let mut seen = vec![false; res * res];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(i) = queue.pop_front() {
        let (r, c) = (i / res, i % res);
        let mut next = Vec::with_capacity(4);
        if r > 0 { next.push(i - res) }
        if r + 1 < res { next.push(i + res) }
        if c > 0 { next.push(i - 1) }
        if c + 1 < res { next.push(i + 1) }
        for j in next {
            if keep[j] && !seen[j] {
                seen[j] = true;
                count += 1;
                queue.push_back(j);
            }
        }
    }
    count == keep.iter().filter(|&&b| b).count()
}

pub fn seg(a: V, b: V) -> f64 {
    0.5 * a.cross(b)
}

/// Random weights on `J_ω`, rescaled onto both constraints; `None` when a
/// bottom atom would come out negative.
pub fn feasible_measure(seed: u64, omega: f64, n: usize) -> Option<BoundaryMeasure<f64>> {
    let grid = CapGrid::new(omega, n).unwrap();
    let mut rng = seeded(seed);
    let sparse = rng.gen_range(0.0..0.9);
    let mut w: Vec<f64> = (0..grid.j_len())
        .map(|_| if rng.gen_bool(sparse) { 0.0 } else { rng.gen_range(0.0..1.0f64).powi(2) })
        .collect();
    let top = omega + FRAC_PI_2;
    let (mut lo, mut up) = (0.0, 0.0);
    for j in 0..grid.half_len() {
        lo += w[grid.lower_index(j)] * grid.angle(grid.lower_index(j)).cos();
        let i = grid.upper_index(j);
        up += w[i] * (top - grid.angle(i)).cos();
    }
    let shared = grid.is_right().then(|| grid.upper_index(0));
    for j in 0..grid.half_len() {
        if Some(grid.lower_index(j)) != shared {
            w[grid.lower_index(j)] /= lo;
        }
        if Some(grid.upper_index(j)) != shared {
            w[grid.upper_index(j)] /= up;
        }
    }
    let beta = BoundaryMeasure::new(grid, w).unwrap();
    let (b, a) = beta.bottom_atoms();
    (b >= 0.0 && a >= 0.0).then_some(beta)
}

pub fn minkowski_sum(a: &ConvexPolygon<f64>, b: &ConvexPolygon<f64>) -> ConvexPolygon<f64> {
    let mut pts = Vec::new();
    for &p in a.vertices() {
        for &q in b.vertices() {
            pts.push(p + q);
        }
    }
    ConvexPolygon::from_vertices(hull(pts)).unwrap()
}

/// Both sides of the sweep identity for a random polygon, a random arc
/// `[t0, t1]` and a random opening angle `c`, with `y(t) = l(t) ∩ l(t + c)`:
/// `ℐ(y) + ½ y(t1)×q − ℐ(arc) − ½ y(t0)×p` and `½∫ f²`.
pub fn mamikon_sides(rng: &mut impl Rng, n: usize) -> (f64, f64) {
    let count = rng.gen_range(3..20);
    let k = random_polygon(rng, count);
    let t0 = rng.gen_range(0.0..2.0 * PI);
    let t1 = t0 + rng.gen_range(0.2..2.0 * PI);
    let c = rng.gen_range(0.4..2.6);
    // y(t) = l(t) ∩ l(t + c) moves continuously along the tangent lines.
    let y = |t: f64| {
        let (p, q) = (brute_support(&k, t), brute_support(&k, t + c));
        Vec2::unit(t) * p + Vec2::unit(t + FRAC_PI_2) * ((q - p * c.cos()) / c.sin())
    };
    let f = |t: f64| (y(t) - k.vertex_pair(t).1).dot(Vec2::unit(t + FRAC_PI_2));
    // Sample on a uniform grid refined by the angles where y or f has a kink.
    let mut ts: Vec<f64> = (0..=n).map(|i| t0 + (t1 - t0) * i as f64 / n as f64).collect();
    for &normal in k.normals() {
        for shift in [0.0, c] {
            let mut b = normal - shift;
            while b < t0 {
                b += 2.0 * PI;
            }
            while b > t0 + 2.0 * PI {
                b -= 2.0 * PI;
            }
            if b < t1 {
                ts.push(b);
            }
        }
    }
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let curve = Polyline::new(ts.iter().map(|&t| y(t)).collect());
    let arc = k.boundary_arc(t0, t1, false);
    let (p, q) = (arc.first(), arc.last());
    let lhs = curve_area(&curve) + seg(y(t1), q) - curve_area(&arc) - seg(y(t0), p);
    let rhs: f64 = 0.5 * ts.windows(2).map(|w| f(0.5 * (w[0] + w[1])).powi(2) * (w[1] - w[0])).sum::<f64>();
    (lhs, rhs)
}
