use crate::convex_core::{Polyline, Vec2};
use crate::hallway::Fan;
use crate::Scalar;

/// Distance below which two path pieces count as touching.
pub const TOUCH_TOL: f64 = 1e-7;

fn point_segment_dist<T: Scalar>(p: Vec2<T>, a: Vec2<T>, b: Vec2<T>) -> T {
    let d = b - a;
    let len2 = d.norm_sq();
    if len2 <= T::zero() {
        return p.dist(a);
    }
    let s = ((p - a).dot(d) / len2).max(T::zero()).min(T::one());
    p.dist(a + d * s)
}

fn segments_cross<T: Scalar>(a: Vec2<T>, b: Vec2<T>, c: Vec2<T>, d: Vec2<T>) -> bool {
    let d1 = (b - a).cross(c - a);
    let d2 = (b - a).cross(d - a);
    let d3 = (d - c).cross(a - c);
    let d4 = (d - c).cross(b - c);
    d1 * d2 < T::zero() && d3 * d4 < T::zero()
}

fn segment_dist<T: Scalar>(a: Vec2<T>, b: Vec2<T>, c: Vec2<T>, d: Vec2<T>) -> T {
    if segments_cross(a, b, c, d) {
        return T::zero();
    }
    point_segment_dist(a, c, d)
        .min(point_segment_dist(b, c, d))
        .min(point_segment_dist(c, a, b))
        .min(point_segment_dist(d, a, b))
}

/// Whether a sampled rotation path is injective and stays on the fan.
///
/// Non-adjacent segments must stay `TOUCH_TOL` apart; adjacent ones must not
/// fold back onto each other.
pub fn injectivity_check<T: Scalar>(path: &Polyline<T>, fan: &Fan<T>) -> bool {
    let pts = &path.points;
    let slack = T::lit(1e-9);
    if pts.iter().any(|&p| {
        let (a, b) = fan.levels(p);
        a > slack || b > slack
    }) {
        return false;
    }
    if pts.len() < 2 {
        return true;
    }
    let tol = T::lit(TOUCH_TOL);
    let segs: Vec<(Vec2<T>, Vec2<T>)> = pts.windows(2).map(|w| (w[0], w[1])).collect();
    if segs.iter().any(|(a, b)| a.dist(*b) <= tol) {
        return false;
    }
    for w in segs.windows(2) {
        let ((a, b), (c, d)) = (w[0], w[1]);
        if point_segment_dist(a, c, d) <= tol || point_segment_dist(d, a, b) <= tol {
            return false;
        }
    }

    // Sweep over segments ordered by their left end.
    let mut order: Vec<usize> = (0..segs.len()).collect();
    let left = |i: usize| segs[i].0.x.min(segs[i].1.x);
    let right = |i: usize| segs[i].0.x.max(segs[i].1.x);
    order.sort_by(|&i, &j| left(i).partial_cmp(&left(j)).unwrap_or(std::cmp::Ordering::Equal));
    let mut active: Vec<usize> = Vec::new();
    for &i in &order {
        let x0 = left(i);
        active.retain(|&j| right(j) + tol >= x0);
        let (a, b) = segs[i];
        let (ylo, yhi) = (a.y.min(b.y), a.y.max(b.y));
        for &j in &active {
            if i.abs_diff(j) < 2 {
                continue;
            }
            let (c, d) = segs[j];
            if c.y.max(d.y) + tol < ylo || c.y.min(d.y) - tol > yhi {
                continue;
            }
            if segment_dist(a, b, c, d) <= tol {
                return false;
            }
        }
        active.push(i);
    }
    true
}
