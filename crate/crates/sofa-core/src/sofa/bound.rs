use crate::convex_core::{ConvexPolygon, Vec2};
use crate::{Error, Result, Scalar};

/// Translation search used by [`polygonal_bound`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundSearch {
    /// Grid points per coordinate for the coarse pass.
    pub grid: usize,
    /// Coordinates range over `[-range, range]`.
    pub range: f64,
    /// Final step of the pattern search.
    pub tol: f64,
}

impl Default for BoundSearch {
    fn default() -> Self {
        BoundSearch { grid: 61, range: 3.0, tol: 1e-9 }
    }
}

// The hallway L split into the horizontal arm {x ≤ 1, 0 ≤ y ≤ 1} and the
// rest of the vertical arm {0 ≤ x ≤ 1, y ≤ 0}, as (normal, offset) cuts.
fn arms<T: Scalar>() -> [Vec<(T, T)>; 2] {
    let (pi, half) = (T::PI(), T::FRAC_PI_2());
    [
        vec![(T::zero(), T::one()), (half, T::one()), (pi + half, T::zero())],
        vec![(T::zero(), T::one()), (pi, T::zero()), (half, T::zero())],
    ]
}

/// Area of `H ∩ ⋂_k (R_{θ_k} L + s_k)` with `H = ℝ × [0, 1]`.
pub fn polygonal_intersection_area<T: Scalar>(theta: &[T], shifts: &[Vec2<T>]) -> T {
    let reach = shifts.iter().fold(T::zero(), |m, s| m.max(s.norm()));
    let min_sin = theta.iter().fold(T::one(), |m, t| m.min(t.sin().abs().min(t.cos().abs())));
    let x = reach + T::lit(4.0) / min_sin.max(T::lit(1e-3)) + T::lit(4.0);
    let strip = ConvexPolygon::rect(Vec2::new(-x, T::zero()), Vec2::new(x, T::one()));
    let pieces = arms::<T>();
    let mut total = T::zero();
    for choice in 0..(1usize << theta.len()) {
        let mut region = Some(strip.clone());
        for (k, (&t, &s)) in theta.iter().zip(shifts).enumerate() {
            for &(n, h) in &pieces[(choice >> k) & 1] {
                let normal = n + t;
                region = region.and_then(|p| p.clip(normal, h + s.dot(Vec2::unit(normal))));
            }
        }
        if let Some(p) = region {
            total += p.area();
        }
    }
    total
}

/// Hammersley-type upper bound: the largest area of `H ∩ ⋂_{t ∈ Θ} L_t` over
/// translations of the rotated hallways.
///
/// Moving everything horizontally preserves the area, so the first hallway
/// only moves vertically.
pub fn polygonal_bound<T: Scalar>(theta: &[T], search: &BoundSearch) -> Result<T> {
    if theta.is_empty() {
        return Err(Error::EmptyAngles);
    }
    if let Some(&t) = theta.iter().find(|&&t| t <= T::zero() || t >= T::FRAC_PI_2()) {
        return Err(Error::AngleOutOfRange(t.to_f64_lossy()));
    }
    let dims = 2 * theta.len() - 1;
    let eval = |c: &[T]| {
        let shifts: Vec<Vec2<T>> = (0..theta.len())
            .map(|k| if k == 0 { Vec2::new(T::zero(), c[0]) } else { Vec2::new(c[2 * k - 1], c[2 * k]) })
            .collect();
        polygonal_intersection_area(theta, &shifts)
    };

    // Coarse grid, thinned in higher dimensions to keep the pass affordable.
    let range = T::lit(search.range);
    let per_dim = {
        let mut g = search.grid.max(2);
        while dims > 1 && g.checked_pow(dims as u32).is_none_or(|n| n > 200_000) && g > 5 {
            g = (g - 1) / 2 + 1;
        }
        g
    };
    let step = T::lit(2.0) * range / T::lit((per_dim - 1) as f64);
    let mut best = vec![-range; dims];
    let mut best_val = T::neg_infinity();
    let mut idx = vec![0usize; dims];
    loop {
        let c: Vec<T> = idx.iter().map(|&i| -range + step * T::lit(i as f64)).collect();
        let v = eval(&c);
        if v > best_val {
            best_val = v;
            best = c;
        }
        let mut k = 0;
        while k < dims {
            idx[k] += 1;
            if idx[k] < per_dim {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == dims {
            break;
        }
    }

    // Compass search from the best grid point.
    let mut h = step;
    let tol = T::lit(search.tol);
    while h > tol {
        let mut improved = false;
        for k in 0..dims {
            for dir in [T::one(), -T::one()] {
                let mut c = best.clone();
                c[k] += dir * h;
                let v = eval(&c);
                if v > best_val {
                    best_val = v;
                    best = c;
                    improved = true;
                }
            }
        }
        if !improved {
            h /= T::lit(2.0);
        }
    }
    Ok(best_val)
}
