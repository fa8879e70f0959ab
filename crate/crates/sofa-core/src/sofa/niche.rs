use serde::{Deserialize, Serialize};

use super::Cap;
use crate::hallway::inner_corner;
use crate::Scalar;

/// Sample counts used by [`sofa_area`].
pub const DEFAULT_SAMPLES: usize = 4096;

/// Slab-scan approximation of the niche `𝒩(K)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NicheRegion<T> {
    /// Column centres with the niche's upper and lower heights there.
    /// `upper == lower` marks an empty column.
    pub columns: Vec<(T, T, T)>,
    pub area: T,
}

impl<T: Scalar> NicheRegion<T> {
    pub fn is_empty(&self) -> bool {
        self.area <= T::zero()
    }

    /// Rows `x,y_lower,y_upper`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,y_lower,y_upper\n");
        for (x, hi, lo) in &self.columns {
            out.push_str(&format!("{x},{lo},{hi}\n"));
        }
        out
    }
}

/// Angles `ω k / (samples − 1)`, `k = 0..samples`.
fn angle_samples<T: Scalar>(omega: T, samples: usize) -> impl Iterator<Item = T> {
    let n = samples.max(2);
    let step = omega / T::lit((n - 1) as f64);
    (0..n).map(move |k| if k == n - 1 { omega } else { step * T::lit(k as f64) })
}

/// `𝒩(K) = F_ω ∩ ⋃_t Q⁻(t)` by a vertical-slab scan.
///
/// A vertical line meets each open quadrant `Q⁻(t)`, `0 < t < π/2`, in a
/// downward ray, so over every column the union is bounded above by the
/// largest ceiling and below by the fan.
pub fn niche<T: Scalar>(cap: &Cap<T>, t_samples: usize, x_samples: usize) -> NicheRegion<T> {
    let poly = cap.polygon();
    let fan = cap.fan();
    let tol = T::angle_tol();
    // (cos t, sin t, p(t) − 1, p(t + π/2) − 1) for quadrants that can reach above the floor.
    let walls: Vec<(T, T, T, T)> = angle_samples(cap.omega(), t_samples)
        .filter_map(|t| {
            let (s, c) = t.sin_cos();
            (s > tol && c > tol).then(|| {
                (c, s, poly.support(t) - T::one(), poly.support(t + T::FRAC_PI_2()) - T::one())
            })
        })
        .collect();

    let (lo, hi) = (-poly.support(T::PI()), poly.support(T::zero()));
    let cols = x_samples.max(1);
    let dx = (hi - lo) / T::lit(cols as f64);
    let mut area = T::zero();
    let columns = (0..cols)
        .map(|k| {
            let x = lo + dx * (T::lit(k as f64) + T::lit(0.5));
            let floor = fan.floor(x);
            let mut top = floor;
            for &(c, s, b, d) in &walls {
                let ceil = ((b - x * c) / s).min((d + x * s) / c);
                if ceil > top {
                    top = ceil;
                }
            }
            area += (top - floor) * dx;
            (x, top, floor)
        })
        .collect();
    NicheRegion { columns, area }
}

/// Whether, at every sampled angle, the inner corner lies outside the open
/// fan or inside `K`. Equivalent to `𝒩(K) ⊆ K`.
pub fn niche_contained<T: Scalar>(cap: &Cap<T>, t_samples: usize) -> bool {
    let fan = cap.fan();
    let tol = T::geom_tol();
    angle_samples(cap.omega(), t_samples).all(|t| {
        let x = inner_corner(cap.support(), t);
        !fan.contains_open(x, tol) || cap.polygon().contains(x, tol)
    })
}

/// `𝒜(K) = |K| − |𝒩(K)|` together with the containment flag.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SofaArea<T> {
    pub area: T,
    pub cap_area: T,
    pub niche_area: T,
    /// When false the value is not the area of a sofa.
    pub niche_contained: bool,
}

pub fn sofa_area<T: Scalar>(cap: &Cap<T>) -> SofaArea<T> {
    sofa_area_with(cap, DEFAULT_SAMPLES, DEFAULT_SAMPLES)
}

pub fn sofa_area_with<T: Scalar>(cap: &Cap<T>, t_samples: usize, x_samples: usize) -> SofaArea<T> {
    let niche_area = niche(cap, t_samples, x_samples).area;
    let cap_area = cap.area();
    SofaArea {
        area: cap_area - niche_area,
        cap_area,
        niche_area,
        niche_contained: niche_contained(cap, t_samples),
    }
}
