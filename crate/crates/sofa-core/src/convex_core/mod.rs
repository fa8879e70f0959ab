//! Planar convex bodies at polygon precision: support functions, vertices,
//! surface area measures, mixed volumes and Gauss–Minkowski reconstruction.

mod angle;
mod grid;
mod measure;
mod polygon;
mod polyline;
mod support;
mod vec2;

pub use angle::{reduce, Angle};
pub use grid::{snap_omega, CapGrid};
pub use measure::AngularMeasure;
pub use polygon::{clip_half_plane, ConvexPolygon};
pub use polyline::{segment_area, Polyline};
pub use support::{line_intersection, SupportSamples};
pub use vec2::Vec2;

use crate::{Error, Result, Scalar};

/// `max v·u_t` over the vertices.
pub fn support_of_polygon<T: Scalar>(poly: &ConvexPolygon<T>, t: impl Into<Angle<T>>) -> T {
    poly.support(t)
}

/// `(v⁻(t), v⁺(t))`.
pub fn vertex_pair<T: Scalar>(poly: &ConvexPolygon<T>, t: impl Into<Angle<T>>) -> (Vec2<T>, Vec2<T>) {
    poly.vertex_pair(t)
}

/// The corner where the tangent lines at `t1` and `t2` meet.
pub fn vertex_intersection<T: Scalar>(p: &SupportSamples<T>, t1: T, t2: T) -> Result<Vec2<T>> {
    line_intersection(t1, p.value_at(t1), t2, p.value_at(t2))
        .ok_or(Error::ParallelLines(t1.to_f64_lossy(), t2.to_f64_lossy()))
}

/// Support of `(1 − λ)K₁ + λK₂`.
pub fn minkowski_combine<T: Scalar>(
    p1: &SupportSamples<T>,
    p2: &SupportSamples<T>,
    lambda: T,
) -> Result<SupportSamples<T>> {
    p1.check_same_grid(p2)?;
    let mu = T::one() - lambda;
    Ok(SupportSamples {
        omega: p1.omega,
        grid: p1.grid.clone(),
        support: p1.support.iter().zip(&p2.support).map(|(&a, &b)| mu * a + lambda * b).collect(),
    })
}

/// `p(t) + p(t + π)`.
pub fn width<T: Scalar>(p: &SupportSamples<T>, t: T) -> T {
    p.value_at(t) + p.value_at(t + T::PI())
}

pub fn polygon_area<T: Scalar>(poly: &ConvexPolygon<T>) -> T {
    poly.area()
}

pub fn surface_measure<T: Scalar>(poly: &ConvexPolygon<T>) -> AngularMeasure<T> {
    poly.surface_measure()
}

/// `½⟨p, σ⟩`.
pub fn area_via_measure<T: Scalar>(p: &SupportSamples<T>, sigma: &AngularMeasure<T>) -> T {
    mixed_volume(p, sigma)
}

/// `V(K₁, K₂) = ½⟨p₁, σ₂⟩`.
pub fn mixed_volume<T: Scalar>(p1: &SupportSamples<T>, sigma2: &AngularMeasure<T>) -> T {
    sigma2.pair(|t| p1.value_at(t)) * T::lit(0.5)
}

/// Rebuilds the polygon with surface measure `σ`, first vertex at the origin.
///
/// Densities are turned into atoms at their cell midpoints. Fails when
/// `|∫ v_t σ(dt)|` exceeds `tol`.
pub fn gauss_minkowski<T: Scalar>(sigma: &AngularMeasure<T>, tol: T) -> Result<ConvexPolygon<T>> {
    let atoms = sigma.discretize();
    let defect = atoms.closure().norm();
    if defect > tol {
        return Err(Error::ClosureViolation(defect.to_f64_lossy()));
    }
    if let Some(&(t, w)) = atoms.atoms.iter().find(|&&(_, w)| w < T::zero()) {
        return Err(Error::NegativeEdge { angle: t.to_f64_lossy(), weight: w.to_f64_lossy() });
    }
    let edges: Vec<(T, T)> = atoms.atoms.into_iter().filter(|&(_, w)| w > T::zero()).collect();
    Ok(ConvexPolygon::from_edge_chain(Vec2::zero(), &edges))
}

/// Boundary chain from `v⁺(t0)` to `v⁺(t1)` through the edges with normals in `(t0, t1]`.
pub fn boundary_arc<T: Scalar>(poly: &ConvexPolygon<T>, t0: T, t1: T) -> Polyline<T> {
    poly.boundary_arc(t0, t1, false)
}

/// As [`boundary_arc`] but over `[t0, t1]`, starting at `v⁻(t0)`.
pub fn boundary_arc_closed<T: Scalar>(poly: &ConvexPolygon<T>, t0: T, t1: T) -> Polyline<T> {
    poly.boundary_arc(t0, t1, true)
}
