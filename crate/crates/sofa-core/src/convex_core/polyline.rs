use super::Vec2;
use crate::Scalar;

/// A sampled curve.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Polyline<T> {
    pub points: Vec<Vec2<T>>,
}

impl<T: Scalar> Polyline<T> {
    pub fn new(points: Vec<Vec2<T>>) -> Self {
        Polyline { points }
    }

    /// Signed curve area `½ Σ xᵢ × xᵢ₊₁`.
    pub fn curve_area(&self) -> T {
        let half = T::lit(0.5);
        self.points.windows(2).map(|w| w[0].cross(w[1]) * half).sum()
    }

    pub fn length(&self) -> T {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    pub fn first(&self) -> Vec2<T> {
        self.points[0]
    }

    pub fn last(&self) -> Vec2<T> {
        self.points[self.points.len() - 1]
    }

    /// Joins `other` after `self`, skipping its first point if it repeats our last.
    pub fn concat(&self, other: &Polyline<T>) -> Polyline<T> {
        let mut points = self.points.clone();
        let skip = match (points.last(), other.points.first()) {
            (Some(a), Some(b)) if a == b => 1,
            _ => 0,
        };
        points.extend(other.points.iter().skip(skip).copied());
        Polyline { points }
    }
}

/// Curve area of the segment from `p` to `q`, `½ p × q`.
pub fn segment_area<T: Scalar>(p: Vec2<T>, q: Vec2<T>) -> T {
    p.cross(q) * T::lit(0.5)
}
