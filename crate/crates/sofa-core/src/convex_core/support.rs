use serde::{Deserialize, Serialize};

use super::{reduce, Angle, ConvexPolygon, Vec2};
use crate::{Error, Result, Scalar};

/// Support values `p(t_i)` on a sorted angle grid in `[0, 2π)`.
///
/// The samples describe the polygon cut out by the half-planes
/// `H(t_i, p(t_i))`; between grid angles the support is that of the corner
/// where two neighbouring lines meet, so it is exact for polygons whose edge
/// normals lie on the grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupportSamples<T> {
    pub omega: T,
    pub grid: Vec<T>,
    pub support: Vec<T>,
}

impl<T: Scalar> SupportSamples<T> {
    pub fn from_fn(omega: T, grid: Vec<T>, f: impl Fn(T) -> T) -> Self {
        let support = grid.iter().map(|&t| f(t)).collect();
        SupportSamples { omega, grid, support }
    }

    pub fn from_polygon(poly: &ConvexPolygon<T>, omega: T, grid: Vec<T>) -> Self {
        Self::from_fn(omega, grid, |t| poly.support(t))
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Grid index of `t`, if `t` is a grid angle.
    pub fn index_of(&self, t: T) -> Option<usize> {
        let n = self.grid.len();
        let a = Angle::new(t);
        let i = self.grid.partition_point(|&g| g < a.value());
        [i % n, (i + n - 1) % n, 0, n - 1]
            .into_iter()
            .find(|&j| Angle::new(self.grid[j]).same(a))
    }

    /// Indices of the grid angles on either side of `t`, counterclockwise.
    fn bracket(&self, t: T) -> (usize, usize) {
        let n = self.grid.len();
        let i = self.grid.partition_point(|&g| g < reduce(t));
        ((i + n - 1) % n, i % n)
    }

    /// `p(t)` for any `t`.
    pub fn value_at(&self, t: impl Into<Angle<T>>) -> T {
        let t = t.into();
        if let Some(i) = self.index_of(t.value()) {
            return self.support[i];
        }
        let (a, b) = self.bracket(t.value());
        match self.corner(a, b) {
            Some(v) => v.dot(t.u()),
            None => T::infinity(),
        }
    }

    /// Intersection of the grid lines `a` and `b`.
    pub fn corner(&self, a: usize, b: usize) -> Option<Vec2<T>> {
        line_intersection(self.grid[a], self.support[a], self.grid[b], self.support[b])
    }

    /// Edge weights implied by the samples: the signed distance along `v_{t_i}`
    /// between the corners on either side of line `i`.
    pub fn implied_weights(&self) -> Result<Vec<T>> {
        let n = self.grid.len();
        if n < 3 {
            return Err(Error::Invalid("need at least three support samples".into()));
        }
        let corners = self.corners()?;
        Ok((0..n)
            .map(|i| (corners[i] - corners[(i + n - 1) % n]).dot(Angle::new(self.grid[i]).v()))
            .collect())
    }

    /// `corners[i]` is where line `i` meets line `i + 1`.
    fn corners(&self) -> Result<Vec<Vec2<T>>> {
        let n = self.grid.len();
        (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                let gap = Angle::new(self.grid[i]).ccw_to(Angle::new(self.grid[j]));
                if gap >= T::PI() - T::angle_tol() {
                    return Err(Error::GapTooWide(gap.to_f64_lossy()));
                }
                self.corner(i, j).ok_or(Error::ParallelLines(
                    self.grid[i].to_f64_lossy(),
                    self.grid[j].to_f64_lossy(),
                ))
            })
            .collect()
    }

    /// The polygon `⋂ H(t_i, p(t_i))`, provided every line touches it.
    pub fn to_polygon(&self) -> Result<ConvexPolygon<T>> {
        let n = self.grid.len();
        let weights = self.implied_weights()?;
        let scale = self.support.iter().fold(T::one(), |m, &p| m.max(p.abs()));
        let tol = T::geom_tol() * scale;
        if let Some(i) = (0..n).find(|&i| weights[i] < -tol) {
            return Err(Error::NegativeEdge {
                angle: self.grid[i].to_f64_lossy(),
                weight: weights[i].to_f64_lossy(),
            });
        }
        let corners = self.corners()?;
        let mut vertices = Vec::new();
        let mut normals = Vec::new();
        for i in 0..n {
            if weights[i] > tol {
                vertices.push(corners[(i + n - 1) % n]);
                normals.push(reduce(self.grid[i]));
            }
        }
        if vertices.is_empty() {
            vertices.push(corners[0]);
        }
        Ok(ConvexPolygon::from_parts(vertices, normals))
    }

    /// Checks that `other` has the same ω and grid.
    pub fn check_same_grid(&self, other: &SupportSamples<T>) -> Result<()> {
        let same = self.grid.len() == other.grid.len()
            && (self.omega - other.omega).abs() <= T::angle_tol()
            && self.grid.iter().zip(&other.grid).all(|(a, b)| (*a - *b).abs() <= T::angle_tol());
        if same {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub fn map(&self, f: impl Fn(T, T) -> T) -> Self {
        SupportSamples {
            omega: self.omega,
            grid: self.grid.clone(),
            support: self.grid.iter().zip(&self.support).map(|(&t, &p)| f(t, p)).collect(),
        }
    }

    /// Support of the translate by `d`.
    pub fn translate(&self, d: Vec2<T>) -> Self {
        self.map(|t, p| p + d.dot(Vec2::unit(t)))
    }
}

/// `l(t1, h1) ∩ l(t2, h2)` by the closed form
/// `h1 u_{t1} + (h2 − h1 cos(t2 − t1)) / sin(t2 − t1) · v_{t1}`.
pub fn line_intersection<T: Scalar>(t1: T, h1: T, t2: T, h2: T) -> Option<Vec2<T>> {
    let (s, c) = (t2 - t1).sin_cos();
    if s.abs() <= T::angle_tol() {
        return None;
    }
    let a = Angle::new(t1);
    Some(a.u() * h1 + a.v() * ((h2 - h1 * c) / s))
}
