use serde::{Deserialize, Serialize};

use super::Vec2;
use crate::Scalar;

/// A direction on the circle R/2πZ, stored reduced to `[0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle<T>(T);

impl<T: Scalar> Angle<T> {
    pub fn new(radians: T) -> Self {
        Angle(reduce(radians))
    }

    pub fn value(self) -> T {
        self.0
    }

    /// Unit normal `u_t = (cos t, sin t)`.
    pub fn u(self) -> Vec2<T> {
        Vec2::unit(self.0)
    }

    /// Unit tangent `v_t = (-sin t, cos t)`.
    pub fn v(self) -> Vec2<T> {
        Vec2::unit(self.0).perp()
    }

    pub fn add(self, delta: T) -> Self {
        Angle::new(self.0 + delta)
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 2π)`.
    pub fn ccw_to(self, other: Angle<T>) -> T {
        reduce(other.0 - self.0)
    }

    /// The representative of `self` in `[base, base + 2π)`.
    pub fn lift_from(self, base: T) -> T {
        base + reduce(self.0 - base)
    }

    /// Membership in the closed arc running counterclockwise from `start` to `end`.
    pub fn in_arc(self, start: Angle<T>, end: Angle<T>) -> bool {
        let tol = T::angle_tol();
        let len = start.ccw_to(end);
        let pos = start.ccw_to(self);
        pos <= len + tol || pos >= T::TAU() - tol
    }

    /// Equality up to [`Scalar::ANGLE_TOL`], respecting wrap-around.
    pub fn same(self, other: Angle<T>) -> bool {
        let d = self.ccw_to(other);
        d <= T::angle_tol() || d >= T::TAU() - T::angle_tol()
    }
}

impl<T: Scalar> From<T> for Angle<T> {
    fn from(v: T) -> Self {
        Angle::new(v)
    }
}

/// Reduces to `[0, 2π)`.
pub fn reduce<T: Scalar>(t: T) -> T {
    let tau = T::TAU();
    let r = t % tau;
    let r = if r < T::zero() { r + tau } else { r };
    if r >= tau {
        T::zero()
    } else {
        r
    }
}
