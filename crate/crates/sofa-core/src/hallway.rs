//! Tangent hallways of a body: walls, inner and outer corners, rotation
//! paths, arm lengths and wedges.

use crate::convex_core::{
    line_intersection, vertex_intersection, Angle, ConvexPolygon, Polyline, SupportSamples, Vec2,
};
use crate::{Error, Result, Scalar};

/// The line `l(t, h) = {p : p · u_t = h}`; as a region, the half-plane `H(t, h)` below it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line<T> {
    pub normal: T,
    pub offset: T,
}

impl<T: Scalar> Line<T> {
    pub fn new(normal: T, offset: T) -> Self {
        Line { normal, offset }
    }

    /// Signed distance `p · u_t − h`; negative inside `H(t, h)`.
    pub fn eval(&self, p: Vec2<T>) -> T {
        p.dot(Vec2::unit(self.normal)) - self.offset
    }

    pub fn meet(&self, other: &Line<T>) -> Option<Vec2<T>> {
        line_intersection(self.normal, self.offset, other.normal, other.offset)
    }
}

/// The tangent hallway `L_S(t)`: outer walls `a`, `c` touch the body, inner
/// walls `b`, `d` meet at the inner corner `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HallwayPose<T> {
    pub t: T,
    pub x: Vec2<T>,
    pub y: Vec2<T>,
    pub a: Line<T>,
    pub b: Line<T>,
    pub c: Line<T>,
    pub d: Line<T>,
}

impl<T: Scalar> HallwayPose<T> {
    /// Membership in the open inner quadrant `Q⁻(t)`.
    pub fn in_inner_quadrant(&self, p: Vec2<T>) -> bool {
        self.b.eval(p) < T::zero() && self.d.eval(p) < T::zero()
    }
}

/// The fan `F_ω = H(π + ω, 0) ∩ H(3π/2, 0)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Fan<T> {
    pub omega: T,
}

impl<T: Scalar> Fan<T> {
    pub fn new(omega: T) -> Self {
        Fan { omega }
    }

    /// `(p · u_{π+ω}, p · u_{3π/2})`; both `≤ 0` inside the fan.
    pub fn levels(&self, p: Vec2<T>) -> (T, T) {
        let (s, c) = self.omega.sin_cos();
        (-(p.x * c + p.y * s), -p.y)
    }

    pub fn contains(&self, p: Vec2<T>, tol: T) -> bool {
        let (a, b) = self.levels(p);
        a <= tol && b <= tol
    }

    /// Strict interior with margin `tol`.
    pub fn contains_open(&self, p: Vec2<T>, tol: T) -> bool {
        let (a, b) = self.levels(p);
        a < -tol && b < -tol
    }

    /// Height of the fan's lower boundary above abscissa `x`.
    pub fn floor(&self, x: T) -> T {
        if self.omega >= T::FRAC_PI_2() || x >= T::zero() {
            T::zero()
        } else {
            -x / self.omega.tan()
        }
    }

    /// The corner `o_ω = l(ω, 1) ∩ l(π/2, 1)` of `P_ω` opposite the origin.
    /// For `ω = π/2` the two lines coincide and `(1, 1)` is used, matching the
    /// frame in which right-angle caps are centred.
    pub fn apex(&self) -> Vec2<T> {
        if self.omega >= T::FRAC_PI_2() - T::angle_tol() {
            return Vec2::new(T::one(), T::one());
        }
        let (s, c) = self.omega.sin_cos();
        Vec2::new((T::one() - s) / c, T::one())
    }

    pub fn bottom_lines(&self) -> [Line<T>; 2] {
        [Line::new(T::PI() + self.omega, T::zero()), Line::new(T::lit(1.5) * T::PI(), T::zero())]
    }
}

fn check_range<T: Scalar>(omega: T, t: T) -> Result<()> {
    let tol = T::angle_tol();
    if t < -tol || t > omega + tol {
        return Err(Error::AngleOutOfRange(t.to_f64_lossy()));
    }
    Ok(())
}

/// Inner corner `x(t) = (p(t) − 1)u_t + (p(t + π/2) − 1)v_t`.
pub fn inner_corner<T: Scalar>(p: &SupportSamples<T>, t: T) -> Vec2<T> {
    let a = Angle::new(t);
    a.u() * (p.value_at(t) - T::one()) + a.v() * (p.value_at(t + T::FRAC_PI_2()) - T::one())
}

pub fn tangent_hallway<T: Scalar>(p: &SupportSamples<T>, t: T) -> Result<HallwayPose<T>> {
    check_range(p.omega, t)?;
    let q = t + T::FRAC_PI_2();
    let (pt, pq) = (p.value_at(t), p.value_at(q));
    let a = Angle::new(t);
    let x = a.u() * (pt - T::one()) + a.v() * (pq - T::one());
    Ok(HallwayPose {
        t,
        x,
        y: x + a.u() + a.v(),
        a: Line::new(t, pt),
        b: Line::new(t, pt - T::one()),
        c: Line::new(q, pq),
        d: Line::new(q, pq - T::one()),
    })
}

/// One-sided arm lengths: `y = A± + g± v_t = C± + h± u_t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArmLengths<T> {
    pub g_minus: T,
    pub g_plus: T,
    pub h_minus: T,
    pub h_plus: T,
}

pub fn arm_lengths<T: Scalar>(poly: &ConvexPolygon<T>, t: T) -> ArmLengths<T> {
    let a = Angle::new(t);
    let (am, ap) = poly.vertex_pair(t);
    let (cm, cp) = poly.vertex_pair(t + T::FRAC_PI_2());
    ArmLengths {
        g_minus: (cm - am).dot(a.v()),
        g_plus: (cp - ap).dot(a.v()),
        h_minus: (am - cm).dot(a.u()),
        h_plus: (ap - cp).dot(a.u()),
    }
}

/// The inner corner sampled at `m` equally spaced angles of `[0, ω]`.
pub fn rotation_path<T: Scalar>(p: &SupportSamples<T>, m: usize) -> Result<Polyline<T>> {
    if m < 2 {
        return Err(Error::Invalid("rotation path needs at least two samples".into()));
    }
    let step = p.omega / T::lit((m - 1) as f64);
    Ok(Polyline::new(
        (0..m).map(|i| inner_corner(p, if i == m - 1 { p.omega } else { step * T::lit(i as f64) })).collect(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// One-sided derivative `−(g − 1)u_t + (h − 1)v_t` of the inner corner.
pub fn corner_derivative<T: Scalar>(poly: &ConvexPolygon<T>, t: T, side: Side) -> Vec2<T> {
    let arms = arm_lengths(poly, t);
    let (g, h) = match side {
        Side::Plus => (arms.g_plus, arms.h_plus),
        Side::Minus => (arms.g_minus, arms.h_minus),
    };
    let a = Angle::new(t);
    a.u() * (T::one() - g) + a.v() * (h - T::one())
}

/// `T(t) = F_ω ∩ Q⁻(t)` with the wall points `W`, `Z` and offsets `w`, `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct Wedge<T> {
    pub t: T,
    pub polygon: Option<ConvexPolygon<T>>,
    pub w_point: Vec2<T>,
    pub z_point: Vec2<T>,
    pub w: T,
    pub z: T,
}

pub fn wedge<T: Scalar>(p: &SupportSamples<T>, t: T) -> Result<Wedge<T>> {
    let omega = p.omega;
    if t <= T::zero() || t >= omega {
        return Err(Error::AngleOutOfRange(t.to_f64_lossy()));
    }
    let pose = tangent_hallway(p, t)?;
    let fan = Fan::new(omega);
    let bottom = T::lit(1.5) * T::PI();
    let a0 = vertex_intersection(p, bottom, T::zero())?;
    let c_omega = vertex_intersection(p, omega + T::FRAC_PI_2(), T::PI() + omega)?;
    let [slant, floor] = fan.bottom_lines();
    let w_point = pose.b.meet(&floor).ok_or(Error::ParallelLines(t.to_f64_lossy(), bottom.to_f64_lossy()))?;
    let z_point = pose
        .d
        .meet(&Line::new(omega, T::zero()))
        .ok_or(Error::ParallelLines(t.to_f64_lossy(), omega.to_f64_lossy()))?;

    let reach = p.support.iter().fold(T::one(), |m, &s| m.max(s.abs()));
    let r = T::lit(10.0) + T::lit(4.0) * reach;
    let mut region = Some(ConvexPolygon::rect(Vec2::new(-r, -r), Vec2::new(r, r)));
    for line in [slant, floor, pose.b, pose.d] {
        region = region.and_then(|poly| poly.clip(line.normal, line.offset));
    }
    let polygon = region.filter(|poly| poly.area() > T::geom_tol());

    Ok(Wedge {
        t,
        polygon,
        w_point,
        z_point,
        w: (a0 - w_point).x,
        z: (c_omega - z_point).dot(Angle::new(omega).v()),
    })
}
