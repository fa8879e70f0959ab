use serde::{Deserialize, Serialize};

use crate::convex_core::{gauss_minkowski, line_intersection, Angle, AngularMeasure, CapGrid, Vec2};
use crate::hallway::arm_lengths;
use crate::sofa::Cap;
use crate::{Error, Result, Scalar};

/// `β_K`: edge lengths of the upper boundary, one weight per slot of `J_ω`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryMeasure<T> {
    pub grid: CapGrid<T>,
    pub weights: Vec<T>,
}

impl<T: Scalar> BoundaryMeasure<T> {
    pub fn new(grid: CapGrid<T>, weights: Vec<T>) -> Result<Self> {
        if weights.len() != grid.j_len() {
            return Err(Error::GridMismatch);
        }
        Ok(BoundaryMeasure { grid, weights })
    }

    /// Snaps the atoms (and discretized density) of `mu` onto the slots of `grid`.
    pub fn from_measure(grid: CapGrid<T>, mu: &AngularMeasure<T>) -> Result<Self> {
        let mut weights = vec![T::zero(); grid.j_len()];
        for (t, w) in mu.discretize().atoms {
            let a = Angle::new(t);
            let i = (0..grid.j_len())
                .find(|&i| a.same(Angle::new(grid.angle(i))))
                .ok_or_else(|| Error::Invalid(format!("atom at {} is off the grid", t.to_f64_lossy())))?;
            weights[i] += w;
        }
        Ok(BoundaryMeasure { grid, weights })
    }

    pub fn to_measure(&self) -> AngularMeasure<T> {
        AngularMeasure::from_atoms(self.slots().collect())
    }

    /// `(angle, weight)` for every slot of `J_ω`.
    pub fn slots(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.weights.iter().enumerate().map(|(i, &w)| (self.grid.angle(i), w))
    }

    pub fn pair(&self, f: impl Fn(T) -> T) -> T {
        self.slots().map(|(t, w)| f(t) * w).sum()
    }

    /// `(∫_{[0,ω]} cos t β(dt), ∫_{[π/2, ω+π/2]} cos(ω + π/2 − t) β(dt))`, both 1 for caps.
    pub fn constraints(&self) -> (T, T) {
        let g = &self.grid;
        let top = g.omega() + T::FRAC_PI_2();
        let lower = (0..g.half_len()).map(|j| self.weights[g.lower_index(j)] * g.angle(j).cos()).sum();
        let upper = (0..g.half_len())
            .map(|j| {
                let i = g.upper_index(j);
                self.weights[i] * (top - g.angle(i)).cos()
            })
            .sum();
        (lower, upper)
    }

    /// Weights `(σ{π + ω}, σ{3π/2})` closing the boundary. For `ω = π/2` the
    /// two normals coincide and the first entry is zero.
    pub fn bottom_atoms(&self) -> (T, T) {
        let s = self.slots().fold(Vec2::zero(), |acc, (t, w)| acc + Angle::new(t).v() * w);
        if self.grid.is_right() {
            (T::zero(), -s.x)
        } else {
            let (sin, cos) = self.grid.omega().sin_cos();
            let b = s.y / cos;
            (b, -s.x - b * sin)
        }
    }

    pub fn total_mass(&self) -> T {
        self.weights.iter().copied().sum()
    }

    pub fn scale(&self, s: T) -> Self {
        BoundaryMeasure { grid: self.grid, weights: self.weights.iter().map(|&w| w * s).collect() }
    }
}

impl<T: Scalar + Serialize> Serialize for BoundaryMeasure<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_measure().serialize(s)
    }
}

/// Restriction of `σ_K` to `J_ω`.
pub fn boundary_measure<T: Scalar>(cap: &Cap<T>) -> BoundaryMeasure<T> {
    let grid = *cap.grid();
    let mut weights = cap.slot_weights();
    weights.truncate(grid.j_len());
    BoundaryMeasure { grid, weights }
}

/// The cap with boundary measure `β`, in standard position.
///
/// The two bottom atoms are whatever closes the boundary; for `ω = π/2` the
/// cap is centred so that the midpoint of its `u_0`-extent is at `x = 1`.
pub fn cap_from_boundary<T: Scalar>(beta: &BoundaryMeasure<T>) -> Result<Cap<T>> {
    let grid = beta.grid;
    let omega = grid.omega();
    if let Some((i, &w)) = beta.weights.iter().enumerate().find(|(_, &w)| w < T::zero()) {
        return Err(Error::NegativeEdge { angle: grid.angle(i).to_f64_lossy(), weight: w.to_f64_lossy() });
    }
    let (c1, c2) = beta.constraints();
    let tol = T::geom_tol() * (T::one() + beta.total_mass());
    for (which, c) in [(1, c1), (2, c2)] {
        if (c - T::one()).abs() > tol {
            return Err(Error::Constraint { which, value: c.to_f64_lossy() });
        }
    }
    let (b, a) = beta.bottom_atoms();
    let atom_tol = -tol;
    if b < atom_tol {
        return Err(Error::NegativeBottomAtom(b.to_f64_lossy()));
    }
    if a < atom_tol {
        return Err(Error::NegativeBottomAtom(a.to_f64_lossy()));
    }

    let mut atoms: Vec<(T, T)> = beta.slots().collect();
    atoms.push((T::PI() + omega, b.max(T::zero())));
    atoms.push((T::lit(1.5) * T::PI(), a.max(T::zero())));
    let body = gauss_minkowski(&AngularMeasure::from_atoms(atoms), tol.max(T::lit(1e-7)))?;

    let (p_slant, p_floor) = (body.support(T::PI() + omega), body.support(T::lit(1.5) * T::PI()));
    let shift = if grid.is_right() {
        let mid = (body.support(T::zero()) - body.support(T::PI())) / T::lit(2.0);
        Vec2::new(T::one() - mid, p_floor)
    } else {
        let corner = line_intersection(T::PI() + omega, p_slant, T::lit(1.5) * T::PI(), p_floor)
            .ok_or(Error::ParallelLines((T::PI() + omega).to_f64_lossy(), 1.5 * std::f64::consts::PI))?;
        -corner
    };
    Cap::from_polygon(grid, body.translate(shift))
}

/// `ι_K`: density `h⁺(t) − 1` on `[0, ω]` and `g⁺(t) − 1` on `[π/2, ω + π/2]`,
/// sampled at the cell midpoints.
///
/// Midpoints carry the edges of `K`, where `h` and `g` jump; the sample is
/// the mean of the two one-sided values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IotaMeasure<T> {
    pub omega: T,
    pub step: T,
    /// `(t, i(t))` at the lower midpoints.
    pub lower: Vec<(T, T)>,
    /// `(t, i(t + π/2))` at the same `t`.
    pub upper: Vec<(T, T)>,
}

impl<T: Scalar> IotaMeasure<T> {
    /// `⟨f, ι⟩` by the midpoint rule.
    pub fn pair(&self, f: impl Fn(T) -> T) -> T {
        let lo: T = self.lower.iter().map(|&(t, i)| f(t) * i).sum();
        let up: T = self.upper.iter().map(|&(t, i)| f(t + T::FRAC_PI_2()) * i).sum();
        (lo + up) * self.step
    }

    pub fn to_measure(&self) -> AngularMeasure<T> {
        let density = self
            .lower
            .iter()
            .copied()
            .chain(self.upper.iter().map(|&(t, i)| (t + T::FRAC_PI_2(), i)))
            .collect();
        AngularMeasure::from_density(density, self.step)
    }
}

pub fn iota<T: Scalar>(cap: &Cap<T>) -> IotaMeasure<T> {
    let grid = cap.grid();
    let half = T::lit(0.5);
    let (lower, upper) = (1..=grid.cells())
        .map(|j| {
            let t = grid.lower_angle(j);
            let arms = arm_lengths(cap.polygon(), t);
            let h = (arms.h_minus + arms.h_plus) * half;
            let g = (arms.g_minus + arms.g_plus) * half;
            ((t, h - T::one()), (t, g - T::one()))
        })
        .unzip();
    IotaMeasure { omega: grid.omega(), step: grid.step(), lower, upper }
}
