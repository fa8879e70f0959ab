use serde::{Deserialize, Serialize};

use super::{boundary_measure, iota};
use crate::convex_core::{minkowski_combine, Polyline};
use crate::hallway::rotation_path;
use crate::sofa::Cap;
use crate::{Result, Scalar};

/// Signed area `ℐ` of a curve.
pub fn curve_area<T: Scalar>(x: &Polyline<T>) -> T {
    x.curve_area()
}

/// `𝒜₁(K) = |K| − ℐ(x_K)` with the rotation path sampled at `m` angles.
pub fn a1<T: Scalar>(cap: &Cap<T>, m: usize) -> Result<T> {
    Ok(cap.area() - rotation_path(cap.support(), m)?.curve_area())
}

/// The Minkowski blend `(1 − λ)K₁ + λK₂`.
pub fn blend<T: Scalar>(k1: &Cap<T>, k2: &Cap<T>, lambda: T) -> Result<Cap<T>> {
    let p = minkowski_combine(k1.support(), k2.support(), lambda)?;
    Cap::new(*k1.grid(), p)
}

/// `D𝒜₁(K₁; K₂) = ⟨p₂ − p₁, β₁ − ι₁⟩`.
pub fn directional_derivative<T: Scalar>(k1: &Cap<T>, k2: &Cap<T>) -> Result<T> {
    k1.support().check_same_grid(k2.support())?;
    let q = |t: T| k2.polygon().support(t) - k1.polygon().support(t);
    Ok(boundary_measure(k1).pair(q) - iota(k1).pair(q))
}

/// Derivative of `|·|` along the blend from `K₁` towards `K₂`: `⟨p₂ − p₁, β₁⟩`.
pub fn area_derivative<T: Scalar>(k1: &Cap<T>, k2: &Cap<T>) -> Result<T> {
    k1.support().check_same_grid(k2.support())?;
    Ok(boundary_measure(k1).pair(|t| k2.polygon().support(t) - k1.polygon().support(t)))
}

/// `𝒜₁` along a blend, checked for concavity and quadratic shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConcavityReport<T> {
    /// `(λ, 𝒜₁(c_λ), chord value)`.
    pub rows: Vec<(T, T, T)>,
    /// Smallest `𝒜₁(c_λ) − chord`; nonnegative for a concave profile.
    pub min_gap: T,
    /// Largest deviation from the quadratic through `λ = 0, ½, 1`.
    pub quadratic_residual: T,
    pub concave: bool,
    pub quadratic: bool,
}

impl<T: Scalar> ConcavityReport<T> {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,a1,bound\n");
        for (l, v, c) in &self.rows {
            out.push_str(&format!("{l},{v},{c}\n"));
        }
        out
    }
}

pub fn concavity_probe<T: Scalar>(
    k1: &Cap<T>,
    k2: &Cap<T>,
    lambda_samples: usize,
    m: usize,
) -> Result<ConcavityReport<T>> {
    let n = lambda_samples.max(4);
    let value = |l: T| -> Result<T> { a1(&blend(k1, k2, l)?, m) };
    let (f0, f_half, f1) = (value(T::zero())?, value(T::lit(0.5))?, value(T::one())?);
    // Quadratic through the three anchor values.
    let quad = |l: T| {
        let two = T::lit(2.0);
        f0 * (two * l - T::one()) * (l - T::one()) - T::lit(4.0) * f_half * l * (l - T::one())
            + f1 * l * (two * l - T::one())
    };
    let scale = f0.abs().max(f1.abs()).max(T::one());
    let tol = T::lit(1e-9) * scale;
    let mut rows = Vec::with_capacity(n);
    let (mut min_gap, mut residual) = (T::infinity(), T::zero());
    for k in 0..n {
        let l = T::lit(k as f64 / (n - 1) as f64);
        let v = value(l)?;
        let chord = f0 * (T::one() - l) + f1 * l;
        min_gap = min_gap.min(v - chord);
        residual = residual.max((v - quad(l)).abs());
        rows.push((l, v, chord));
    }
    Ok(ConcavityReport {
        rows,
        min_gap,
        quadratic_residual: residual,
        concave: min_gap >= -tol,
        quadratic: residual <= T::lit(1e-6) * scale,
    })
}
