//! The maximizer `K_{ω,1}` of `𝒜₁`, the curves bounding `S₁`, and a
//! verification report for the optimality conditions.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::convex_core::{CapGrid, Polyline, Vec2};
use crate::functional::{a1, boundary_measure, cap_from_boundary, directional_derivative, iota, BoundaryMeasure};
use crate::hallway::Fan;
use crate::sofa::Cap;
use crate::{Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximizerSpec<T> {
    pub omega: T,
    /// Grid cells per unit angle.
    pub n: usize,
}

impl<T: Scalar> MaximizerSpec<T> {
    pub fn new(omega: T, n: usize) -> Self {
        MaximizerSpec { omega, n }
    }

    pub fn grid(&self) -> Result<CapGrid<T>> {
        CapGrid::new(self.omega, self.n)
    }
}

/// The boundary measure of `K_{ω,1}` on `grid`: density `ω − t` on `[0, ω)`
/// and `t` on `(π/2, ω + π/2]`, plus unit atoms at `ω` and `π/2` (a single
/// atom 2 when they coincide).
///
/// For `ω < π/2` the atom at `ω` (resp. `π/2`) absorbs the quadrature error so
/// that both constraints hold exactly; for `ω = π/2` the densities are rescaled.
pub fn maximizer_measure<T: Scalar>(grid: CapGrid<T>) -> BoundaryMeasure<T> {
    let omega = grid.omega();
    let step = grid.step();
    let top = omega + T::FRAC_PI_2();
    let mut w = vec![T::zero(); grid.j_len()];
    for j in 1..=grid.cells() {
        let t = grid.lower_angle(j);
        w[grid.lower_index(j)] = (omega - t) * step;
        w[grid.upper_index(j)] = t * step;
    }
    let lower: T = (1..=grid.cells()).map(|j| w[j] * grid.lower_angle(j).cos()).sum();
    let upper: T = (1..=grid.cells())
        .map(|j| {
            let i = grid.upper_index(j);
            w[i] * (top - grid.angle(i)).cos()
        })
        .sum();
    if grid.is_right() {
        for j in 1..=grid.cells() {
            w[grid.lower_index(j)] /= lower;
            w[grid.upper_index(j)] /= upper;
        }
        w[grid.upper_index(0)] = T::lit(2.0);
    } else {
        let c = omega.cos();
        w[grid.lower_index(grid.cells() + 1)] = (T::one() - lower) / c;
        w[grid.upper_index(0)] = (T::one() - upper) / c;
    }
    BoundaryMeasure { grid, weights: w }
}

pub fn build_maximizer<T: Scalar>(spec: &MaximizerSpec<T>) -> Result<Cap<T>> {
    cap_from_boundary(&maximizer_measure(spec.grid()?))
}

/// Closed-form support of `K_{ω,1}` on `J_ω`: `p(t) = ω − t + o_ω · u_t` and
/// `p(t + π/2) = t + o_ω · v_t` for `t ∈ [0, ω]`.
pub fn maximizer_support<T: Scalar>(omega: T, s: T) -> Option<T> {
    let o = Fan::new(omega).apex();
    if s >= T::zero() && s <= omega {
        Some(omega - s + o.dot(Vec2::unit(s)))
    } else if s >= T::FRAC_PI_2() && s <= T::FRAC_PI_2() + omega {
        let t = s - T::FRAC_PI_2();
        Some(t + o.dot(Vec2::unit(s)))
    } else {
        None
    }
}

/// Boundary pieces of `S₁` in centred coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct S1Curves<T> {
    /// Right side, from `(1, 1)` to `(π/2, 0)`.
    pub gamma: Polyline<T>,
    /// Left side, the mirror image of `gamma`.
    pub gamma_mirror: Polyline<T>,
    /// Bottom middle, from `(π/2 − 1, 0)` to `(1 − π/2, 0)`.
    pub x: Polyline<T>,
    /// The top segment and the two bottom feet.
    pub segments: Vec<(Vec2<T>, Vec2<T>)>,
}

/// Samples the boundary curves of `S₁` at `n` angles of `[0, π/2]`.
pub fn s1_curves<T: Scalar>(n: usize) -> S1Curves<T> {
    let n = n.max(2);
    let half = T::FRAC_PI_2();
    let ts: Vec<T> = (0..n).map(|k| if k == n - 1 { half } else { half * T::lit(k as f64 / (n - 1) as f64) }).collect();
    // Antiderivatives of γ′(t) = t(cos t, −sin t) and
    // x′(t) = −t u_t + (π/2 − t) v_t.
    let gamma: Vec<Vec2<T>> = ts
        .iter()
        .map(|&t| {
            let (s, c) = t.sin_cos();
            Vec2::new(t * s + c, T::one() - s + t * c)
        })
        .collect();
    let x: Vec<Vec2<T>> = ts
        .iter()
        .map(|&t| {
            let (s, c) = t.sin_cos();
            Vec2::new(s - c - t * s - t * c + half * c, T::one() - s - c + t * c - t * s + half * s)
        })
        .collect();
    let mirror = gamma.iter().map(|p| Vec2::new(-p.x, p.y)).collect();
    let foot = half - T::one();
    let zero = T::zero();
    S1Curves {
        gamma: Polyline::new(gamma),
        gamma_mirror: Polyline::new(mirror),
        x: Polyline::new(x),
        segments: vec![
            (Vec2::new(-T::one(), T::one()), Vec2::new(T::one(), T::one())),
            (Vec2::new(half, zero), Vec2::new(foot, zero)),
            (Vec2::new(-foot, zero), Vec2::new(-half, zero)),
        ],
    }
}

/// A random cap with rotation angle `ω`: nonnegative slot weights, each half
/// rescaled to meet its constraint, then rebuilt from the measure.
pub fn random_cap<T: Scalar>(grid: CapGrid<T>, rng: &mut impl Rng) -> Result<Cap<T>> {
    let top = grid.omega() + T::FRAC_PI_2();
    let mut w: Vec<T> = (0..grid.j_len()).map(|_| T::lit(rng.gen_range(0.0..1.0))).collect();
    // Sparse spikes make atoms; a smooth bump makes a density.
    let bump = T::lit(rng.gen_range(0.0..3.0));
    let centre = T::lit(rng.gen_range(0.0..1.0));
    let len = T::lit(grid.j_len() as f64);
    for (i, wi) in w.iter_mut().enumerate() {
        let s = T::lit(i as f64) / len - centre;
        *wi = *wi * T::lit(0.2) + bump * (-(s * s) * T::lit(40.0)).exp();
        if rng.gen_bool(0.02) {
            *wi += T::lit(rng.gen_range(0.0..4.0)) * len.recip() * T::lit(20.0);
        }
    }
    let lower: T = (0..grid.half_len()).map(|j| w[grid.lower_index(j)] * grid.lower_angle(j).cos()).sum();
    let upper: T = (0..grid.half_len())
        .map(|j| {
            let i = grid.upper_index(j);
            w[i] * (top - grid.angle(i)).cos()
        })
        .sum();
    let shared = grid.is_right().then(|| grid.upper_index(0));
    for j in 0..grid.half_len() {
        let (lo, up) = (grid.lower_index(j), grid.upper_index(j));
        if Some(lo) != shared {
            w[lo] /= lower;
        }
        if Some(up) != shared {
            w[up] /= upper;
        }
    }
    cap_from_boundary(&BoundaryMeasure { grid, weights: w })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaximizerReport<T> {
    pub omega: T,
    pub n: usize,
    pub trials: usize,
    /// Largest `|β − ι|` density gap over the interior midpoints.
    pub density_gap: T,
    /// Largest `|D𝒜₁(K_{ω,1}; K′)|` over the random caps.
    pub max_derivative: T,
    pub a1: T,
    pub expected: T,
    /// Largest `𝒜₁(K′) − 𝒜₁(K_{ω,1})`; nonpositive at a maximizer.
    pub max_excess: T,
    pub tol: T,
    pub passed: bool,
}

/// Checks `β = ι`, stationarity against random caps, the value `1 + ω²/2`
/// and maximality, with rotation paths of `m` samples.
pub fn verify_maximizer<T: Scalar>(
    spec: &MaximizerSpec<T>,
    trials: usize,
    m: usize,
    tol: T,
    rng: &mut impl Rng,
) -> Result<MaximizerReport<T>> {
    let cap = build_maximizer(spec)?;
    let grid = *cap.grid();
    let beta = boundary_measure(&cap);
    let io = iota(&cap);
    let step = grid.step();
    let mut density_gap = T::zero();
    for (j, (&(_, lo), &(_, up))) in (1..=grid.cells()).zip(io.lower.iter().zip(&io.upper)) {
        let b_lo = beta.weights[grid.lower_index(j)] / step;
        let b_up = beta.weights[grid.upper_index(j)] / step;
        density_gap = density_gap.max((b_lo - lo).abs()).max((b_up - up).abs());
    }
    let value = a1(&cap, m)?;
    let expected = T::one() + spec.omega * spec.omega / T::lit(2.0);
    let (mut max_derivative, mut max_excess) = (T::zero(), T::neg_infinity());
    for _ in 0..trials {
        let other = random_cap(grid, rng)?;
        max_derivative = max_derivative.max(directional_derivative(&cap, &other)?.abs());
        max_excess = max_excess.max(a1(&other, m)? - value);
    }
    if trials == 0 {
        max_excess = T::zero();
    }
    let passed = density_gap <= tol && max_derivative <= tol && (value - expected).abs() <= tol && max_excess <= tol;
    Ok(MaximizerReport {
        omega: spec.omega,
        n: spec.n,
        trials,
        density_gap,
        max_derivative,
        a1: value,
        expected,
        max_excess,
        tol,
        passed,
    })
}
