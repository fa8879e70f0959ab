use crate::convex_core::{Angle, CapGrid, ConvexPolygon, SupportSamples};
use crate::hallway::Fan;
use crate::{Error, Result, Scalar};

/// A cap with rotation angle `ω`: tangent to the four sides of the
/// parallelogram `P_ω` (`p(ω) = p(π/2) = 1`, `p(π + ω) = p(3π/2) = 0`) with
/// every edge normal in `J_ω ∪ {π + ω, 3π/2}`.
///
/// The support samples live on a [`CapGrid`]; `polygon` is the body they cut out.
#[derive(Clone, Debug, PartialEq)]
pub struct Cap<T> {
    grid: CapGrid<T>,
    support: SupportSamples<T>,
    polygon: ConvexPolygon<T>,
}

impl<T: Scalar> Cap<T> {
    /// Validates support samples taken on `grid`.
    pub fn new(grid: CapGrid<T>, support: SupportSamples<T>) -> Result<Self> {
        if support.grid.len() != grid.len()
            || support.grid.iter().enumerate().any(|(i, &t)| !Angle::new(t).same(Angle::new(grid.angle(i))))
        {
            return Err(Error::GridMismatch);
        }
        let support = SupportSamples { omega: grid.omega(), grid: grid.angles(), support: support.support };
        check_tangency(&grid, &support)?;
        let polygon = support.to_polygon().map_err(|e| match e {
            Error::NegativeEdge { angle, .. } => Error::ForbiddenNormal(angle),
            other => other,
        })?;
        Ok(Cap { grid, support, polygon })
    }

    /// A cap from a polygon whose normals lie on the grid slots.
    pub fn from_polygon(grid: CapGrid<T>, polygon: ConvexPolygon<T>) -> Result<Self> {
        let tol = T::lit(1e-6);
        let slots = grid.angles();
        let n = slots.len();
        for &t in polygon.normals() {
            let a = Angle::new(t);
            let i = slots.partition_point(|&s| s < a.value());
            let near = [i % n, (i + n - 1) % n, 0, n - 1].into_iter().any(|j| {
                let d = a.ccw_to(Angle::new(slots[j]));
                d <= tol || d >= T::TAU() - tol
            });
            if !near {
                return Err(Error::ForbiddenNormal(t.to_f64_lossy()));
            }
        }
        let support = SupportSamples::from_polygon(&polygon, grid.omega(), slots);
        check_tangency(&grid, &support)?;
        let polygon = support.to_polygon()?;
        Ok(Cap { grid, support, polygon })
    }

    pub fn grid(&self) -> &CapGrid<T> {
        &self.grid
    }

    pub fn support(&self) -> &SupportSamples<T> {
        &self.support
    }

    pub fn polygon(&self) -> &ConvexPolygon<T> {
        &self.polygon
    }

    pub fn omega(&self) -> T {
        self.grid.omega()
    }

    pub fn fan(&self) -> Fan<T> {
        Fan::new(self.grid.omega())
    }

    pub fn area(&self) -> T {
        self.polygon.area()
    }

    /// Edge weight at every grid slot (zero where there is no edge).
    pub fn slot_weights(&self) -> Vec<T> {
        let sigma = self.polygon.surface_measure();
        let mut w = vec![T::zero(); self.grid.len()];
        for (t, len) in sigma.atoms {
            if let Some(i) = self.support.index_of(t) {
                w[i] += len;
            }
        }
        w
    }
}

fn check_tangency<T: Scalar>(grid: &CapGrid<T>, p: &SupportSamples<T>) -> Result<()> {
    let scale = p.support.iter().fold(T::one(), |m, &s| m.max(s.abs()));
    let tol = T::geom_tol() * scale;
    let checks = [
        ("p(omega) = 1", grid.lower_index(grid.cells() + 1), T::one()),
        ("p(pi/2) = 1", grid.upper_index(0), T::one()),
        ("p(pi + omega) = 0", grid.bottom_omega_index(), T::zero()),
        ("p(3pi/2) = 0", grid.bottom_index(), T::zero()),
    ];
    let failed: Vec<String> = checks
        .into_iter()
        .filter(|&(_, i, want)| (p.support[i] - want).abs() > tol)
        .map(|(what, i, _)| format!("{what}, got {}", p.support[i].to_f64_lossy()))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::Tangency(failed.join("; ")))
    }
}

/// Checks the cap conditions for support samples on the cap grid of `ω`.
pub fn validate_cap<T: Scalar>(p: &SupportSamples<T>, omega: T) -> Result<Cap<T>> {
    let grid = infer_grid(omega, p.grid.len())?;
    Cap::new(grid, p.clone())
}

/// The cap grid of `ω` with `len` slots.
pub fn infer_grid<T: Scalar>(omega: T, len: usize) -> Result<CapGrid<T>> {
    let probe = CapGrid::with_cells(omega, 1)?;
    let fixed = if probe.is_right() { 4 } else { 6 };
    if len < fixed + 2 || !(len - fixed).is_multiple_of(2) {
        return Err(Error::GridMismatch);
    }
    CapGrid::with_cells(omega, (len - fixed) / 2)
}
