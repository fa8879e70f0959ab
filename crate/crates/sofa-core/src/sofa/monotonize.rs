use serde::{Deserialize, Serialize};

use super::niche::{niche, DEFAULT_SAMPLES};
use super::{Cap, NicheRegion};
use crate::convex_core::{Angle, CapGrid, ConvexPolygon, SupportSamples, Vec2};
use crate::{Error, Result, Scalar};

/// A monotone sofa `K ∖ 𝒩(K)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SofaShape<T> {
    pub cap: Cap<T>,
    pub niche: NicheRegion<T>,
    pub area: T,
}

/// Serializable summary of a [`SofaShape`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SofaSummary<T> {
    pub omega: T,
    pub cap_area: T,
    pub niche_area: T,
    pub area: T,
    pub vertices: Vec<Vec2<T>>,
}

impl<T: Scalar> SofaShape<T> {
    pub fn summary(&self) -> SofaSummary<T> {
        SofaSummary {
            omega: self.cap.omega(),
            cap_area: self.cap.area(),
            niche_area: self.niche.area,
            area: self.area,
            vertices: self.cap.polygon().vertices().to_vec(),
        }
    }
}

/// Finds the cap grid whose leading slots (all of `J_ω`, possibly followed
/// by the two bottom normals) are the given sample angles.
fn grid_of<T: Scalar>(p: &SupportSamples<T>) -> Result<CapGrid<T>> {
    let omega = p.omega;
    let right = CapGrid::with_cells(omega, 1)?.is_right();
    let len = p.grid.len();
    let candidates = if right {
        [len.checked_sub(4).map(|k| k / 2), len.checked_sub(3).map(|k| k / 2)]
    } else {
        [len.checked_sub(6).map(|k| k / 2), len.checked_sub(4).map(|k| k / 2)]
    };
    for cells in candidates.into_iter().flatten().filter(|&c| c > 0) {
        let grid = CapGrid::with_cells(omega, cells)?;
        if grid.j_len() <= len
            && (0..grid.j_len()).all(|i| Angle::new(p.grid[i]).same(Angle::new(grid.angle(i))))
            && (len == grid.j_len() || len == grid.len())
        {
            return Ok(grid);
        }
    }
    Err(Error::GridMismatch)
}

/// Monotonization: the largest cap below the given supports on `J_ω`, minus its niche.
///
/// The cap is `P_ω ∩ ⋂_{t ∈ J_ω} H(t, p(t))`. Bottom samples, if present, are ignored.
pub fn monotonize<T: Scalar>(p: &SupportSamples<T>) -> Result<SofaShape<T>> {
    let grid = grid_of(p)?;
    let scale = p.support.iter().fold(T::one(), |m, &s| m.max(s.abs()));
    let tol = T::geom_tol() * scale;
    let at_omega = p.support[grid.lower_index(grid.cells() + 1)];
    let at_right = p.support[grid.upper_index(0)];
    if (at_omega - T::one()).abs() > tol || (at_right - T::one()).abs() > tol {
        return Err(Error::NotStandardPosition(format!(
            "p(omega) = {}, p(pi/2) = {}",
            at_omega.to_f64_lossy(),
            at_right.to_f64_lossy()
        )));
    }

    let r = T::lit(4.0) * scale + T::lit(4.0);
    let mut region = Some(ConvexPolygon::rect(Vec2::new(-r, -r), Vec2::new(r, r)));
    let bottoms = [(T::PI() + grid.omega(), T::zero()), (T::lit(1.5) * T::PI(), T::zero())];
    let cuts = (0..grid.j_len()).map(|i| (grid.angle(i), p.support[i])).chain(bottoms);
    for (t, h) in cuts {
        region = region.and_then(|poly| poly.clip(t, h));
    }
    let poly = region.ok_or_else(|| Error::NotStandardPosition("empty intersection".into()))?;
    let cap = Cap::from_polygon(grid, poly).map_err(|e| match e {
        Error::Tangency(msg) => Error::NotStandardPosition(msg),
        other => other,
    })?;
    let niche = niche(&cap, DEFAULT_SAMPLES, DEFAULT_SAMPLES);
    let area = cap.area() - niche.area;
    Ok(SofaShape { cap, niche, area })
}
