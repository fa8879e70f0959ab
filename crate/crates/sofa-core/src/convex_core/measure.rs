use serde::{Deserialize, Serialize};

use super::{reduce, Angle, Vec2};
use crate::Scalar;

/// A finite measure on the circle: point masses plus a piecewise-constant
/// density sampled at cell midpoints of width `cell`.
///
/// Densities may be signed where an operation says so (e.g. `β − ι`).
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct AngularMeasure<T> {
    pub atoms: Vec<(T, T)>,
    #[serde(default)]
    pub density: Vec<(T, T)>,
    #[serde(default)]
    pub cell: T,
}

impl<T: Scalar> AngularMeasure<T> {
    pub fn from_atoms(atoms: Vec<(T, T)>) -> Self {
        AngularMeasure { atoms, density: Vec::new(), cell: T::zero() }
    }

    pub fn from_density(density: Vec<(T, T)>, cell: T) -> Self {
        AngularMeasure { atoms: Vec::new(), density, cell }
    }

    /// `⟨f, μ⟩`: atoms against point values, density by the midpoint rule.
    pub fn pair(&self, f: impl Fn(T) -> T) -> T {
        let a: T = self.atoms.iter().map(|&(t, w)| f(t) * w).sum();
        let d: T = self.density.iter().map(|&(t, v)| f(t) * v).sum();
        a + d * self.cell
    }

    pub fn total_mass(&self) -> T {
        self.pair(|_| T::one())
    }

    /// `∫ v_t μ(dt)`; zero for the surface measure of a closed body.
    pub fn closure(&self) -> Vec2<T> {
        let x = self.pair(|t| -t.sin());
        let y = self.pair(|t| t.cos());
        Vec2::new(x, y)
    }

    /// Replaces every density cell by an atom of its mass at the midpoint,
    /// merges atoms at the same angle and sorts by angle in `[0, 2π)`.
    pub fn discretize(&self) -> Self {
        let mut all: Vec<(T, T)> = self
            .atoms
            .iter()
            .copied()
            .chain(self.density.iter().map(|&(t, v)| (t, v * self.cell)))
            .map(|(t, w)| (reduce(t), w))
            .collect();
        all.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angle"));
        let mut merged: Vec<(T, T)> = Vec::with_capacity(all.len());
        for (t, w) in all {
            match merged.last_mut() {
                Some(last) if Angle::new(last.0).same(Angle::new(t)) => last.1 += w,
                _ => merged.push((t, w)),
            }
        }
        if merged.len() > 1 {
            let (t0, w0) = merged[0];
            let last = merged.len() - 1;
            if Angle::new(merged[last].0).same(Angle::new(t0)) {
                merged[last].1 += w0;
                merged.remove(0);
            }
        }
        AngularMeasure::from_atoms(merged)
    }

    /// Keeps the mass whose angle satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(T) -> bool) -> Self {
        AngularMeasure {
            atoms: self.atoms.iter().copied().filter(|&(t, _)| keep(t)).collect(),
            density: self.density.iter().copied().filter(|&(t, _)| keep(t)).collect(),
            cell: self.cell,
        }
    }

    pub fn scale(&self, s: T) -> Self {
        AngularMeasure {
            atoms: self.atoms.iter().map(|&(t, w)| (t, w * s)).collect(),
            density: self.density.iter().map(|&(t, v)| (t, v * s)).collect(),
            cell: self.cell,
        }
    }

    /// Weight of the atom at `t`, zero if none.
    pub fn atom_at(&self, t: T) -> T {
        let t = Angle::new(t);
        self.atoms
            .iter()
            .filter(|&&(s, _)| Angle::new(s).same(t))
            .map(|&(_, w)| w)
            .sum()
    }
}
