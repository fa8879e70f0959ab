use crate::{Error, Result, Scalar};

/// Uniform angle grid on `J_ω = [0, ω] ∪ [π/2, ω + π/2]` plus the two
/// bottom normals `π + ω` and `3π/2`.
///
/// Each half of `J_ω` is cut into `cells` equal cells. The slots of the lower
/// half are `0`, the cell midpoints and `ω`; the upper half is the same
/// shifted by `π/2`. When `ω = π/2` the slots `ω` and `π/2` (and the two
/// bottom normals) coincide and are stored once. Slots are sorted, so the
/// slots of `J_ω` come first.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapGrid<T> {
    omega: T,
    cells: usize,
}

impl<T: Scalar> CapGrid<T> {
    /// `n` cells per unit of angle, at least one cell per half.
    pub fn new(omega: T, n: usize) -> Result<Self> {
        let omega = snap_omega(omega)?;
        let cells = (T::lit(n as f64) * omega).round().to_usize().unwrap_or(1).max(1);
        Ok(CapGrid { omega, cells })
    }

    pub fn with_cells(omega: T, cells: usize) -> Result<Self> {
        if cells == 0 {
            return Err(Error::Invalid("grid needs at least one cell".into()));
        }
        Ok(CapGrid { omega: snap_omega(omega)?, cells })
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn step(&self) -> T {
        self.omega / T::lit(self.cells as f64)
    }

    pub fn is_right(&self) -> bool {
        self.omega == T::FRAC_PI_2()
    }

    /// Slots per half: the two ends plus one per cell.
    pub fn half_len(&self) -> usize {
        self.cells + 2
    }

    fn upper_offset(&self) -> usize {
        if self.is_right() {
            self.cells + 1
        } else {
            self.cells + 2
        }
    }

    /// Number of slots in `J_ω`.
    pub fn j_len(&self) -> usize {
        self.upper_offset() + self.half_len()
    }

    pub fn len(&self) -> usize {
        self.j_len() + if self.is_right() { 1 } else { 2 }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Index of lower-half slot `j ∈ 0..=cells+1`.
    pub fn lower_index(&self, j: usize) -> usize {
        j
    }

    /// Index of upper-half slot `j ∈ 0..=cells+1`.
    pub fn upper_index(&self, j: usize) -> usize {
        self.upper_offset() + j
    }

    /// Index of the bottom normal `π + ω`.
    pub fn bottom_omega_index(&self) -> usize {
        self.j_len()
    }

    /// Index of the bottom normal `3π/2`.
    pub fn bottom_index(&self) -> usize {
        if self.is_right() {
            self.j_len()
        } else {
            self.j_len() + 1
        }
    }

    /// Angle of lower-half slot `j`; `j = 1..=cells` are the cell midpoints.
    pub fn lower_angle(&self, j: usize) -> T {
        if j == 0 {
            T::zero()
        } else if j > self.cells {
            self.omega
        } else {
            (T::lit(j as f64) - T::lit(0.5)) * self.step()
        }
    }

    pub fn angle(&self, i: usize) -> T {
        let off = self.upper_offset();
        if i < off {
            self.lower_angle(i)
        } else if i < self.j_len() {
            T::FRAC_PI_2() + self.lower_angle(i - off)
        } else if i == self.bottom_omega_index() {
            T::PI() + self.omega
        } else {
            T::lit(1.5) * T::PI()
        }
    }

    pub fn angles(&self) -> Vec<T> {
        (0..self.len()).map(|i| self.angle(i)).collect()
    }

    /// Whether slot `i` is a cell midpoint (as opposed to an end or bottom slot).
    pub fn is_midpoint(&self, i: usize) -> bool {
        let off = self.upper_offset();
        (1..=self.cells).contains(&i) || (off + 1..=off + self.cells).contains(&i)
    }

    /// Whether slot `i` lies in the lower half `[0, ω]`.
    pub fn is_lower(&self, i: usize) -> bool {
        i <= self.cells + 1
    }
}

/// Checks `ω ∈ (0, π/2]`, snapping values within 1e-6 of π/2 onto it.
pub fn snap_omega<T: Scalar>(omega: T) -> Result<T> {
    let half = T::FRAC_PI_2();
    if (omega - half).abs() <= T::lit(1e-6) {
        return Ok(half);
    }
    if !(omega > T::zero() && omega < half) {
        return Err(Error::BadOmega(omega.to_f64_lossy()));
    }
    Ok(omega)
}
