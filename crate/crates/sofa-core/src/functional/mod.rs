//! The curve-area functional `ℐ`, the upper bound `𝒜₁`, boundary and `ι`
//! measures, derivatives along Minkowski blends, and the Mamikon sweep.

mod calculus;
mod mamikon;
mod measure;

pub use crate::convex_core::Polyline;
pub use calculus::{a1, area_derivative, blend, concavity_probe, curve_area, directional_derivative, ConcavityReport};
pub use mamikon::mamikon_sweep;
pub use measure::{boundary_measure, cap_from_boundary, iota, BoundaryMeasure, IotaMeasure};
