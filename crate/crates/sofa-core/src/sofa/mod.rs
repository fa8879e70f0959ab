//! Caps, niches, monotone sofas and the sofa area functional `𝒜`.

mod bound;
mod cap;
mod injectivity;
mod monotonize;
mod niche;

pub use bound::{polygonal_bound, polygonal_intersection_area, BoundSearch};
pub use cap::{infer_grid, validate_cap, Cap};
pub use injectivity::injectivity_check;
pub use monotonize::{monotonize, SofaShape, SofaSummary};
pub use niche::{niche, niche_contained, sofa_area, sofa_area_with, NicheRegion, SofaArea, DEFAULT_SAMPLES};
