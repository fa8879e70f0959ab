//! Computational toolkit for the moving sofa problem.
//!
//! Convex bodies are polygons whose edge normals sit on a uniform angle grid.
//! On top of that kernel the crate builds tangent hallways, caps and niches,
//! the sofa area functional `𝒜` and its concave quadratic upper bound `𝒜₁`,
//! the maximizer `K_{ω,1}`, and a small concave QP solver over boundary
//! measures.

pub mod convex_core;
mod error;
pub mod functional;
pub mod hallway;
pub mod maximizer;
pub mod optimize;
mod scalar;
pub mod sofa;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Concrete `f64` instantiations of the generic types.
pub mod f64 {
    pub type Angle = crate::convex_core::Angle<f64>;
    pub type Vec2 = crate::convex_core::Vec2<f64>;
    pub type ConvexPolygon = crate::convex_core::ConvexPolygon<f64>;
    pub type SupportSamples = crate::convex_core::SupportSamples<f64>;
    pub type AngularMeasure = crate::convex_core::AngularMeasure<f64>;
    pub type Polyline = crate::convex_core::Polyline<f64>;
    pub type CapGrid = crate::convex_core::CapGrid<f64>;
    pub type HallwayPose = crate::hallway::HallwayPose<f64>;
    pub type Fan = crate::hallway::Fan<f64>;
    pub type Wedge = crate::hallway::Wedge<f64>;
    pub type Cap = crate::sofa::Cap<f64>;
    pub type NicheRegion = crate::sofa::NicheRegion<f64>;
    pub type SofaShape = crate::sofa::SofaShape<f64>;
    pub type BoundaryMeasure = crate::functional::BoundaryMeasure<f64>;
    pub type IotaMeasure = crate::functional::IotaMeasure<f64>;
    pub type MaximizerSpec = crate::maximizer::MaximizerSpec<f64>;
}
