use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point type the geometry is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Absolute tolerance for identities that hold exactly at polygon level.
    const GEOM_TOL: f64;
    /// Tolerance used to decide that two angles name the same direction.
    const ANGLE_TOL: f64;

    /// Converts an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    fn geom_tol() -> Self {
        Self::lit(Self::GEOM_TOL)
    }

    fn angle_tol() -> Self {
        Self::lit(Self::ANGLE_TOL)
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const GEOM_TOL: f64 = 1e-4;
    const ANGLE_TOL: f64 = 1e-5;
}

impl Scalar for f64 {
    const GEOM_TOL: f64 = 1e-9;
    const ANGLE_TOL: f64 = 1e-12;
}
