use nalgebra::RealField;
use num_traits::FloatConst;

/// Floating point scalar the simulation is generic over.
pub trait Real: RealField + FloatConst + Copy {
    /// Tolerance used when validating inputs (unit norms, traces, metric
    /// preservation).
    fn tolerance() -> Self;

    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        nalgebra::convert(x)
    }

    fn to_f64(self) -> f64;
}

impl Real for f64 {
    #[inline]
    fn tolerance() -> Self {
        1e-10
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline]
    fn tolerance() -> Self {
        1e-4
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}
