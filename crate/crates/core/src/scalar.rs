//! Floating point scalar bound for the geometric and asymptotic code.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst};

/// Float types the semiclassical formulas are generic over.
pub trait Real: Float + FloatConst + Debug + Display + LowerExp + Send + Sync + 'static {
    /// Relative tolerance for cos⁻¹ arguments straying outside `[-1, 1]`.
    const ACOS_BAND: Self;
    /// Relative norm below which a cross product counts as degenerate.
    const CROSS_EPS: Self;
    /// `ε` in the classically-allowed test `det G > ε (tr G)³`.
    const CAUSTIC_EPS: Self;

    fn of(x: f64) -> Self;

    fn half() -> Self {
        Self::of(0.5)
    }
}

impl Real for f64 {
    const ACOS_BAND: f64 = 1e-12;
    const CROSS_EPS: f64 = 1e-12;
    const CAUSTIC_EPS: f64 = 1e-12;

    #[inline]
    fn of(x: f64) -> Self {
        x
    }
}

// Single precision cannot resolve 1e-12; its bands sit a few ulps above epsilon.
impl Real for f32 {
    const ACOS_BAND: f32 = 1e-5;
    const CROSS_EPS: f32 = 1e-5;
    const CAUSTIC_EPS: f32 = 1e-5;

    #[inline]
    fn of(x: f64) -> Self {
        x as f32
    }
}
