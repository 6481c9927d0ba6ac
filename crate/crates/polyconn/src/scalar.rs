//! Floating-point scalar abstraction for the numeric kernels.
//!
//! The dense linear algebra, the Jacobi eigensolver, the Runge-Kutta
//! stepper and compiled polynomial evaluation only need an IEEE-style
//! float; they are written against this trait so they work with `f32` or
//! `f64` (or any other type satisfying the bounds). The certified layer —
//! interval arithmetic, Krawczyk tests, exact rational cross-checks — is
//! deliberately pinned to `f64`, and the crate root re-exports
//! [`crate::Scalar`] `= f64` as the type the assembled pipeline runs on.

use num_traits::{Float, FromPrimitive};
use std::fmt::{Debug, Display};

/// Floating-point scalar: IEEE float operations plus conversions from
/// primitive constants, printable, and shareable across threads.
pub trait Real:
    Float + FromPrimitive + Debug + Display + Copy + Send + Sync + 'static
{
    /// Lossy conversion to `f64` (exact for `f32`/`f64`).
    fn to_f64(self) -> f64;

    /// Conversion from `f64` (rounds for narrower types).
    fn from_f64_lossy(v: f64) -> Self;
}

impl Real for f64 {
    fn to_f64(self) -> f64 {
        self
    }
    fn from_f64_lossy(v: f64) -> Self {
        v
    }
}

impl Real for f32 {
    fn to_f64(self) -> f64 {
        self as f64
    }
    fn from_f64_lossy(v: f64) -> Self {
        v as f32
    }
}

/// Convenience: `R` from an integer literal.
pub fn lit<R: Real>(v: f64) -> R {
    R::from_f64_lossy(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum_of_squares<R: Real>(xs: &[R]) -> R {
        xs.iter().fold(R::zero(), |acc, &x| acc + x * x)
    }

    #[test]
    fn generic_kernel_works_for_both_widths() {
        let a64: Vec<f64> = vec![3.0, 4.0];
        let a32: Vec<f32> = vec![3.0, 4.0];
        assert_eq!(sum_of_squares(&a64), 25.0);
        assert_eq!(sum_of_squares(&a32), 25.0f32);
    }

    #[test]
    fn conversions_round_trip() {
        assert_eq!(f64::from_f64_lossy(1.5).to_f64(), 1.5);
        assert_eq!(f32::from_f64_lossy(1.5).to_f64(), 1.5);
    }
}
