//! Scalar abstraction for the numeric kernels.
//!
//! Everything in this crate is generic over a real scalar implementing
//! [`Real`]; `f32` and `f64` both qualify through the blanket impl. The
//! crate root re-exports `f64`-concrete aliases for the common types.

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt::{Debug, Display, LowerExp};

/// Real scalar used by all numeric kernels.
///
/// This is a convenience bundle over the `num-traits` hierarchy plus the
/// formatting and threading bounds the rest of the crate needs.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    ///
    /// Panics if the literal is not representable, which cannot happen for
    /// the finite constants used in this crate.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("finite literal must be representable")
    }

    /// Lossy conversion to `f64`, used for diagnostics and serialization.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("real scalar converts to f64")
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + Debug + Display + LowerExp + Send + Sync + 'static
{
}

/// Shorthand for a complex number over a [`Real`] scalar.
pub type C<T> = Complex<T>;

/// Complex literal from `f64` parts.
pub fn clit<T: Real>(re: f64, im: f64) -> C<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// Real literal, mirroring [`Real::lit`] as a free function.
pub fn lit<T: Real>(value: f64) -> T {
    T::lit(value)
}

/// Converts a complex value to `Complex<f64>` for diagnostics.
pub fn c64_of<T: Real>(z: C<T>) -> Complex<f64> {
    Complex::new(z.re.as_f64(), z.im.as_f64())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_round_trip() {
        let x: f64 = lit(0.625);
        assert_eq!(x, 0.625);
        let y: f32 = lit(0.5);
        assert_eq!(y, 0.5f32);
        let z: Complex<f64> = clit(1.5, -2.0);
        assert_eq!(z, Complex::new(1.5, -2.0));
    }
}
