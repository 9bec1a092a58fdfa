//! Second-order jets and finite-difference derivative oracles.
//!
//! A [`Jet2`] carries `(f(z), f'(z), f''(z))` for an analytic function and
//! propagates exactly through sums, products, quotients, principal powers,
//! and composition. The numeric routines in this module are independent
//! cross-checks: central differences with one Richardson extrapolation
//! level, used to validate every closed-form derivative in the crate.

use crate::error::EvalError;
use crate::scalar::{Real, C};
use num_complex::Complex;
use std::ops::{Add, Mul, Neg, Sub};

/// Value and first two complex derivatives of an analytic function at a point.
///
/// Jets carry no domain information; domain and singularity guards live on
/// the map layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2<T: Real> {
    pub value: C<T>,
    pub d1: C<T>,
    pub d2: C<T>,
}

impl<T: Real> Jet2<T> {
    pub fn new(value: C<T>, d1: C<T>, d2: C<T>) -> Self {
        Jet2 { value, d1, d2 }
    }

    /// Jet of the constant function `c`.
    pub fn constant(c: C<T>) -> Self {
        Jet2::new(c, Complex::new(T::zero(), T::zero()), Complex::new(T::zero(), T::zero()))
    }

    /// Jet of the identity evaluated at `z`.
    pub fn variable(z: C<T>) -> Self {
        Jet2::new(z, Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()))
    }

    /// Scales by a complex constant.
    pub fn scale(self, factor: C<T>) -> Self {
        Jet2::new(self.value * factor, self.d1 * factor, self.d2 * factor)
    }

    /// Quotient rule at order two. Fails when the divisor value is zero;
    /// the caller attaches the evaluation point to the error.
    pub fn checked_div(self, rhs: Self) -> Result<Self, EvalError> {
        if rhs.value.norm_sqr() == T::zero() {
            return Err(EvalError::DivisionByZero { point: None });
        }
        let value = self.value / rhs.value;
        let d1 = (self.d1 - value * rhs.d1) / rhs.value;
        let two = T::lit(2.0);
        let d2 = (self.d2 - d1 * rhs.d1 * two - value * rhs.d2) / rhs.value;
        Ok(Jet2::new(value, d1, d2))
    }

    /// Principal-branch power `self^alpha`. Fails on a zero base value.
    pub fn pow(self, alpha: T) -> Result<Self, EvalError> {
        if self.value.norm_sqr() == T::zero() {
            return Err(EvalError::DivisionByZero { point: None });
        }
        let p2 = self.value.powf(alpha - T::lit(2.0));
        let p1 = p2 * self.value;
        let p0 = p1 * self.value;
        let a = Complex::new(alpha, T::zero());
        let am1 = Complex::new(alpha - T::one(), T::zero());
        let value = p0;
        let d1 = a * p1 * self.d1;
        let d2 = a * am1 * p2 * self.d1 * self.d1 + a * p1 * self.d2;
        Ok(Jet2::new(value, d1, d2))
    }

    /// Composition `outer(inner)`: `outer` must be the jet of the outer
    /// function evaluated at `inner.value`.
    pub fn compose(outer: Self, inner: Self) -> Self {
        Jet2::new(
            outer.value,
            outer.d1 * inner.d1,
            outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2,
        )
    }
}

impl<T: Real> Add for Jet2<T> {
    type Output = Jet2<T>;
    fn add(self, rhs: Self) -> Self {
        Jet2::new(self.value + rhs.value, self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl<T: Real> Sub for Jet2<T> {
    type Output = Jet2<T>;
    fn sub(self, rhs: Self) -> Self {
        Jet2::new(self.value - rhs.value, self.d1 - rhs.d1, self.d2 - rhs.d2)
    }
}

impl<T: Real> Mul for Jet2<T> {
    type Output = Jet2<T>;
    fn mul(self, rhs: Self) -> Self {
        let two = T::lit(2.0);
        Jet2::new(
            self.value * rhs.value,
            self.d1 * rhs.value + self.value * rhs.d1,
            self.d2 * rhs.value + self.d1 * rhs.d1 * two + self.value * rhs.d2,
        )
    }
}

impl<T: Real> Neg for Jet2<T> {
    type Output = Jet2<T>;
    fn neg(self) -> Self {
        Jet2::new(-self.value, -self.d1, -self.d2)
    }
}

/// Horner evaluation of a polynomial (coefficients low to high) as a jet.
pub fn poly_jet<T: Real>(coeffs: &[C<T>], z: C<T>) -> Jet2<T> {
    let var = Jet2::variable(z);
    let mut acc = Jet2::constant(Complex::new(T::zero(), T::zero()));
    for &c in coeffs.iter().rev() {
        acc = acc * var + Jet2::constant(c);
    }
    acc
}

/// Wirtinger derivatives `(f_z, f_zbar)` of a not-necessarily-analytic map.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WirtingerPair<T: Real> {
    pub dz: C<T>,
    pub dzbar: C<T>,
}

/// Default step for first-derivative stencils: `1e-5 * max(1, |z|)`.
pub fn default_step<T: Real>(z: C<T>) -> T {
    T::lit(1e-5) * T::one().max(z.norm())
}

/// Default step for second-derivative stencils: `1e-3 * max(1, |z|)`.
///
/// Second differences divide by the squared step, so the first-derivative
/// step would amplify roundoff past the 1e-6 oracle tolerance.
pub fn default_step_d2<T: Real>(z: C<T>) -> T {
    T::lit(1e-3) * T::one().max(z.norm())
}

/// Numeric Wirtinger derivatives by central differences in `x` and `y`
/// with one Richardson extrapolation level.
///
/// The sampler is responsible for domain membership; a stencil point
/// outside the domain surfaces as the sampler's error.
pub fn numeric_wirtinger<T, F>(
    sampler: F,
    z: C<T>,
    step: T,
) -> Result<WirtingerPair<T>, EvalError>
where
    T: Real,
    F: Fn(C<T>) -> Result<C<T>, EvalError>,
{
    let dx = |h: T| -> Result<C<T>, EvalError> {
        let e = Complex::new(h, T::zero());
        Ok((sampler(z + e)? - sampler(z - e)?) / Complex::new(h + h, T::zero()))
    };
    let dy = |h: T| -> Result<C<T>, EvalError> {
        let e = Complex::new(T::zero(), h);
        Ok((sampler(z + e)? - sampler(z - e)?) / Complex::new(h + h, T::zero()))
    };
    let fx = richardson(dx(step / T::lit(2.0))?, dx(step)?);
    let fy = richardson(dy(step / T::lit(2.0))?, dy(step)?);
    let i = Complex::new(T::zero(), T::one());
    let half = Complex::new(T::lit(0.5), T::zero());
    Ok(WirtingerPair {
        dz: (fx - i * fy) * half,
        dzbar: (fx + i * fy) * half,
    })
}

/// Numeric second derivative of an analytic function along the real
/// direction, with one Richardson level. For analytic samplers this equals
/// the complex second derivative.
pub fn numeric_second_derivative<T, F>(sampler: F, z: C<T>, step: T) -> Result<C<T>, EvalError>
where
    T: Real,
    F: Fn(C<T>) -> Result<C<T>, EvalError>,
{
    let center = sampler(z)?;
    let second = |h: T| -> Result<C<T>, EvalError> {
        let e = Complex::new(h, T::zero());
        let two = Complex::new(T::lit(2.0), T::zero());
        Ok((sampler(z + e)? - center * two + sampler(z - e)?) / Complex::new(h * h, T::zero()))
    };
    Ok(richardson(second(step / T::lit(2.0))?, second(step)?))
}

/// Richardson combination `(4*fine - coarse) / 3` for second-order stencils.
fn richardson<T: Real>(fine: C<T>, coarse: C<T>) -> C<T> {
    let four = Complex::new(T::lit(4.0), T::zero());
    let third = Complex::new(T::lit(3.0), T::zero());
    (fine * four - coarse) / third
}
