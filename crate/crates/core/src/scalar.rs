//! Scalar abstractions.
//!
//! [`Real`] is the floating-point scalar every sampled/quadrature routine is
//! generic over. [`Field`] is the weaker bound used where the same formula is
//! also evaluated in exact rational arithmetic.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a count or index.
    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// A field in which coefficient formulas can be evaluated exactly or approximately.
pub trait Field: Clone + Num + Neg<Output = Self> + PartialOrd {
    fn from_rational(r: &BigRational) -> Self;
}

impl Field for f64 {
    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r)
    }
}

impl Field for f32 {
    fn from_rational(r: &BigRational) -> Self {
        rational_to_f64(r) as f32
    }
}

impl Field for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

/// Rounds an exact rational to the nearest representable `f64`-ish value.
///
/// Numerator and denominator are scaled so both fit comfortably before the
/// division, which keeps ratios of huge factorials finite.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let (num, den) = (r.numer(), r.denom());
    let shift = |b: u64| b.saturating_sub(900);
    let ns = shift(num.bits());
    let ds = shift(den.bits());
    let n = (num >> ns).to_f64().unwrap_or(f64::NAN);
    let d = (den >> ds).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi(ns as i32 - ds as i32)
}

/// Converts an exact rational into any [`Real`].
pub fn rational_to_real<T: Real>(r: &BigRational) -> T {
    T::lit(rational_to_f64(r))
}
