//! The real-number abstraction every model computation is generic over.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive};

use crate::dd::DoubleDouble;

/// Complex numbers over a [`Scalar`].
pub type Cx<T> = Complex<T>;

/// A real floating-point type usable by the fields, integrator and analysis.
pub trait Scalar:
    Float + FromPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Short name used in reports ("f32", "f64", "dd").
    const NAME: &'static str;

    /// Converts an `f64` literal. Exact for every supported type except `f32`.
    fn c(x: f64) -> Self;

    /// Builds a value from an unevaluated `hi + lo` pair; narrower types drop `lo`.
    fn from_parts(hi: f64, lo: f64) -> Self;

    /// Nearest `f64`.
    fn f64(self) -> f64;

    /// `p / q` rounded once in this type.
    fn ratio(p: i64, q: i64) -> Self {
        Self::c(p as f64) / Self::c(q as f64)
    }
}

impl Scalar for f32 {
    const NAME: &'static str = "f32";
    fn c(x: f64) -> Self {
        x as f32
    }
    fn from_parts(hi: f64, lo: f64) -> Self {
        (hi + lo) as f32
    }
    fn f64(self) -> f64 {
        f64::from(self)
    }
}

impl Scalar for f64 {
    const NAME: &'static str = "f64";
    fn c(x: f64) -> Self {
        x
    }
    fn from_parts(hi: f64, lo: f64) -> Self {
        hi + lo
    }
    fn f64(self) -> f64 {
        self
    }
}

impl Scalar for DoubleDouble {
    const NAME: &'static str = "dd";
    fn c(x: f64) -> Self {
        DoubleDouble::from_f64(x)
    }
    fn from_parts(hi: f64, lo: f64) -> Self {
        DoubleDouble::from_sum(hi, lo)
    }
    fn f64(self) -> f64 {
        self.to_f64()
    }
    fn ratio(p: i64, q: i64) -> Self {
        DoubleDouble::ratio(p, q)
    }
}

/// Converts between scalar types, keeping the low word when both sides carry one.
pub fn cast<A: Scalar, B: Scalar>(x: A) -> B {
    let hi = x.f64();
    let lo = (x - A::c(hi)).f64();
    B::from_parts(hi, lo)
}

/// Complex version of [`cast`].
pub fn cx_cast<A: Scalar, B: Scalar>(z: Cx<A>) -> Cx<B> {
    Cx::new(cast(z.re), cast(z.im))
}
