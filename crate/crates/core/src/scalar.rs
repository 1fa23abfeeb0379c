//! Scalar abstraction shared by every matrix in the crate.
//!
//! Phase-point operators built from stabilizer projectors only ever contain
//! Gaussian dyadic rationals, so the whole `A_alpha -> S -> H` pipeline can run
//! over exact rationals as well as over `f32`/`f64`. Anything that needs a
//! square root or an eigensolver is restricted to [`RealScalar`].

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Num, ToPrimitive};

/// A field of real scalars: floating point or exact.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Lossy view used only for tolerance comparisons and reporting.
    fn to_f64(&self) -> f64;

    /// `None` when the value cannot be represented (NaN/inf for rationals).
    fn from_f64(v: f64) -> Option<Self>;

    fn abs_f64(&self) -> f64 {
        self.to_f64().abs()
    }
}

/// Floating point scalars, for the numerical (sqrt / eigen / sampling) paths.
pub trait RealScalar: Scalar + Float {}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(v: f64) -> Option<Self> {
        Some(v)
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
    fn to_f64(&self) -> f64 {
        *self as f64
    }
    fn from_f64(v: f64) -> Option<Self> {
        Some(v as f32)
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v)
    }
}

impl RealScalar for f64 {}
impl RealScalar for f32 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_is_exact_for_rationals() {
        let q = <BigRational as Scalar>::ratio(1, 4);
        let four = <BigRational as Scalar>::from_i64(4);
        assert_eq!(q * four, <BigRational as Scalar>::from_i64(1));
        assert_eq!(<f64 as Scalar>::ratio(1, 4), 0.25);
    }

    #[test]
    fn from_f64_rejects_nan_for_rationals() {
        assert!(<BigRational as Scalar>::from_f64(f64::NAN).is_none());
        assert_eq!(<BigRational as Scalar>::from_f64(0.5).map(|v| Scalar::to_f64(&v)).unwrap(), 0.5);
    }
}
