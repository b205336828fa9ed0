//! Scalar abstraction for the algebraic layer.
//!
//! Groupoid weights and kernel coefficients are generic over a real field
//! `T`; kernel values are `Complex<T>`. Floating point (`f32`, `f64`) is used
//! for numerics, and exact rationals make algebraic identities testable
//! without rounding noise.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Real:
    Num
    + Signed
    + Clone
    + PartialOrd
    + ToPrimitive
    + FromPrimitive
    + Debug
    + Display
    + FromStr
    + Send
    + Sync
    + 'static
{
    /// Equality up to `tol`; exact types ignore the tolerance.
    fn close_to(&self, other: &Self, tol: f64) -> bool;

    fn lossy_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }
}

impl Real for f32 {
    fn close_to(&self, other: &Self, tol: f64) -> bool {
        f64::from((self - other).abs()) <= tol
    }
}

impl Real for Ratio<i64> {
    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }
}

impl Real for BigRational {
    fn close_to(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn lossy_f64(&self) -> f64 {
        // BigRational::to_f64 can return None for huge parts
        self.to_f64().unwrap_or_else(|| {
            let n = self.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }
}

pub fn complex_close<T: Real>(a: &Complex<T>, b: &Complex<T>, tol: f64) -> bool {
    a.re.close_to(&b.re, tol) && a.im.close_to(&b.im, tol)
}

pub fn complex_to_c64<T: Real>(z: &Complex<T>) -> Complex<f64> {
    Complex::new(z.re.lossy_f64(), z.im.lossy_f64())
}

pub fn modulus<T: Real>(z: &Complex<T>) -> f64 {
    complex_to_c64(z).norm()
}

/// Builds an exact rational `n / d`.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a scalar written as a decimal or as `p/q`.
pub fn parse_real<T: Real>(s: &str) -> Option<T> {
    s.parse::<T>().ok()
}
