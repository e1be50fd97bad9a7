//! Coefficient fields shared by the series, class-map and functional code.
//!
//! Two fields are supported: double-precision complex numbers for search and
//! sampling, and arbitrary-precision rationals for extremal functions, whose
//! coefficients are all rational.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Constant terms with modulus below this are treated as zero when dividing
/// complex series.
pub const DIV_ZERO_THRESHOLD: f64 = 1e-12;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    /// True when the value cannot safely be used as a divisor.
    fn is_negligible(&self) -> bool;

    fn conj(&self) -> Self;

    fn to_complex(&self) -> Complex64;

    fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl Scalar for Complex64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn is_negligible(&self) -> bool {
        self.norm() < DIV_ZERO_THRESHOLD
    }

    fn conj(&self) -> Self {
        Complex64::conj(self)
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }

    fn modulus(&self) -> f64 {
        rational_to_f64(&self.abs())
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::from_ratio(num, den)
}

/// Formats a rational as `n` or `n/d` in lowest terms.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
