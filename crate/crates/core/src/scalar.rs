//! Scalar fields the quaternion arithmetic is generic over.
//!
//! Two scalars are supported: [`Rational`] (arbitrary precision, used for every
//! polynomial identity that must hold exactly) and `f64` (kernels, quadrature).

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Relative tolerance used when a float vector must be a unit vector.
pub const UNIT_TOLERANCE: f64 = 1e-12;

pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + FromStr
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// True when `self` equals one, exactly for rationals and within
    /// [`UNIT_TOLERANCE`] for floats.
    fn is_unit_value(&self) -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn is_negative_value(&self) -> bool {
        self.to_f64() < 0.0
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_unit_value(&self) -> bool {
        (self - 1.0).abs() <= UNIT_TOLERANCE
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn is_unit_value(&self) -> bool {
        self.is_one()
    }

    fn is_negative_value(&self) -> bool {
        self.is_negative()
    }
}

/// Converts a big rational to the nearest-ish `f64`, staying finite for huge
/// numerators and denominators (factorials overflow `f64` long before they
/// overflow a `BigInt`).
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    let numer = r.numer();
    let denom = r.denom();
    let shift_n = numer.bits().saturating_sub(60) as i64;
    let shift_d = denom.bits().saturating_sub(60) as i64;
    let n = (numer >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (denom >> shift_d as usize).to_f64().unwrap_or(1.0);
    let e = (shift_n - shift_d) as i32;
    (n / d) * 2f64.powi(e)
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `ln(n!)` by direct summation; exact enough for truncation bounds.
pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn huge_factorial_ratio_stays_finite() {
        let r = Rational::new(factorial(200), factorial(198));
        assert!((rational_to_f64(&r) - 200.0 * 199.0).abs() < 1e-9);
        let tiny = Rational::new(BigInt::one(), factorial(150));
        let v = rational_to_f64(&tiny);
        assert!(v > 0.0 && v < 1e-250);
    }

    #[test]
    fn unit_checks() {
        assert!(Rational::one().is_unit_value());
        assert!(!rational(3, 4).is_unit_value());
        assert!((1.0 + 1e-13).is_unit_value());
        assert!(!(1.0 + 1e-9).is_unit_value());
    }

    #[test]
    fn ln_factorial_matches_product() {
        assert!((ln_factorial(10) - 3_628_800f64.ln()).abs() < 1e-12);
        assert_eq!(ln_factorial(0), 0.0);
    }
}
