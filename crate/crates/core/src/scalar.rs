//! Scalar abstraction for exact small-graph computations.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// Field-like numeric type used by law tables and exact enumerations.
///
/// Only ring operations, division and comparison are needed, so both
/// floating point and exact rationals qualify.
pub trait Scalar: Num + Clone + Debug + PartialOrd + FromPrimitive + ToPrimitive + Send + Sync {
    fn from_ratio(num: u64, den: u64) -> Self {
        Self::from_u64(num).expect("numerator representable")
            / Self::from_u64(den).expect("denominator representable")
    }

    /// Best-effort conversion used for reporting and tolerance checks.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn abs_diff(&self, other: &Self) -> Self {
        if self > other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }

    fn powi(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }

    fn is_probability(&self) -> bool {
        *self >= Self::zero() && *self <= Self::one()
    }
}

impl Scalar for f32 {
    fn powi(&self, exp: u32) -> Self {
        f32::powi(*self, exp as i32)
    }
}

impl Scalar for f64 {
    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn powi(&self, exp: u32) -> Self {
        f64::powi(*self, exp as i32)
    }
}

impl Scalar for Ratio<i64> {}

impl Scalar for BigRational {
    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

/// Parses a decimal literal such as `0.35` or `1/3` into an exact rational.
pub fn rational_from_decimal(text: &str) -> Option<Rational> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let num: BigInt = num.trim().parse().ok()?;
        let den: BigInt = den.trim().parse().ok()?;
        if den == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() { BigInt::from(0) } else { digits.parse().ok()? };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(num, den);
    Some(if negative { -value } else { value })
}
