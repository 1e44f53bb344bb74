//! Scalar traits the exact linear algebra is written against.
//!
//! Everything in this crate decides questions by exact equality (is a pairing
//! zero, is a root in a span), so the traits model exact fields only.

use std::fmt;
use std::hash::Hash;
use std::ops::{Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// An exact field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }
}

/// The prime field ℚ, in whatever integer width the caller picks.
pub trait RationalField: Field + Ord + Hash + fmt::Display + FromStr {
    fn from_i64(n: i64) -> Self;
    fn from_frac(n: i64, d: i64) -> Self;
    fn is_integral(&self) -> bool;
    /// Exact square root when `self` is the square of a rational.
    fn rational_sqrt(&self) -> Option<Self>;
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + fmt::Debug,
{
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl<T> RationalField for Ratio<T>
where
    T: Clone + Integer + Signed + Roots + Hash + fmt::Debug + fmt::Display + FromStr + From<i64>,
{
    fn from_i64(n: i64) -> Self {
        Ratio::from_integer(T::from(n))
    }

    fn from_frac(n: i64, d: i64) -> Self {
        Ratio::new(T::from(n), T::from(d))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn rational_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        let root = Ratio::new(n, d);
        (root.clone() * root.clone() == *self).then_some(root)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn rational_sqrt_of_squares_only() {
        assert_eq!(
            Rational::from_frac(9, 4).rational_sqrt(),
            Some(Rational::from_frac(3, 2))
        );
        assert_eq!(Rational::from_i64(2).rational_sqrt(), None);
        assert_eq!(Rational::from_i64(-1).rational_sqrt(), None);
        assert_eq!(Rational::from_i64(0).rational_sqrt(), Some(Rational::from_i64(0)));
    }

    #[test]
    fn small_width_rationals_satisfy_the_trait() {
        type R64 = num_rational::Rational64;
        let a = R64::from_frac(3, 7);
        assert_eq!(a.inv().unwrap() * a, R64::one());
        assert!(R64::zero().inv().is_none());
    }
}
