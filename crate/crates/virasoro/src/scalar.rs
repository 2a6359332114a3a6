//! Coefficient rings used throughout the engine.
//!
//! Every ring here is a Q-algebra, so small rational constants can be
//! injected with [`Ring::from_ratio`].

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn from_q(q: &Rational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.clone() * Self::from_ratio(num, den)
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Rings in which nonzero elements can be inverted.
pub trait Field: Ring {
    fn inv(&self) -> Self;
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        rat(num, den)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_q(q: &Rational) -> Self {
        q.clone()
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_q(q: &Rational) -> Self {
        num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
}

impl Field for f64 {
    fn inv(&self) -> Self {
        1.0 / self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_basics() {
        let a = rat(2, 6);
        assert_eq!(a, rat(1, 3));
        assert_eq!(a.inv(), rat(3, 1));
        assert!(Ring::is_zero(&(a.clone() - a)));
        assert_eq!(rat(1, 2).pow(3), rat(1, 8));
    }

    #[test]
    fn float_ring() {
        assert_eq!(<f64 as Ring>::from_ratio(3, 4), 0.75);
        assert_eq!(2.0f64.scale_ratio(1, 4), 0.5);
    }
}
