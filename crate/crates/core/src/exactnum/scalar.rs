use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational numbers. `BigRational` keeps itself normalized
/// (coprime parts, positive denominator).
pub type Rational = BigRational;

/// Ring-like scalar usable as a matrix entry.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
}

/// A scalar with exact zero test and exact inverses.
pub trait Field: Scalar {
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;

    fn try_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.clone() * r)
    }

    /// Membership in the ring of integers of the field.
    fn is_integral(&self) -> bool;

    fn from_rational(q: Rational) -> Self;
}

impl Scalar for Rational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for Rational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_integral(&self) -> bool {
        self.is_integer()
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Sign of a rational as -1, 0, 1.
pub fn rational_sign(q: &Rational) -> i32 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}
