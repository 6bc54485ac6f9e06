//! Fixed-point reals with 192 fractional bits, used for embedding images.
//!
//! Values are `mantissa * 2^-192` with truncation toward negative infinity on
//! every product and quotient. Each rounding contributes at most one unit in
//! the last place, which is far below anything visible after conversion to
//! `f64`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::Rational;

pub const FRAC_BITS: u32 = 192;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HpReal(BigInt);

impl HpReal {
    pub fn zero() -> Self {
        HpReal(BigInt::zero())
    }

    pub fn from_rational(q: &Rational) -> Self {
        let scaled: BigInt = q.numer().clone() << FRAC_BITS;
        HpReal(scaled.div_floor(q.denom()))
    }

    pub fn from_i64(v: i64) -> Self {
        HpReal(BigInt::from(v) << FRAC_BITS)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.0
    }

    /// Bound on the accumulated rounding error after `ops` roundings.
    pub fn ulps(ops: u64) -> Self {
        HpReal(BigInt::from(ops))
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        HpReal(&self.0 * k)
    }

    pub fn abs(&self) -> Self {
        HpReal(self.0.abs())
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        // Shift down to 64 significant bits before converting so that the
        // f64 conversion sees a moderately sized integer.
        let bits = self.0.bits();
        if bits <= 1000 {
            let v = self.0.to_f64().unwrap_or(f64::NAN);
            return v * 2f64.powi(-(FRAC_BITS as i32));
        }
        f64::NAN
    }

    pub fn mul_int(&self, k: i64) -> Self {
        HpReal(&self.0 * BigInt::from(k))
    }

    pub fn half(&self) -> Self {
        HpReal(self.0.div_floor(&BigInt::from(2)))
    }
}

impl fmt::Debug for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl Add for &HpReal {
    type Output = HpReal;
    fn add(self, rhs: &HpReal) -> HpReal {
        HpReal(&self.0 + &rhs.0)
    }
}

impl Sub for &HpReal {
    type Output = HpReal;
    fn sub(self, rhs: &HpReal) -> HpReal {
        HpReal(&self.0 - &rhs.0)
    }
}

impl Mul for &HpReal {
    type Output = HpReal;
    fn mul(self, rhs: &HpReal) -> HpReal {
        let p = &self.0 * &rhs.0;
        HpReal(p >> FRAC_BITS)
    }
}

impl Neg for &HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal(-&self.0)
    }
}

fn root_constant(radicand: u32, degree: u32) -> HpReal {
    let scaled = BigInt::from(radicand) << (FRAC_BITS * degree);
    HpReal(scaled.nth_root(degree))
}

pub fn sqrt2() -> &'static HpReal {
    static C: OnceLock<HpReal> = OnceLock::new();
    C.get_or_init(|| root_constant(2, 2))
}

pub fn sqrt3() -> &'static HpReal {
    static C: OnceLock<HpReal> = OnceLock::new();
    C.get_or_init(|| root_constant(3, 2))
}

pub fn cbrt2() -> &'static HpReal {
    static C: OnceLock<HpReal> = OnceLock::new();
    C.get_or_init(|| root_constant(2, 3))
}

pub fn cbrt4() -> &'static HpReal {
    static C: OnceLock<HpReal> = OnceLock::new();
    C.get_or_init(|| root_constant(4, 3))
}
