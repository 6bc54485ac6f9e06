use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::field::{check_embedding, EmbeddingId, EmbeddingImage, FieldTag, NumberField};
use super::hp::{self, HpReal};
use super::scalar::{int, Field, Rational, Scalar};
use super::ExactError;

/// `a + b*t + c*t^2` with `t = cbrt(2)`, so `t^3 = 2`.
///
/// Embedding 1 is real (`t -> 2^(1/3)`), embedding 2 sends `t` to
/// `2^(1/3) e^(2 pi i / 3)` and embedding 3 is its complex conjugate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CubicElement {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl CubicElement {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        CubicElement { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        CubicElement::new(int(a), int(b), int(c))
    }

    pub fn cbrt2() -> Self {
        CubicElement::from_ints(0, 1, 0)
    }

    /// Field norm `a^3 + 2 b^3 + 4 c^3 - 6abc`.
    pub fn norm(&self) -> Rational {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        a * a * a + int(2) * b * b * b + int(4) * c * c * c - int(6) * a * b * c
    }

    fn is_zero_elem(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// Number of fixed-point roundings in one embedding evaluation; used as
    /// the interval half-width for sign decisions.
    fn rounding_slack(&self) -> HpReal {
        let mag = |q: &Rational| q.abs().ceil().to_integer();
        let total = mag(&self.a) + mag(&self.b) + mag(&self.c) + BigInt::from(4);
        HpReal::ulps(8).scaled(&total)
    }
}

impl fmt::Display for CubicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

impl fmt::Debug for CubicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}t+{}t2", self.a, self.b, self.c)
    }
}

impl Add for &CubicElement {
    type Output = CubicElement;
    fn add(self, rhs: &CubicElement) -> CubicElement {
        CubicElement::new(&self.a + &rhs.a, &self.b + &rhs.b, &self.c + &rhs.c)
    }
}

impl Sub for &CubicElement {
    type Output = CubicElement;
    fn sub(self, rhs: &CubicElement) -> CubicElement {
        CubicElement::new(&self.a - &rhs.a, &self.b - &rhs.b, &self.c - &rhs.c)
    }
}

impl Mul for &CubicElement {
    type Output = CubicElement;
    fn mul(self, rhs: &CubicElement) -> CubicElement {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let (d, e, f) = (&rhs.a, &rhs.b, &rhs.c);
        let two = int(2);
        CubicElement::new(
            a * d + &two * (b * f + c * e),
            a * e + b * d + &two * c * f,
            a * f + b * e + c * d,
        )
    }
}

impl Neg for &CubicElement {
    type Output = CubicElement;
    fn neg(self) -> CubicElement {
        CubicElement::new(-&self.a, -&self.b, -&self.c)
    }
}

super::forward_owned_ops!(CubicElement);

impl Scalar for CubicElement {
    fn zero() -> Self {
        CubicElement::from_ints(0, 0, 0)
    }
    fn one() -> Self {
        CubicElement::from_ints(1, 0, 0)
    }
    fn from_i64(v: i64) -> Self {
        CubicElement::from_ints(v, 0, 0)
    }
}

impl Field for CubicElement {
    fn is_zero(&self) -> bool {
        self.is_zero_elem()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero_elem() {
            return None;
        }
        let n = self.norm();
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let two = int(2);
        Some(CubicElement::new(
            (a * a - &two * b * c) / &n,
            (&two * c * c - a * b) / &n,
            (b * b - a * c) / &n,
        ))
    }

    fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer() && self.c.is_integer()
    }

    fn from_rational(q: Rational) -> Self {
        CubicElement::new(q, Rational::zero(), Rational::zero())
    }
}

impl NumberField for CubicElement {
    const TAG: FieldTag = FieldTag::Cbrt2;

    fn embeddings() -> Vec<EmbeddingId> {
        vec![EmbeddingId(1), EmbeddingId(2), EmbeddingId(3)]
    }

    fn representatives() -> Vec<EmbeddingId> {
        vec![EmbeddingId(1), EmbeddingId(2)]
    }

    fn is_real_embedding(id: EmbeddingId) -> bool {
        id.0 == 1
    }

    fn embed(&self, id: EmbeddingId) -> Result<EmbeddingImage, ExactError> {
        check_embedding(id, 3)?;
        let a = HpReal::from_rational(&self.a);
        let bt = &HpReal::from_rational(&self.b) * hp::cbrt2();
        let ct2 = &HpReal::from_rational(&self.c) * hp::cbrt4();
        if id.0 == 1 {
            return Ok(EmbeddingImage::real(id, &(&a + &bt) + &ct2));
        }
        // t -> t w, t^2 -> t^2 w^2 with w = -1/2 + i sqrt3/2, w^2 = conj(w)
        let re = &a - &(&bt + &ct2).half();
        let im = &(&bt - &ct2).half() * hp::sqrt3();
        let im = if id.0 == 2 { im } else { -&im };
        Ok(EmbeddingImage {
            embedding: id,
            real_part: re,
            imag_part: im,
        })
    }

    fn real_sign(&self, id: EmbeddingId) -> Result<Ordering, ExactError> {
        check_embedding(id, 3)?;
        if !Self::is_real_embedding(id) {
            return Err(ExactError::NotReal(id));
        }
        if self.is_zero_elem() {
            return Ok(Ordering::Equal);
        }
        let v = self.embed(id)?.real_part;
        if v.abs() > self.rounding_slack() {
            Ok(if v.is_negative() {
                Ordering::Less
            } else {
                Ordering::Greater
            })
        } else {
            Err(ExactError::SignUndecided(self.to_string()))
        }
    }

    fn galois_image(&self, id: EmbeddingId) -> Result<Self, ExactError> {
        check_embedding(id, 3)?;
        if id.0 == 1 {
            Ok(self.clone())
        } else {
            // Q(cbrt2) has no nontrivial automorphisms
            Err(ExactError::NotAutomorphism(id))
        }
    }

    fn coefficients(&self) -> Vec<Rational> {
        vec![self.a.clone(), self.b.clone(), self.c.clone()]
    }

    fn from_coefficients(coeffs: &[Rational]) -> Result<Self, ExactError> {
        match coeffs {
            [a, b, c] => Ok(CubicElement::new(a.clone(), b.clone(), c.clone())),
            [a] => Ok(CubicElement::from_rational(a.clone())),
            _ => Err(ExactError::Arity {
                field: FieldTag::Cbrt2,
                expected: 3,
                found: coeffs.len(),
            }),
        }
    }
}
