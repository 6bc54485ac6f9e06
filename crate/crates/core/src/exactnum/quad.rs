use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use super::field::{check_embedding, EmbeddingId, EmbeddingImage, FieldTag, NumberField};
use super::hp::{self, HpReal};
use super::scalar::{int, Field, Rational, Scalar};
use super::ExactError;

/// `a + b*sqrt(2)` with rational `a`, `b`. Integral `a`, `b` give `Z[sqrt 2]`,
/// the ring of integers of `Q(sqrt 2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub a: Rational,
    pub b: Rational,
}

impl QuadElement {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadElement { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadElement::new(int(a), int(b))
    }

    pub fn sqrt2() -> Self {
        QuadElement::from_ints(0, 1)
    }

    /// The nontrivial automorphism `a + b sqrt2 -> a - b sqrt2`.
    pub fn galois_conjugate(&self) -> Self {
        QuadElement::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a^2 - 2 b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - int(2) * &self.b * &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact square test in `Q(sqrt 2)`.
    pub fn is_square(&self) -> bool {
        if self.is_zero_elem() {
            return true;
        }
        if self.b.is_zero() {
            // (x + y sqrt2)^2 rational forces x = 0 or y = 0
            return rational_is_square(&self.a) || rational_is_square(&(&self.a / int(2)));
        }
        // x^2 = (a +- sqrt(a^2 - 2b^2)) / 2 with y = b / (2x)
        let n = self.norm();
        let Some(r) = rational_sqrt(&n) else {
            return false;
        };
        [(&self.a + &r) / int(2), (&self.a - &r) / int(2)]
            .iter()
            .any(|x2| x2.is_positive() && rational_is_square(x2))
    }

    fn is_zero_elem(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Largest absolute coefficient, used to rank search hits.
    pub fn height(&self) -> Rational {
        let a = self.a.abs();
        let b = self.b.abs();
        if a > b {
            a
        } else {
            b
        }
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

fn rational_is_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

/// Exact sign of `u + v*sqrt(2)`.
pub(crate) fn sign_plus_sqrt2(u: &Rational, v: &Rational) -> Ordering {
    let zero = Rational::zero();
    let su = u.cmp(&zero);
    let sv = v.cmp(&zero);
    match (su, sv) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (x, y) if x == y => x,
        _ => {
            let u2 = u * u;
            let v2 = int(2) * v * v;
            match u2.cmp(&v2) {
                Ordering::Greater => su,
                Ordering::Less => sv,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

impl fmt::Debug for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}r2", self.a, self.b)
    }
}

impl Add for &QuadElement {
    type Output = QuadElement;
    fn add(self, rhs: &QuadElement) -> QuadElement {
        QuadElement::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadElement {
    type Output = QuadElement;
    fn sub(self, rhs: &QuadElement) -> QuadElement {
        QuadElement::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &QuadElement {
    type Output = QuadElement;
    fn mul(self, rhs: &QuadElement) -> QuadElement {
        let a = &self.a * &rhs.a + int(2) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadElement::new(a, b)
    }
}

impl Neg for &QuadElement {
    type Output = QuadElement;
    fn neg(self) -> QuadElement {
        QuadElement::new(-&self.a, -&self.b)
    }
}

super::forward_owned_ops!(QuadElement);

impl Scalar for QuadElement {
    fn zero() -> Self {
        QuadElement::from_ints(0, 0)
    }
    fn one() -> Self {
        QuadElement::from_ints(1, 0)
    }
    fn from_i64(v: i64) -> Self {
        QuadElement::from_ints(v, 0)
    }
}

impl Field for QuadElement {
    fn is_zero(&self) -> bool {
        self.is_zero_elem()
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero_elem() {
            return None;
        }
        let n = self.norm();
        let c = self.galois_conjugate();
        Some(QuadElement::new(c.a / &n, c.b / &n))
    }

    fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    fn from_rational(q: Rational) -> Self {
        QuadElement::new(q, Rational::zero())
    }
}

impl NumberField for QuadElement {
    const TAG: FieldTag = FieldTag::Sqrt2;

    fn embeddings() -> Vec<EmbeddingId> {
        vec![EmbeddingId(1), EmbeddingId(2)]
    }

    fn representatives() -> Vec<EmbeddingId> {
        Self::embeddings()
    }

    fn is_real_embedding(_: EmbeddingId) -> bool {
        true
    }

    fn embed(&self, id: EmbeddingId) -> Result<EmbeddingImage, ExactError> {
        check_embedding(id, 2)?;
        let a = HpReal::from_rational(&self.a);
        let b = HpReal::from_rational(&self.b);
        let bs = &b * hp::sqrt2();
        let re = if id.0 == 1 { &a + &bs } else { &a - &bs };
        Ok(EmbeddingImage::real(id, re))
    }

    fn real_sign(&self, id: EmbeddingId) -> Result<Ordering, ExactError> {
        check_embedding(id, 2)?;
        let v = if id.0 == 1 { self.b.clone() } else { -self.b.clone() };
        Ok(sign_plus_sqrt2(&self.a, &v))
    }

    fn galois_image(&self, id: EmbeddingId) -> Result<Self, ExactError> {
        check_embedding(id, 2)?;
        Ok(if id.0 == 1 {
            self.clone()
        } else {
            self.galois_conjugate()
        })
    }

    fn coefficients(&self) -> Vec<Rational> {
        vec![self.a.clone(), self.b.clone()]
    }

    fn from_coefficients(coeffs: &[Rational]) -> Result<Self, ExactError> {
        match coeffs {
            [a, b] => Ok(QuadElement::new(a.clone(), b.clone())),
            [a] => Ok(QuadElement::from_rational(a.clone())),
            _ => Err(ExactError::Arity {
                field: FieldTag::Sqrt2,
                expected: 2,
                found: coeffs.len(),
            }),
        }
    }
}
