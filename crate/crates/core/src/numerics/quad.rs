//! Elements `x + y*sqrt(D)` of a quadratic extension of Q.
//!
//! `D` is an arbitrary rational that is not a rational square; it is not
//! reduced to a squarefree integer, so elements from the same orbit must be
//! built from one `D`. Rational elements carry `D = 0` and combine freely
//! with any field.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::complex::ComplexInterval;
use super::dyadic::DyadicInterval;
use super::rational::{bit_size, fmt_short, rational_sqrt, Rational};
use super::valuation::{check_prime, vp, ValOrInf};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    x: Rational,
    y: Rational,
    d: Rational,
}

impl QuadExt {
    /// Builds `x + y*sqrt(d)`, folding to a rational when `y = 0` or `d` is a
    /// rational square.
    pub fn new(x: Rational, y: Rational, d: Rational) -> Self {
        if y.is_zero() || d.is_zero() {
            return QuadExt::rational(x);
        }
        if let Some(s) = rational_sqrt(&d) {
            return QuadExt::rational(x + y * s);
        }
        QuadExt { x, y, d }
    }

    pub fn rational(x: Rational) -> Self {
        QuadExt {
            x,
            y: Rational::zero(),
            d: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        QuadExt::rational(Rational::zero())
    }

    pub fn one() -> Self {
        QuadExt::rational(Rational::one())
    }

    /// A square root of `q`: `sqrt(q)` in `Q(sqrt(q))`, or a rational when
    /// `q` is a square.
    pub fn sqrt_of(q: &Rational) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), q.clone())
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    /// The radicand, or zero for a rational element.
    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.x)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `x = 0` or `y = 0`, so that the square is rational.
    pub fn is_pure(&self) -> bool {
        self.x.is_zero() || self.y.is_zero()
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt {
            x: self.x.clone(),
            y: -&self.y,
            d: self.d.clone(),
        }
    }

    pub fn norm(&self) -> Rational {
        &self.x * &self.x - &self.d * &self.y * &self.y
    }

    pub fn trace(&self) -> Rational {
        &self.x * Rational::from_integer(BigInt::from(2))
    }

    pub fn bit_size(&self) -> u64 {
        bit_size(&self.x) + bit_size(&self.y)
    }

    fn field_with(&self, other: &QuadExt) -> Result<Rational> {
        if self.is_rational() {
            Ok(other.d.clone())
        } else if other.is_rational() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(Error::MixedField {
                left: fmt_short(&self.d),
                right: fmt_short(&other.d),
            })
        }
    }

    fn build(x: Rational, y: Rational, d: Rational) -> QuadExt {
        if y.is_zero() {
            QuadExt::rational(x)
        } else {
            QuadExt { x, y, d }
        }
    }

    pub fn checked_add(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.field_with(o)?;
        Ok(QuadExt::build(&self.x + &o.x, &self.y + &o.y, d))
    }

    pub fn checked_sub(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.field_with(o)?;
        Ok(QuadExt::build(&self.x - &o.x, &self.y - &o.y, d))
    }

    pub fn checked_mul(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.field_with(o)?;
        let x = &self.x * &o.x + &d * &self.y * &o.y;
        let y = &self.x * &o.y + &self.y * &o.x;
        Ok(QuadExt::build(x, y, d))
    }

    pub fn inv(&self) -> Result<QuadExt> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadExt::build(&self.x / &n, -&self.y / &n, self.d.clone()))
    }

    pub fn checked_div(&self, o: &QuadExt) -> Result<QuadExt> {
        self.checked_mul(&o.inv()?)
    }

    pub fn add_rational(&self, q: &Rational) -> QuadExt {
        QuadExt {
            x: &self.x + q,
            y: self.y.clone(),
            d: self.d.clone(),
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> QuadExt {
        QuadExt::build(&self.x * q, &self.y * q, self.d.clone())
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt {
            x: -&self.x,
            y: -&self.y,
            d: self.d.clone(),
        }
    }

    pub fn pow(&self, k: u32) -> QuadExt {
        let mut acc = QuadExt::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation of a rational polynomial (lowest degree first).
    pub fn eval_rational_poly(&self, coeffs: &[Rational]) -> QuadExt {
        let mut acc = QuadExt::zero();
        for c in coeffs.iter().rev() {
            acc = (&acc * self).add_rational(c);
        }
        acc
    }

    /// Trace and norm: `self` is a root of `T^2 - t*T + n`.
    pub fn minimal_polynomial(&self) -> (Rational, Rational) {
        (self.trace(), self.norm())
    }

    /// Archimedean embeddings, `sqrt(D) -> +sqrt|D|` (or `+i*sqrt|D|`)
    /// first. Rational elements have a single real embedding, as do
    /// complex ones (the conjugate has the same modulus).
    pub fn embeddings(&self, prec: u32) -> Vec<ComplexInterval> {
        let x = DyadicInterval::from_rational(&self.x, prec);
        if self.is_rational() {
            return vec![ComplexInterval::real(x)];
        }
        let s = DyadicInterval::from_rational(&self.d.abs(), prec).sqrt();
        let ys = s.mul_rational(&self.y);
        if self.d.is_positive() {
            vec![
                ComplexInterval::real(x.add(&ys)),
                ComplexInterval::real(x.sub(&ys)),
            ]
        } else {
            vec![ComplexInterval::new(x, ys)]
        }
    }
}

impl std::ops::Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, o: &QuadExt) -> QuadExt {
        self.checked_add(o).expect("mixed quadratic fields")
    }
}

impl std::ops::Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, o: &QuadExt) -> QuadExt {
        self.checked_sub(o).expect("mixed quadratic fields")
    }
}

impl std::ops::Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, o: &QuadExt) -> QuadExt {
        self.checked_mul(o).expect("mixed quadratic fields")
    }
}

impl std::ops::Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::neg(self)
    }
}

impl From<Rational> for QuadExt {
    fn from(q: Rational) -> Self {
        QuadExt::rational(q)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", fmt_short(&self.x));
        }
        let root = format!("sqrt({})", fmt_short(&self.d));
        let ymag = self.y.abs();
        let yterm = if ymag.is_one() {
            root
        } else {
            format!("{}*{}", fmt_short(&ymag), root)
        };
        if self.x.is_zero() {
            let sign = if self.y.is_negative() { "-" } else { "" };
            write!(f, "{sign}{yterm}")
        } else {
            let sign = if self.y.is_negative() { "-" } else { "+" };
            write!(f, "{}{sign}{yterm}", fmt_short(&self.x))
        }
    }
}

impl std::str::FromStr for QuadExt {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::poly::parse::parse_point(s)
    }
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Valuations of `z` and its conjugate at the places over `p`, ascending.
///
/// Read off the lower Newton polygon of `T^2 - t*T + n` through the points
/// `(0, v(n))`, `(1, v(t))`, `(2, 0)`; the negated slopes are the root
/// valuations. For rational `z` both entries are `v_p(z)`.
pub fn quad_valuations(z: &QuadExt, p: u64) -> Result<(ValOrInf, ValOrInf)> {
    check_prime(p)?;
    if z.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(quad_valuations_unchecked(z, p))
}

pub(crate) fn quad_valuations_unchecked(z: &QuadExt, p: u64) -> (ValOrInf, ValOrInf) {
    if z.is_zero() {
        return (ValOrInf::Inf, ValOrInf::Inf);
    }
    if z.is_rational() {
        let v = vp(&z.x, p);
        return (v, v);
    }
    let (t, n) = z.minimal_polynomial();
    let vn = vp(&n, p)
        .finite()
        .expect("nonzero element of a quadratic field has nonzero norm");
    match vp(&t, p) {
        ValOrInf::Finite(vt) if vt * 2 < vn => (ValOrInf::Finite(vt), ValOrInf::Finite(vn - vt)),
        _ => {
            let h = ValOrInf::Finite(vn / 2);
            (h, h)
        }
    }
}

/// Enclosures of `|x + y*sqrt(D)|` and `|x - y*sqrt(D)|`; for `D < 0` both
/// entries enclose the common complex modulus.
pub fn arch_abs_pair(z: &QuadExt, prec: u32) -> (DyadicInterval, DyadicInterval) {
    if z.is_rational() {
        let a = DyadicInterval::from_rational(&z.x.abs(), prec);
        return (a.clone(), a);
    }
    let work = prec + 64;
    if z.d.is_negative() {
        let m = DyadicInterval::from_rational(&z.norm(), work)
            .sqrt()
            .with_precision(prec);
        return (m.clone(), m);
    }
    // The embedding where x and y*sqrt(D) share a sign has no cancellation;
    // the other modulus is |N(z)| divided by it.
    let s = DyadicInterval::from_rational(&z.d, work).sqrt();
    let x = DyadicInterval::from_rational(&z.x.abs(), work);
    let big = x.add(&s.mul_rational(&z.y.abs()));
    let small = DyadicInterval::from_rational(&z.norm().abs(), work).div(&big);
    let same_sign = z.x.is_zero() || z.x.is_positive() == z.y.is_positive();
    let (plus, minus) = if same_sign { (big, small) } else { (small, big) };
    (plus.with_precision(prec), minus.with_precision(prec))
}
