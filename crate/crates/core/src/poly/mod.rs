//! Polynomials over Q in raw, monic-centred and critical-parameter form.

pub mod affine;
pub mod critical;
pub mod inequalities;
pub mod parse;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::rational::fmt_canonical;
use crate::numerics::{parse_rational, tuple_height, DyadicInterval, QuadExt, Rational};

pub use affine::{
    affine_conjugate, conjugate_coeffs, monic_centred_height, monic_centred_height_exact, to_monic_centred, AffineMap, MonicCentred};
pub use critical::{
    critical_points, critical_points_cubic, from_critical_points, g_forms, CriticalPoint, CriticalVector,
};
pub use parse::{parse_coefficients, parse_point, parse_poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Form {
    Raw,
    MonicCentred,
    CriticalParam,
}

/// A polynomial of degree at least 2 with rational coefficients.
///
/// The form tag is derived, never asserted by the caller: `CriticalParam`
/// exactly when built from a critical vector, `MonicCentred` when
/// `a_d = 1, a_{d-1} = 0`, otherwise `Raw`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolySpec {
    coeffs: Vec<Rational>,
    critical: Option<CriticalVector>,
}

impl PolySpec {
    /// From coefficients listed lowest degree first; trailing zeros are
    /// dropped before the degree check.
    pub fn new(mut coeffs: Vec<Rational>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.len() < 3 {
            return Err(Error::DegreeTooSmall {
                min: 2,
                got: coeffs.len().saturating_sub(1),
            });
        }
        Ok(PolySpec {
            coeffs,
            critical: None,
        })
    }

    pub(crate) fn with_critical(coeffs: Vec<Rational>, c: CriticalVector) -> Self {
        PolySpec {
            coeffs,
            critical: Some(c),
        }
    }

    /// `z^3 + A z + B`.
    pub fn cubic(a: Rational, b: Rational) -> Self {
        PolySpec::new(vec![b, a, Rational::zero(), Rational::one()]).expect("degree 3")
    }

    /// `z^2 + c`.
    pub fn quadratic(c: Rational) -> Self {
        PolySpec::new(vec![c, Rational::zero(), Rational::one()]).expect("degree 2")
    }

    /// `z^d + c`.
    pub fn unicritical(d: usize, c: Rational) -> Result<Self> {
        let mut v = vec![Rational::zero(); d + 1];
        v[0] = c;
        v[d] = Rational::one();
        PolySpec::new(v)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients `a_0, ..., a_d`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> &Rational {
        self.coeffs.last().expect("nonempty")
    }

    pub fn critical_vector(&self) -> Option<&CriticalVector> {
        self.critical.as_ref()
    }

    pub fn form(&self) -> Form {
        if self.critical.is_some() {
            Form::CriticalParam
        } else if self.leading().is_one() && self.coeffs[self.degree() - 1].is_zero() {
            Form::MonicCentred
        } else {
            Form::Raw
        }
    }

    /// The same polynomial with the critical vector forgotten.
    pub fn as_raw(&self) -> PolySpec {
        PolySpec {
            coeffs: self.coeffs.clone(),
            critical: None,
        }
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    pub fn eval_quad(&self, z: &QuadExt) -> QuadExt {
        z.eval_rational_poly(&self.coeffs)
    }

    /// Derivative coefficients, lowest first.
    pub fn derivative_coeffs(&self) -> Vec<Rational> {
        derivative(&self.coeffs)
    }

    /// The derivative as a polynomial; fails for quadratics.
    pub fn derivative(&self) -> Result<PolySpec> {
        PolySpec::new(self.derivative_coeffs())
    }

    /// `h(a_d, ..., a_0)`.
    pub fn coefficient_height(&self, prec: u32) -> DyadicInterval {
        tuple_height(&self.coeffs, prec)
    }

    /// Primes at which some coefficient is non-integral or `a_d` is not a
    /// unit.
    pub fn bad_primes(&self) -> Result<Vec<u64>> {
        let mut ps = crate::numerics::rational::prime_divisors(self.leading().numer())?;
        for c in &self.coeffs {
            ps.extend(crate::numerics::rational::prime_divisors(c.denom())?);
        }
        ps.sort_unstable();
        ps.dedup();
        Ok(ps)
    }
}

pub fn derivative(coeffs: &[Rational]) -> Vec<Rational> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * Rational::from_integer(i.into()))
        .collect()
}

/// Canonical text form: `d; a_d, ..., a_0` with every coefficient as
/// `num/den`, followed by `; crit c_1, ..., c_{d-1}` for critical-parameter
/// polynomials.
impl fmt::Display for PolySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs.iter().rev().map(fmt_canonical).collect();
        write!(f, "{}; {}", self.degree(), cs.join(", "))?;
        if let Some(c) = &self.critical {
            let v: Vec<String> = c.0.iter().map(fmt_canonical).collect();
            write!(f, "; crit {}", v.join(", "))?;
        }
        Ok(())
    }
}

impl FromStr for PolySpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(';');
        let head = parts.next().unwrap_or("");
        let d: usize = head
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("invalid degree '{}'", head.trim())))?;
        let body_start = head.len() + 1;
        let body = parts
            .next()
            .ok_or_else(|| Error::parse(s.len(), "missing coefficient list"))?;
        let mut coeffs = Vec::new();
        let mut offset = body_start;
        for c in body.split(',') {
            coeffs.push(parse_rational(c).map_err(|e| shift(e, offset))?);
            offset += c.len() + 1;
        }
        if coeffs.len() != d + 1 {
            return Err(Error::parse(
                body_start,
                format!("degree {d} needs {} coefficients, got {}", d + 1, coeffs.len()),
            ));
        }
        if coeffs[0].is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        coeffs.reverse();
        let tail_start = body_start + body.len() + 1;
        match parts.next() {
            None => PolySpec::new(coeffs),
            Some(tail) => {
                let list = tail
                    .trim()
                    .strip_prefix("crit")
                    .ok_or_else(|| Error::parse(tail_start, "expected 'crit'"))?;
                let c = list
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| shift(e, tail_start))?;
                let p = from_critical_points(&CriticalVector(c));
                if p.coeffs != coeffs {
                    return Err(Error::parse(
                        tail_start,
                        "critical vector does not reproduce the coefficients",
                    ));
                }
                Ok(p)
            }
        }
    }
}

fn shift(e: Error, offset: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::parse(offset + pos, msg),
        other => other,
    }
}

impl Serialize for PolySpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PolySpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
