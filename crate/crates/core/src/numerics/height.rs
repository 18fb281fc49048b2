//! Naive heights of rationals, tuples and quadratic points, plus exact sign
//! decisions for rational combinations of logarithms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dyadic::{ln_rational, DyadicInterval, Tri};
use super::quad::{arch_abs_pair, QuadExt};
use super::rational::{lcm_of_denominators, Rational};

/// The integer `max(L, |q_1 L|, ..., |q_n L|)` with `L` the lcm of the
/// denominators; its logarithm is the height of `(1, q_1, ..., q_n)`.
pub fn tuple_height_integer(qs: &[Rational]) -> BigInt {
    let l = lcm_of_denominators(qs);
    qs.iter()
        .map(|q| (q.numer() * (&l / q.denom())).abs())
        .fold(l.clone(), |m, n| if n > m { n } else { m })
}

pub fn tuple_height(qs: &[Rational], prec: u32) -> DyadicInterval {
    ln_rational(&Rational::from_integer(tuple_height_integer(qs)), prec)
}

/// `log max(|a|, |b|)` for `q = a/b` in lowest terms.
pub fn rational_height(q: &Rational, prec: u32) -> DyadicInterval {
    tuple_height(std::slice::from_ref(q), prec)
}

/// Primitive integer minimal polynomial `(lead, mid, constant)` of a
/// quadratic element, or of a rational viewed as a degree-one point.
fn primitive_minpoly(z: &QuadExt) -> Vec<BigInt> {
    let coeffs: Vec<Rational> = if let Some(x) = z.as_rational() {
        vec![Rational::one(), -x]
    } else {
        let (t, n) = z.minimal_polynomial();
        vec![Rational::one(), -t, n]
    };
    let l = lcm_of_denominators(&coeffs);
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Absolute logarithmic Weil height of a rational or quadratic point:
/// `(1/deg) log` of the Mahler measure of its primitive minimal polynomial.
pub fn point_height(z: &QuadExt, prec: u32) -> DyadicInterval {
    if let Some(x) = z.as_rational() {
        return rational_height(x, prec);
    }
    let work = prec + 32;
    let lead = primitive_minpoly(z)[0].clone();
    let one = DyadicInterval::from_int(1, work);
    let (a, b) = arch_abs_pair(z, work);
    let m = DyadicInterval::from_int(lead, work)
        .mul(&a.max(&one))
        .mul(&b.max(&one));
    m.ln().mul_pow2(-1).with_precision(prec)
}

/// `sum r_i log(n_i) + c`, with each `n_i` a positive integer.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LogLinear {
    terms: Vec<(Rational, BigInt)>,
    constant: Rational,
}

const MAX_SIGN_PRECISION: u32 = 1 << 14;

impl LogLinear {
    pub fn zero() -> Self {
        LogLinear::default()
    }

    pub fn log(n: impl Into<BigInt>) -> Self {
        LogLinear::zero().plus_log(Rational::one(), n)
    }

    pub fn constant(c: Rational) -> Self {
        LogLinear {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn plus_log(mut self, coeff: Rational, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        assert!(n.is_positive(), "logarithm of a nonpositive integer");
        if !coeff.is_zero() && !n.is_one() {
            self.terms.push((coeff, n));
        }
        self
    }

    pub fn plus_constant(mut self, c: Rational) -> Self {
        self.constant += c;
        self
    }

    pub fn add(mut self, other: &LogLinear) -> Self {
        self.terms.extend(other.terms.iter().cloned());
        self.constant += &other.constant;
        self
    }

    pub fn scale(mut self, k: &Rational) -> Self {
        for t in &mut self.terms {
            t.0 *= k;
        }
        self.constant *= k;
        self.terms.retain(|t| !t.0.is_zero());
        self
    }

    pub fn sub(self, other: &LogLinear) -> Self {
        self.add(&other.clone().scale(&-Rational::one()))
    }

    pub fn enclosure(&self, prec: u32) -> DyadicInterval {
        let mut acc = DyadicInterval::from_rational(&self.constant, prec);
        for (r, n) in &self.terms {
            acc = acc.add(&ln_rational(&Rational::from_integer(n.clone()), prec).mul_rational(r));
        }
        acc
    }

    /// Exact sign. With no constant term this compares two integer powers;
    /// otherwise the value cannot vanish (a nonzero rational is never the
    /// log of an algebraic number), so refining the enclosure terminates.
    pub fn signum(&self) -> i32 {
        if self.constant.is_zero() {
            return self.power_sign();
        }
        let mut prec = 128;
        while prec <= MAX_SIGN_PRECISION {
            let e = self.enclosure(prec);
            if e.lo().signum() > 0 {
                return 1;
            }
            if e.hi().signum() < 0 {
                return -1;
            }
            prec *= 2;
        }
        panic!("log-linear sign not resolved at {MAX_SIGN_PRECISION} bits");
    }

    fn power_sign(&self) -> i32 {
        let l = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (r, _)| acc.lcm(r.denom()));
        let mut pos = BigInt::one();
        let mut neg = BigInt::one();
        for (r, n) in &self.terms {
            let e = (r * Rational::from_integer(l.clone())).to_integer();
            let k: u32 = e
                .magnitude()
                .try_into()
                .expect("exponent too large for exact comparison");
            let p = num_traits::pow(n.clone(), k as usize);
            if e.is_positive() {
                pos *= p;
            } else {
                neg *= p;
            }
        }
        match pos.cmp(&neg) {
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// `self <= other`, decided exactly.
    pub fn le(&self, other: &LogLinear) -> bool {
        self.clone().sub(other).signum() <= 0
    }

    pub fn lt_tri(&self, other: &LogLinear) -> Tri {
        Tri::from_bool(self.clone().sub(other).signum() < 0)
    }
}

impl fmt::Display for LogLinear {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|(r, n)| {
                if r.is_one() {
                    format!("log {n}")
                } else {
                    format!("({r}) log {n}")
                }
            })
            .collect();
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(self.constant.to_string());
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Exact `log` of the tuple height integer.
pub fn tuple_height_exact(qs: &[Rational]) -> LogLinear {
    LogLinear::log(tuple_height_integer(qs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    #[test]
    fn rational_heights() {
        let h = rational_height(&rat(3, 2), 128);
        let (lo, hi) = h.to_f64_bounds();
        assert!(lo <= 3f64.ln() && 3f64.ln() <= hi && hi - lo < 1e-15);
        assert!(rational_height(&int(0), 64).is_point());
        assert_eq!(tuple_height_integer(&[int(-3), int(0)]), BigInt::from(3));
        assert_eq!(tuple_height_integer(&[rat(-3, 4), rat(3, 4)]), BigInt::from(4));
    }

    #[test]
    fn point_height_of_sqrt2() {
        // Mahler measure of T^2 - 2 is 2, so h(sqrt 2) = log(2)/2.
        let h = point_height(&QuadExt::sqrt_of(&int(2)), 96);
        let (lo, hi) = h.to_f64_bounds();
        assert!(lo <= 0.5 * 2f64.ln() + 1e-15 && 0.5 * 2f64.ln() - 1e-15 <= hi);
    }

    #[test]
    fn exact_signs() {
        // log 6 <= log 2 + log 3 + 2 log 2 : equality-free power compare
        let lhs = LogLinear::log(6);
        let rhs = LogLinear::log(2).plus_log(int(3), 2).plus_log(int(1), 3);
        assert!(lhs.le(&rhs));
        assert_eq!(LogLinear::log(6).sub(&LogLinear::log(2).add(&LogLinear::log(3))).signum(), 0);
        // log 3 vs 1.1
        assert_eq!(LogLinear::log(3).plus_constant(rat(-11, 10)).signum(), -1);
    }
}
