use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::rational::{is_prime, Rational};
use crate::error::{Error, Result};

/// A p-adic valuation value: an exact rational, or `+inf` for zero.
///
/// Variant order matters: every finite value sorts below `Inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ValOrInf {
    Finite(Ratio<i64>),
    Inf,
}

impl ValOrInf {
    pub fn int(v: i64) -> Self {
        ValOrInf::Finite(Ratio::from_integer(v))
    }

    pub fn finite(self) -> Option<Ratio<i64>> {
        match self {
            ValOrInf::Finite(v) => Some(v),
            ValOrInf::Inf => None,
        }
    }

    pub fn is_inf(self) -> bool {
        matches!(self, ValOrInf::Inf)
    }

    /// Divides a finite value by a positive integer; `Inf` stays `Inf`.
    pub fn div_int(self, k: i64) -> Self {
        match self {
            ValOrInf::Finite(v) => ValOrInf::Finite(v / k),
            ValOrInf::Inf => ValOrInf::Inf,
        }
    }
}

impl std::ops::Add for ValOrInf {
    type Output = ValOrInf;
    fn add(self, rhs: ValOrInf) -> ValOrInf {
        match (self, rhs) {
            (ValOrInf::Finite(a), ValOrInf::Finite(b)) => ValOrInf::Finite(a + b),
            _ => ValOrInf::Inf,
        }
    }
}

impl fmt::Display for ValOrInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValOrInf::Finite(v) if v.is_integer() => write!(f, "{}", v.numer()),
            ValOrInf::Finite(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            ValOrInf::Inf => write!(f, "inf"),
        }
    }
}

/// Multiplicity of `p` in a nonzero integer.
pub(crate) fn int_valuation(n: &BigInt, p: u64) -> i64 {
    debug_assert!(!n.is_zero());
    let bp = BigInt::from(p);
    let mut m = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return e;
        }
        m = q;
        e += 1;
    }
}

/// `v_p` on Q without a primality check; callers have already validated `p`.
pub(crate) fn vp(q: &Rational, p: u64) -> ValOrInf {
    if q.is_zero() {
        return ValOrInf::Inf;
    }
    ValOrInf::int(int_valuation(q.numer(), p) - int_valuation(q.denom(), p))
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// The exponent `e` with `q = p^e * u`, `u` a p-adic unit; `+inf` for zero.
pub fn padic_valuation(q: &Rational, p: u64) -> Result<ValOrInf> {
    check_prime(p)?;
    Ok(vp(q, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    #[test]
    fn basic_values() {
        assert_eq!(padic_valuation(&int(8), 2).unwrap(), ValOrInf::int(3));
        assert_eq!(padic_valuation(&rat(4, 9), 3).unwrap(), ValOrInf::int(-2));
        assert_eq!(padic_valuation(&int(0), 5).unwrap(), ValOrInf::Inf);
        assert_eq!(padic_valuation(&int(7), 4), Err(Error::NotPrime(4)));
        assert_eq!(padic_valuation(&int(7), 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(ValOrInf::int(1000) < ValOrInf::Inf);
        assert!(ValOrInf::Finite(Ratio::new(-1, 2)) < ValOrInf::int(0));
        assert_eq!(ValOrInf::int(2) + ValOrInf::Inf, ValOrInf::Inf);
    }
}
