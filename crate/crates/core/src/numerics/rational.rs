//! Big rationals plus the small amount of integer number theory the rest of
//! the crate leans on: exact square roots, primality and factoring of
//! desk-scale integers.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n`, `-n`, `n/d` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let offset = s.len() - s.trim_start().len();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::parse(offset, format!("invalid integer '{num}'")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::parse(offset, format!("invalid denominator '{d}'")))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::parse(offset, "zero denominator"));
    }
    Ok(Rational::new(n, d))
}

/// Canonical `num/den` rendering, used by the text serialization of
/// polynomials.
pub fn fmt_canonical(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Serde adapter writing rationals as short strings (`-3/4`, `5`).
pub mod as_string {
    use super::{fmt_short, parse_rational, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_short(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        parse_rational(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// `as_string` for lists.
pub mod as_strings {
    use super::{fmt_short, Rational};
    use serde::Serializer;

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(qs.iter().map(fmt_short))
    }
}

/// Short rendering: integers without a denominator.
pub fn fmt_short(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact k-th root of a nonnegative big integer, if it exists.
pub fn exact_nth_root(n: &BigInt, k: u32) -> Option<BigInt> {
    if n.is_negative() {
        if k % 2 == 1 {
            return exact_nth_root(&-n, k).map(|r| -r);
        }
        return None;
    }
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact k-th root of a rational, if one exists in Q.
pub fn rational_nth_root(q: &Rational, k: u32) -> Option<Rational> {
    let n = exact_nth_root(q.numer(), k)?;
    let d = exact_nth_root(q.denom(), k)?;
    Some(Rational::new(n, d))
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    rational_nth_root(q, 2)
}

pub fn bit_size(q: &Rational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        while g == 1 {
            x = f(x);
            y = f(f(y));
            g = x.abs_diff(y).gcd(&n);
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn factor_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let f = pollard_rho(n);
    factor_u64(f, out);
    factor_u64(n / f, out);
}

const TRIAL_LIMIT: u64 = 1 << 16;

/// Distinct prime divisors of `n`, ascending. Zero and units have none.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let mut m: BigUint = n.magnitude().clone();
    let mut out = Vec::new();
    if m.is_zero() {
        return Ok(out);
    }
    let mut p = 2u64;
    while p < TRIAL_LIMIT && !m.is_one() {
        let bp = BigUint::from(p);
        if (&m % &bp).is_zero() {
            out.push(p);
            while (&m % &bp).is_zero() {
                m /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        let rest = m
            .to_u64()
            .ok_or_else(|| Error::FactorizationTooHard(m.to_string()))?;
        let mut fs = Vec::new();
        factor_u64(rest, &mut fs);
        out.extend(fs);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Sign of a big integer as -1, 0, 1.
pub fn signum(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn lcm_of_denominators<'a>(qs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    qs.into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert_eq!(fmt_canonical(&int(5)), "5/1");
        assert_eq!(fmt_short(&rat(3, -4)), "-3/4");
        assert!(matches!(parse_rational("1/0"), Err(Error::Parse { .. })));
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
        assert_eq!(rational_nth_root(&rat(-27, 8), 3), Some(rat(-3, 2)));
    }

    #[test]
    fn primes_and_factors() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        let n = BigInt::from(2u64 * 2 * 3 * 1_000_003 * 999_983);
        assert_eq!(prime_divisors(&n).unwrap(), vec![2, 3, 999_983, 1_000_003]);
        assert_eq!(prime_divisors(&BigInt::from(-1)).unwrap(), Vec::<u64>::new());
    }
}
