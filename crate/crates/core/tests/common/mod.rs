//! Seeded generators and independent oracles shared by the integration
//! tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use pcfheight::numerics::{QuadExt, Rational};

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational(rng: &mut TestRng, num: i64, den: i64) -> Rational {
    Rational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

pub fn nonzero_rational(rng: &mut TestRng, num: i64, den: i64) -> Rational {
    loop {
        let q = rational(rng, num, den);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Coefficients `a_0..a_d` with nonzero leading term.
pub fn poly_coeffs(rng: &mut TestRng, d: usize, num: i64, den: i64) -> Vec<Rational> {
    let mut v: Vec<Rational> = (0..d).map(|_| rational(rng, num, den)).collect();
    v.push(nonzero_rational(rng, num, den));
    v
}

pub const SQUAREFREE: [i64; 16] = [-11, -7, -6, -5, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13, 15, 17];
pub const SMALL_PRIMES: [u64; 7] = [2, 3, 5, 7, 11, 13, 17];

/// A random element of `Q(sqrt D)`, with numerators sometimes carrying
/// extra factors of `p` so that valuations are not all zero.
pub fn quad_element(rng: &mut TestRng, p: u64) -> QuadExt {
    let d = SQUAREFREE[rng.gen_range(0..SQUAREFREE.len())];
    loop {
        let part = |rng: &mut TestRng| {
            let k = rng.gen_range(0..4u32);
            let n = BigInt::from(rng.gen_range(-300i64..=300)) * BigInt::from(p).pow(k);
            Rational::new(n, BigInt::from(rng.gen_range(1i64..=60)))
        };
        let z = QuadExt::new(part(rng), part(rng), Rational::from_integer(d.into()));
        if !z.is_zero() {
            return z;
        }
    }
}

/// `v_p(n)` for a nonzero integer by repeated division.
pub fn vp_int(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

pub fn vp_rat(q: &Rational, p: u64) -> i64 {
    vp_int(q.numer(), p) - vp_int(q.denom(), p)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// A square root of `d` modulo `p^digits` by Hensel lifting, for odd `p`
/// not dividing `d`; `None` when `d` is not a square mod `p`.
pub fn hensel_sqrt(d: i64, p: u64, digits: u32) -> Option<BigInt> {
    assert!(p % 2 == 1);
    let d = BigInt::from(d);
    let pb = BigInt::from(p);
    let mut s = (0..p)
        .map(BigInt::from)
        .find(|s| ((s * s - &d).mod_floor(&pb)).is_zero())?;
    if s.is_zero() {
        return None;
    }
    let mut k = 1;
    while k < digits {
        k = (2 * k).min(digits);
        let m = pb.pow(k);
        let f = (&s * &s - &d).mod_floor(&m);
        s = (&s - f * mod_inverse(&(BigInt::from(2) * &s), &m)).mod_floor(&m);
    }
    Some(s)
}

/// Valuations of `x + y sqrt D` and `x - y sqrt D` in the completion, read
/// off `p`-adic expansions to `digits` digits.
pub fn split_valuations(z: &QuadExt, p: u64, s: &BigInt, digits: u32) -> (i64, i64) {
    let m = z.x().denom().lcm(z.y().denom());
    let xn = z.x().numer() * (&m / z.x().denom());
    let yn = z.y().numer() * (&m / z.y().denom());
    let modulus = BigInt::from(p).pow(digits);
    let v = |r: BigInt| {
        let r = r.mod_floor(&modulus);
        assert!(!r.is_zero(), "valuation beyond {digits} digits");
        vp_int(&r, p) - vp_int(&m, p)
    };
    let a = v(&xn + &yn * s);
    let b = v(&xn - &yn * s);
    (a.min(b), a.max(b))
}
