//! Dyadic rationals `m * 2^e` and outward-rounded intervals over them.
//!
//! Every interval operation returns an enclosure of the exact image. Results
//! are rounded to the working precision (significant bits) of the operands,
//! lower endpoints toward -inf and upper endpoints toward +inf.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::rational::Rational;

/// Three-valued outcome of a comparison between enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Tri::True
        } else {
            Tri::False
        }
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }

    pub fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::True, _) | (_, Tri::True) => Tri::True,
            (Tri::False, Tri::False) => Tri::False,
            _ => Tri::Unknown,
        }
    }

    pub fn not(self) -> Tri {
        match self {
            Tri::True => Tri::False,
            Tri::False => Tri::True,
            Tri::Unknown => Tri::Unknown,
        }
    }

    pub fn is_true(self) -> bool {
        self == Tri::True
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Up,
}

/// `mant * 2^exp`, normalized so that `mant` is odd (or the value is zero
/// with `exp == 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Dyadic::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        Dyadic {
            mant: mant >> tz,
            exp: exp + tz as i64,
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n.into(), 0)
    }

    /// Exact conversion; panics on non-finite input.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// Exponent of the leading bit: `2^(msb) <= |x| < 2^(msb+1)`.
    pub fn msb(&self) -> i64 {
        self.exp + self.mant.bits() as i64 - 1
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    pub fn mul_pow2(&self, k: i64) -> Dyadic {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self.add(&other.neg())
    }

    /// `self + other` rounded to `prec` bits in direction `dir`. A summand
    /// far below the other's last bit is replaced by a same-signed sticky
    /// bit, which rounds identically but keeps the shift small.
    pub fn add_round(&self, other: &Dyadic, prec: u32, dir: Round) -> Dyadic {
        let (big, small) = if self.msb() >= other.msb() { (self, other) } else { (other, self) };
        if !small.is_zero() && !big.is_zero() {
            let m = (big.msb() - prec as i64 - 3).min(big.exp - 1);
            if small.msb() < m {
                let sticky = Dyadic::new(BigInt::from(small.mant.signum()), m);
                return big.add(&sticky).round(prec, dir);
            }
        }
        self.add(other).round(prec, dir)
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mant * &other.mant, self.exp + other.exp)
    }

    /// Rounds to at most `prec` significant bits in direction `dir`.
    pub fn round(&self, prec: u32, dir: Round) -> Dyadic {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let k = bits - prec as u64;
        // `>>` on BigInt rounds toward -inf.
        let m = match dir {
            Round::Down => &self.mant >> k,
            Round::Up => -((-&self.mant) >> k),
        };
        Dyadic::new(m, self.exp + k as i64)
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.mant << self.exp as u64)
        } else {
            Rational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Directed rounding of a rational to `prec` significant bits.
    pub fn from_rational(q: &Rational, prec: u32, dir: Round) -> Dyadic {
        if q.is_zero() {
            return Dyadic::zero();
        }
        let (n, d) = (q.numer(), q.denom());
        let k = prec as i64 + d.bits() as i64 - n.bits() as i64 + 2;
        let (num, den) = if k >= 0 {
            (n << k as u64, d.clone())
        } else {
            (n.clone(), d << (-k) as u64)
        };
        let m = match dir {
            Round::Down => num.div_floor(&den),
            Round::Up => num.div_ceil(&den),
        };
        Dyadic::new(m, -k).round(prec, dir)
    }

    /// Directed square root of a nonnegative dyadic.
    pub fn sqrt(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(self.signum() >= 0, "sqrt of negative dyadic");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let want = 2 * prec as i64 + 4;
        let mut shift = (want - self.mant.bits() as i64).max(0);
        if (self.exp - shift) % 2 != 0 {
            shift += 1;
        }
        let m = &self.mant << shift as u64;
        let e = (self.exp - shift) / 2;
        let r = m.sqrt();
        let r = if dir == Round::Up && &r * &r != m {
            r + 1
        } else {
            r
        };
        Dyadic::new(r, e).round(prec, dir)
    }

    /// Directed reciprocal of a nonzero dyadic.
    pub fn recip(&self, prec: u32, dir: Round) -> Dyadic {
        assert!(!self.is_zero(), "reciprocal of zero");
        let q = Rational::new(BigInt::one(), self.mant.clone());
        Dyadic::from_rational(&q, prec, dir).mul_pow2(-self.exp)
    }

    /// Nearest-ish float; only for display and coarse diagnostics.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let shift = self.mant.bits() as i64 - 60;
        let (m, e) = if shift > 0 {
            (&self.mant >> shift as u64, self.exp + shift)
        } else {
            (self.mant.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(f64::NAN);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0 * mf.signum();
        }
        mf * 2f64.powi(e as i32)
    }

    /// Decimal expansion truncated toward zero after `digits` fractional
    /// digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let q = self.to_rational();
        let scale = num_traits::pow(BigInt::from(10), digits);
        let scaled = (q.numer() * &scale) / q.denom();
        let neg = q.is_negative();
        let s = scaled.abs().to_string();
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits - s.len() + 1), s)
        } else {
            s
        };
        let (ip, fp) = s.split_at(s.len() - digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let s = self.signum().cmp(&other.signum());
        if s != Ordering::Equal || self.is_zero() {
            return s;
        }
        // Same nonzero sign: compare magnitudes via leading bits first.
        let mag = match self.msb().cmp(&other.msb()) {
            Ordering::Equal => {
                let e = self.exp.min(other.exp);
                let a = self.mant.abs() << (self.exp - e) as u64;
                let b = other.mant.abs() << (other.exp - e) as u64;
                a.cmp(&b)
            }
            o => o,
        };
        if self.signum() > 0 {
            mag
        } else {
            mag.reverse()
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.mant)
        } else {
            write!(f, "{}*2^{}", self.mant, self.exp)
        }
    }
}

impl std::str::FromStr for Dyadic {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::error::Error::parse(0, format!("invalid dyadic '{s}'"));
        let (m, e) = match s.split_once("*2^") {
            Some((m, e)) => (m, e.parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let m: BigInt = m.trim().parse().map_err(|_| bad())?;
        Ok(Dyadic::new(m, e))
    }
}

pub const DEFAULT_PRECISION: u32 = 128;

/// Closed interval `[lo, hi]` with dyadic endpoints and a working precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
    prec: u32,
}

impl DyadicInterval {
    pub fn new(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        DyadicInterval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn point(x: Dyadic, prec: u32) -> Self {
        DyadicInterval::new(x.clone(), x, prec)
    }

    pub fn zero(prec: u32) -> Self {
        DyadicInterval::point(Dyadic::zero(), prec)
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        DyadicInterval::point(Dyadic::from_int(n), prec)
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        DyadicInterval {
            lo: Dyadic::from_rational(q, prec, Round::Down),
            hi: Dyadic::from_rational(q, prec, Round::Up),
            prec,
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn with_precision(&self, prec: u32) -> Self {
        DyadicInterval::new(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.contains(&Dyadic::from_f64(x))
    }

    pub fn contains_interval(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &DyadicInterval) -> Option<DyadicInterval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi {
            Some(DyadicInterval {
                lo,
                hi,
                prec: self.prec.max(other.prec),
            })
        } else {
            None
        }
    }

    pub fn hull(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    fn out(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        DyadicInterval {
            lo: lo.round(prec, Round::Down),
            hi: hi.round(prec, Round::Up),
            prec,
        }
    }

    pub fn add(&self, other: &DyadicInterval) -> DyadicInterval {
        let prec = self.prec.max(other.prec);
        DyadicInterval {
            lo: self.lo.add_round(&other.lo, prec, Round::Down),
            hi: self.hi.add_round(&other.hi, prec, Round::Up),
            prec,
        }
    }

    pub fn sub(&self, other: &DyadicInterval) -> DyadicInterval {
        let prec = self.prec.max(other.prec);
        DyadicInterval {
            lo: self.lo.add_round(&other.hi.neg(), prec, Round::Down),
            hi: self.hi.add_round(&other.lo.neg(), prec, Round::Up),
            prec,
        }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &DyadicInterval) -> DyadicInterval {
        let prec = self.prec.max(other.prec);
        let c = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Self::out(lo, hi, prec)
    }

    pub fn mul_rational(&self, q: &Rational) -> DyadicInterval {
        self.mul(&DyadicInterval::from_rational(q, self.prec))
    }

    pub fn mul_pow2(&self, k: i64) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
            prec: self.prec,
        }
    }

    pub fn abs(&self) -> DyadicInterval {
        if self.lo.signum() >= 0 {
            self.clone()
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            let hi = self.lo.abs().max(self.hi.abs());
            DyadicInterval {
                lo: Dyadic::zero(),
                hi,
                prec: self.prec,
            }
        }
    }

    pub fn sqr(&self) -> DyadicInterval {
        let a = self.abs();
        Self::out(a.lo.mul(&a.lo), a.hi.mul(&a.hi), self.prec)
    }

    pub fn powi(&self, k: u32) -> DyadicInterval {
        let mut acc = DyadicInterval::from_int(1, self.prec);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// Square root; negative parts of the input are clipped to zero.
    pub fn sqrt(&self) -> DyadicInterval {
        assert!(self.hi.signum() >= 0, "sqrt of a negative interval");
        let lo = if self.lo.signum() <= 0 {
            Dyadic::zero()
        } else {
            self.lo.sqrt(self.prec, Round::Down)
        };
        DyadicInterval {
            lo,
            hi: self.hi.sqrt(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    /// `1/x` for an interval that excludes zero.
    pub fn recip(&self) -> DyadicInterval {
        if self.hi.signum() < 0 {
            return self.neg().recip().neg();
        }
        assert!(self.lo.signum() > 0, "recip needs an interval excluding zero");
        DyadicInterval {
            lo: self.hi.recip(self.prec, Round::Down),
            hi: self.lo.recip(self.prec, Round::Up),
            prec: self.prec,
        }
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, other: &DyadicInterval) -> DyadicInterval {
        self.mul(&other.recip())
    }

    /// Natural logarithm of a strictly positive interval.
    pub fn ln(&self) -> DyadicInterval {
        assert!(self.lo.signum() > 0, "ln needs a positive interval");
        let (lo, _) = ln_bounds(&self.lo, self.prec);
        let (_, hi) = ln_bounds(&self.hi, self.prec);
        DyadicInterval {
            lo,
            hi,
            prec: self.prec,
        }
    }

    pub fn max(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.clone().max(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    pub fn min(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().min(other.hi.clone()),
            prec: self.prec.max(other.prec),
        }
    }

    /// Clips the lower end at zero; used for quantities known to be >= 0.
    pub fn clamp_nonneg(&self) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.clone().max(Dyadic::zero()),
            hi: self.hi.clone().max(Dyadic::zero()),
            prec: self.prec,
        }
    }

    pub fn gt(&self, other: &DyadicInterval) -> Tri {
        if self.lo > other.hi {
            Tri::True
        } else if self.hi <= other.lo {
            Tri::False
        } else {
            Tri::Unknown
        }
    }

    pub fn lt(&self, other: &DyadicInterval) -> Tri {
        other.gt(self)
    }

    pub fn gt_rational(&self, q: &Rational) -> Tri {
        self.gt(&DyadicInterval::from_rational(q, self.prec.max(64)))
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        let lo = self.lo.to_f64();
        let hi = self.hi.to_f64();
        (step_down(step_down(lo)), step_up(step_up(hi)))
    }

    /// `[m*2^e, m*2^e]` with exact endpoints.
    pub fn to_exact_string(&self) -> String {
        format!("[{}, {}]", self.lo, self.hi)
    }

    pub fn from_exact_string(s: &str, prec: u32) -> crate::error::Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = t
            .split_once(',')
            .ok_or_else(|| crate::error::Error::parse(0, "expected '[lo, hi]'"))?;
        let lo: Dyadic = a.trim().parse()?;
        let hi: Dyadic = b.trim().parse()?;
        if lo > hi {
            return Err(crate::error::Error::parse(0, "inverted interval"));
        }
        Ok(DyadicInterval { lo, hi, prec })
    }
}

fn step_down(x: f64) -> f64 {
    if x.is_finite() {
        x.next_down()
    } else {
        x
    }
}

fn step_up(x: f64) -> f64 {
    if x.is_finite() {
        x.next_up()
    } else {
        x
    }
}

impl fmt::Display for DyadicInterval {
    /// Midpoint with an explicit half-width, e.g. `0.693147 ± 2.1e-39`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mid = self.midpoint();
        let rad = self.width().mul_pow2(-1);
        if rad.is_zero() {
            let digits = if mid.exp >= 0 { 0 } else { ((-mid.exp) as usize).min(40) };
            return write!(f, "{} ± 0", mid.to_decimal(digits));
        }
        let r = rad.to_f64();
        let digits = if r > 0.0 && r.is_finite() {
            ((-r.log10()).ceil() as i64 + 2).clamp(1, 40) as usize
        } else {
            6
        };
        // Round the reported radius up so the printed range stays an
        // enclosure despite the truncated midpoint.
        let slack = 10f64.powi(-(digits as i32));
        write!(f, "{} ± {:.2e}", mid.to_decimal(digits), step_up(r + slack))
    }
}

impl Serialize for DyadicInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (lo, hi) = self.to_f64_bounds();
        let mut st = s.serialize_struct("DyadicInterval", 3)?;
        st.serialize_field("lo", &lo)?;
        st.serialize_field("hi", &hi)?;
        st.serialize_field("exact", &self.to_exact_string())?;
        st.end()
    }
}

#[derive(Deserialize)]
struct IntervalRepr {
    exact: String,
}

impl<'de> Deserialize<'de> for DyadicInterval {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = IntervalRepr::deserialize(d)?;
        DyadicInterval::from_exact_string(&r.exact, DEFAULT_PRECISION)
            .map_err(serde::de::Error::custom)
    }
}

/// Fixed-point `2*atanh(t)` with `t = T / 2^p`, `0 <= t <= 1/3`.
/// Returns the scaled sum and an error bound in units of `2^-p`.
fn two_atanh_fixed(t: &BigInt, p: u64) -> (BigInt, BigInt) {
    let t2 = (t * t) >> p;
    let mut pow = t.clone();
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !pow.is_zero() {
        sum += &pow / BigInt::from(2 * k + 1);
        pow = (&pow * &t2) >> p;
        k += 1;
    }
    // Each term carries at most a few ulps of truncation (division, power
    // update, error inherited from t2), plus the tail once `pow` hits zero;
    // 8 ulps per term plus a 64-ulp floor over-covers both, before doubling.
    let err = BigInt::from(2 * (8 * k + 64));
    (sum * 2, err)
}

/// Rigorous bounds `(lo, hi)` on `ln x` for a positive dyadic `x`, rounded
/// outward to `prec` bits.
pub fn ln_bounds(x: &Dyadic, prec: u32) -> (Dyadic, Dyadic) {
    assert!(x.signum() > 0);
    if x.exp == 0 && x.mant.is_one() {
        return (Dyadic::zero(), Dyadic::zero());
    }
    let p = prec as u64 + 64;
    let b = x.mant.bits();
    // x = r * 2^k with r = mant / 2^(b-1) in [1, 2)
    let k = x.exp + b as i64 - 1;
    let one = BigInt::one() << p;
    let r = if b - 1 <= p {
        &x.mant << (p - (b - 1))
    } else {
        &x.mant >> ((b - 1) - p)
    };
    // t = (r - 1)/(r + 1), |error| <= 2 ulps including the truncated r.
    let t = ((&r - &one) << p) / (&r + &one);
    let (ln_r, err_r) = two_atanh_fixed(&t, p);
    let err_r = err_r + BigInt::from(8);
    let (ln2, err_2) = two_atanh_fixed(&(&one / BigInt::from(3)), p);
    let err_2 = err_2 + BigInt::from(4);
    let kb = BigInt::from(k);
    let center = ln_r + &kb * ln2;
    let err = err_r + kb.abs() * err_2;
    let lo = Dyadic::new(&center - &err, -(p as i64)).round(prec, Round::Down);
    let hi = Dyadic::new(&center + &err, -(p as i64)).round(prec, Round::Up);
    (lo, hi)
}

/// Enclosure of `ln 2`.
pub fn ln2(prec: u32) -> DyadicInterval {
    DyadicInterval::from_int(2, prec).ln()
}

/// Enclosure of `ln q` for a positive rational.
pub fn ln_rational(q: &Rational, prec: u32) -> DyadicInterval {
    assert!(q.is_positive(), "ln of a nonpositive rational");
    let p = prec + 16;
    let n = DyadicInterval::from_int(q.numer().clone(), p).ln();
    let d = DyadicInterval::from_int(q.denom().clone(), p).ln();
    n.sub(&d).with_precision(prec)
}
