//! Text input: polynomial expressions such as `z^3 - 3*z + 1/2` or
//! `(z+1)^2`, coefficient lists `1,0,-3,1/2` (highest degree first), and
//! points such as `-3/4` or `1/2 - 3*sqrt(-1/2)`.
//!
//! Errors carry the byte offset of the offending token.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::PolySpec;
use crate::error::{Error, Result};
use crate::numerics::{parse_rational, QuadExt, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(s[start..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(s[start..i].to_string())));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(Error::parse(i, format!("unexpected character '{c}'")));
        }
    }
    out.push((s.len(), Tok::End));
    Ok(out)
}

/// Values the two grammars compute with.
trait Value: Sized + Clone {
    fn constant(q: Rational) -> Self;
    fn ident(name: &str, pos: usize, arg: Option<Self>) -> Result<Self>;
    fn takes_argument(name: &str) -> bool;
    fn add(&self, o: &Self, pos: usize) -> Result<Self>;
    fn mul(&self, o: &Self, pos: usize) -> Result<Self>;
    fn div(&self, o: &Self, pos: usize) -> Result<Self>;
    fn neg(&self) -> Self;
    fn as_exponent(&self) -> Option<u32>;
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    i: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos(), format!("expected '{c}'")))
        }
    }

    fn expr<V: Value>(&mut self) -> Result<V> {
        let mut acc = self.term::<V>()?;
        loop {
            let pos = self.pos();
            if self.eat('+') {
                acc = acc.add(&self.term()?, pos)?;
            } else if self.eat('-') {
                acc = acc.add(&self.term::<V>()?.neg(), pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<V: Value>(&mut self) -> Result<V> {
        if self.eat('-') {
            return Ok(self.term::<V>()?.neg());
        }
        self.eat('+');
        let mut acc = self.power::<V>()?;
        loop {
            let pos = self.pos();
            if self.eat('*') {
                acc = acc.mul(&self.power()?, pos)?;
            } else if self.eat('/') {
                acc = acc.div(&self.power()?, pos)?;
            } else if matches!(self.peek(), Tok::Ident(_)) || *self.peek() == Tok::Sym('(') {
                // implicit multiplication: `3z`, `2 sqrt(2)`, `(z+1)(z-1)`
                acc = acc.mul(&self.power()?, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power<V: Value>(&mut self) -> Result<V> {
        let base = self.atom::<V>()?;
        let pos = self.pos();
        if self.eat('^') {
            let e: V = self.atom()?;
            let k = e
                .as_exponent()
                .ok_or_else(|| Error::parse(pos, "exponent must be a small nonnegative integer"))?;
            let mut acc = V::constant(Rational::one());
            for _ in 0..k {
                acc = acc.mul(&base, pos)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom<V: Value>(&mut self) -> Result<V> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.i += 1;
                Ok(V::constant(Rational::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.i += 1;
                let arg = if V::takes_argument(&name) {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(')')?;
                    Some(a)
                } else {
                    None
                };
                V::ident(&name, pos, arg)
            }
            Tok::Sym('(') => {
                self.i += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Tok::Sym('-') => {
                self.i += 1;
                Ok(self.atom::<V>()?.neg())
            }
            Tok::Sym(c) => Err(Error::parse(pos, format!("unexpected '{c}'"))),
            Tok::End => Err(Error::parse(pos, "unexpected end of input")),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(Error::parse(self.pos(), "trailing input")),
        }
    }
}

fn parse_with<V: Value>(s: &str) -> Result<V> {
    let toks = tokenize(s)?;
    let mut p = Parser { toks: &toks, i: 0 };
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone)]
struct Poly(Vec<Rational>);

impl Poly {
    fn trim(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }
}

impl Value for Poly {
    fn constant(q: Rational) -> Self {
        Poly(vec![q])
    }

    fn ident(name: &str, pos: usize, _: Option<Self>) -> Result<Self> {
        match name {
            "z" | "x" => Ok(Poly(vec![Rational::zero(), Rational::one()])),
            _ => Err(Error::parse(pos, format!("unknown variable '{name}'"))),
        }
    }

    fn takes_argument(_: &str) -> bool {
        false
    }

    fn add(&self, o: &Self, _: usize) -> Result<Self> {
        let n = self.0.len().max(o.0.len());
        let zero = Rational::zero();
        let v = (0..n)
            .map(|i| self.0.get(i).unwrap_or(&zero) + o.0.get(i).unwrap_or(&zero))
            .collect();
        Ok(Poly(v).trim())
    }

    fn mul(&self, o: &Self, _: usize) -> Result<Self> {
        let mut v = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Ok(Poly(v).trim())
    }

    fn div(&self, o: &Self, pos: usize) -> Result<Self> {
        match o.0.as_slice() {
            [c] if !c.is_zero() => Ok(Poly(self.0.iter().map(|a| a / c).collect())),
            [_] => Err(Error::parse(pos, "division by zero")),
            _ => Err(Error::parse(pos, "division by a nonconstant polynomial")),
        }
    }

    fn neg(&self) -> Self {
        Poly(self.0.iter().map(|a| -a).collect())
    }

    fn as_exponent(&self) -> Option<u32> {
        match self.0.as_slice() {
            [c] if c.is_integer() => c.to_integer().to_u32().filter(|&k| k <= MAX_EXPONENT),
            _ => None,
        }
    }
}

impl Value for QuadExt {
    fn constant(q: Rational) -> Self {
        QuadExt::rational(q)
    }

    fn ident(name: &str, pos: usize, arg: Option<Self>) -> Result<Self> {
        match (name, arg) {
            ("sqrt", Some(a)) => match a.as_rational() {
                Some(q) => Ok(QuadExt::sqrt_of(q)),
                None => Err(Error::parse(pos, "sqrt of an irrational value")),
            },
            ("i", None) => Ok(QuadExt::sqrt_of(&-Rational::one())),
            _ => Err(Error::parse(pos, format!("unknown name '{name}'"))),
        }
    }

    fn takes_argument(name: &str) -> bool {
        name == "sqrt"
    }

    fn add(&self, o: &Self, pos: usize) -> Result<Self> {
        self.checked_add(o).map_err(|e| Error::parse(pos, e.to_string()))
    }

    fn mul(&self, o: &Self, pos: usize) -> Result<Self> {
        self.checked_mul(o).map_err(|e| Error::parse(pos, e.to_string()))
    }

    fn div(&self, o: &Self, pos: usize) -> Result<Self> {
        self.checked_div(o).map_err(|e| Error::parse(pos, e.to_string()))
    }

    fn neg(&self) -> Self {
        QuadExt::neg(self)
    }

    fn as_exponent(&self) -> Option<u32> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_u32())
            .filter(|&k| k <= MAX_EXPONENT)
    }
}

/// A rational or quadratic point.
pub fn parse_point(s: &str) -> Result<QuadExt> {
    parse_with::<QuadExt>(s)
}

/// Coefficients, lowest degree first, from an expression or a
/// highest-first comma-separated list.
pub fn parse_coefficients(s: &str) -> Result<Vec<Rational>> {
    if s.contains(',') {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let q = parse_rational(part).map_err(|e| match e {
                Error::Parse { pos, msg } => Error::parse(offset + pos, msg),
                other => other,
            })?;
            out.push(q);
            offset += part.len() + 1;
        }
        out.reverse();
        return Ok(out);
    }
    Ok(parse_with::<Poly>(s)?.0)
}

/// Any accepted polynomial syntax: the canonical `d; a_d, ..., a_0` form,
/// an expression, or a coefficient list.
pub fn parse_poly(s: &str) -> Result<PolySpec> {
    if s.contains(';') {
        return s.parse();
    }
    PolySpec::new(parse_coefficients(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    #[test]
    fn expressions() {
        assert_eq!(
            parse_coefficients("z^3 - 3*z + 1/2").unwrap(),
            vec![rat(1, 2), int(-3), int(0), int(1)]
        );
        assert_eq!(
            parse_coefficients("1,0,-3,1/2").unwrap(),
            vec![rat(1, 2), int(-3), int(0), int(1)]
        );
        assert_eq!(parse_coefficients("(z+1)^2").unwrap(), vec![int(1), int(2), int(1)]);
        assert_eq!(parse_coefficients("(1/3)z^3 - z").unwrap(), vec![int(0), int(-1), int(0), rat(1, 3)]);
        assert_eq!(parse_coefficients("-z^2").unwrap(), vec![int(0), int(0), int(-1)]);
    }

    #[test]
    fn errors_have_positions() {
        match parse_coefficients("z^3 + $") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        match parse_coefficients("1,0,x/2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_coefficients("z^").is_err());
        assert!(parse_coefficients("z/(z+1)").is_err());
        assert!(parse_coefficients("(z+1").is_err());
    }

    #[test]
    fn points() {
        let p = parse_point("1+sqrt(2)").unwrap();
        assert_eq!(p, QuadExt::new(int(1), int(1), int(2)));
        let p = parse_point("1/2 - 3*sqrt(-1/2)").unwrap();
        assert_eq!(p, QuadExt::new(rat(1, 2), int(-3), rat(-1, 2)));
        assert_eq!(parse_point("-3/4").unwrap(), QuadExt::rational(rat(-3, 4)));
        assert_eq!(parse_point("sqrt(9/4)").unwrap(), QuadExt::rational(rat(3, 2)));
        assert!(parse_point("sqrt(2) + sqrt(3)").is_err());
        for s in ["1+sqrt(2)", "-sqrt(-3)", "2/3-5/7*sqrt(11/13)"] {
            let p = parse_point(s).unwrap();
            assert_eq!(parse_point(&p.to_string()).unwrap(), p);
        }
    }
}
