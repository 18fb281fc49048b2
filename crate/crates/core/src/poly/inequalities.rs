//! Exact checks of the coefficient-height inequalities relating a
//! polynomial to its affine conjugates, its roots and its derivative.
//! Both sides are rational combinations of logarithms of integers, so every
//! verdict here is exact.

use num_traits::Zero;
use serde::Serialize;

use super::affine::{affine_conjugate, AffineMap};
use super::critical::poly_from_roots;
use super::PolySpec;
use crate::error::{Error, Result};
use crate::numerics::height::tuple_height_integer;
use crate::numerics::{tuple_height_exact, LogLinear, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightInequality {
    pub name: &'static str,
    #[serde(serialize_with = "as_display")]
    pub lhs: LogLinear,
    #[serde(serialize_with = "as_display")]
    pub rhs: LogLinear,
    pub holds: bool,
}

fn as_display<S: serde::Serializer>(v: &LogLinear, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl HeightInequality {
    fn check(name: &'static str, lhs: LogLinear, rhs: LogLinear) -> Self {
        let holds = lhs.le(&rhs);
        HeightInequality {
            name,
            lhs,
            rhs,
            holds,
        }
    }
}

fn h(q: &Rational) -> LogLinear {
    LogLinear::log(tuple_height_integer(std::slice::from_ref(q)))
}

fn int(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

/// `h(F^psi) <= h(F) + d(h(alpha) + h(gamma)) + d log 2 + log d` for a
/// rational `psi`.
pub fn affine_height_check(f: &PolySpec, alpha: &Rational, gamma: &Rational) -> Result<HeightInequality> {
    let d = f.degree();
    let psi = AffineMap::rational(alpha.clone(), gamma.clone())?;
    let g = affine_conjugate(f, &psi)?;
    let rhs = tuple_height_exact(f.coeffs())
        .add(&h(alpha).add(&h(gamma)).scale(&int(d)))
        .plus_log(int(d), 2)
        .plus_log(int(1), d);
    Ok(HeightInequality::check("affine", tuple_height_exact(g.coeffs()), rhs))
}

/// Both sides of `sum h(beta_i) - d log 2 <= h(b_{d-1}, ..., b_0) <=
/// sum h(beta_i) + d log 2` for `prod (z - beta_i)`.
pub fn roots_height_check(roots: &[Rational]) -> [HeightInequality; 2] {
    let d = roots.len();
    let p = poly_from_roots(roots);
    let mid = tuple_height_exact(&p[..d]);
    let sum = roots.iter().fold(LogLinear::zero(), |acc, b| acc.add(&h(b)));
    [
        HeightInequality::check(
            "roots-lower",
            sum.clone().plus_log(-int(d), 2),
            mid.clone(),
        ),
        HeightInequality::check("roots-upper", mid, sum.plus_log(int(d), 2)),
    ]
}

/// Rosser–Schoenfeld-type constant in `h(F) <= h(F') + 1.26 deg F`.
pub fn derivative_constant() -> Rational {
    Rational::new(63.into(), 50.into())
}

/// `h(F') - log deg F <= h(F) <= h(F') + 1.26 deg F`, for `F(0) = 0`.
pub fn derivative_height_check(f: &PolySpec) -> Result<[HeightInequality; 2]> {
    if !f.coeff(0).is_zero() {
        return Err(Error::Config("derivative bound needs F(0) = 0".into()));
    }
    let d = f.degree();
    let hf = tuple_height_exact(f.coeffs());
    let hd = tuple_height_exact(&f.derivative_coeffs());
    Ok([
        HeightInequality::check("derivative-lower", hd.clone().plus_log(-int(1), d), hf.clone()),
        HeightInequality::check("derivative-upper", hf, hd.plus_constant(derivative_constant() * int(d))),
    ])
}

/// Every inequality that applies to `F` on its own: the derivative bounds
/// when `F(0) = 0`, and the affine bound for the centring translation.
pub fn height_inequality_checks(f: &PolySpec) -> Result<Vec<HeightInequality>> {
    let mut out = Vec::new();
    if f.coeff(0).is_zero() {
        out.extend(derivative_height_check(f)?);
    }
    let d = f.degree();
    let gamma = -f.coeff(d - 1) / (f.leading() * int(d));
    out.push(affine_height_check(f, &int(1), &gamma)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int as q;
    use crate::poly::parse_poly;

    #[test]
    fn examples() {
        let [lo, hi] = roots_height_check(&[q(0), q(1)]);
        assert!(lo.holds && hi.holds);
        assert_eq!(hi.lhs, LogLinear::log(1));
        let [lo, hi] = roots_height_check(&[q(2), q(3)]);
        assert!(lo.holds && hi.holds);
        assert_eq!(hi.lhs, LogLinear::log(6));
        let [lo, hi] = derivative_height_check(&parse_poly("z^3 + z").unwrap()).unwrap();
        assert!(lo.holds && hi.holds);
        assert!(derivative_height_check(&parse_poly("z^3 + 1").unwrap()).is_err());
        let r = affine_height_check(&parse_poly("z^2").unwrap(), &q(1), &q(1)).unwrap();
        assert!(r.holds);
    }
}
