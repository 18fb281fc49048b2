use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::PolySpec;
use crate::error::{Error, Result};
use crate::numerics::rational::rational_sqrt;
use crate::numerics::{QuadExt, Rational};

/// Critical points `c_1, ..., c_{d-1}` of the normal form `f_c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CriticalVector(pub Vec<Rational>);

/// A critical point together with its order as a zero of `f'`, i.e. one
/// less than the local ramification index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub location: QuadExt,
    pub multiplicity: usize,
}

impl CriticalPoint {
    fn new(location: QuadExt, multiplicity: usize) -> Self {
        CriticalPoint {
            location,
            multiplicity,
        }
    }
}

/// Coefficients of `(z - r_1)...(z - r_n)`, lowest first.
pub fn poly_from_roots(roots: &[Rational]) -> Vec<Rational> {
    let mut p = vec![Rational::one()];
    for r in roots {
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (i, a) in p.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * r;
        }
        p = next;
    }
    p
}

/// The antiderivative of `prod (z - c_i)` vanishing at 0.
///
/// Panics on an empty vector (that would be a linear map).
pub fn from_critical_points(c: &CriticalVector) -> PolySpec {
    assert!(!c.0.is_empty(), "a critical vector needs at least one entry");
    let p = poly_from_roots(&c.0);
    let mut coeffs = vec![Rational::zero()];
    for (k, a) in p.iter().enumerate() {
        coeffs.push(a / Rational::from_integer((k + 1).into()));
    }
    PolySpec::with_critical(coeffs, c.clone())
}

/// `(f_c(c_1), ..., f_c(c_{d-1}))`; each entry is a form of degree `d` in `c`.
pub fn g_forms(c: &CriticalVector) -> Vec<Rational> {
    let f = from_critical_points(c);
    c.0.iter().map(|ci| f.eval(ci)).collect()
}

/// `+-alpha` with `alpha^2 = -A/3` for `z^3 + A z + B`; a double point at 0
/// when `A = 0`.
pub fn critical_points_cubic(a: &Rational, _b: &Rational) -> Vec<CriticalPoint> {
    if a.is_zero() {
        return vec![CriticalPoint::new(QuadExt::zero(), 2)];
    }
    let alpha = QuadExt::sqrt_of(&(-a / Rational::from_integer(3.into())));
    vec![
        CriticalPoint::new(alpha.clone(), 1),
        CriticalPoint::new(alpha.neg(), 1),
    ]
}

fn group(points: &[Rational]) -> Vec<CriticalPoint> {
    let mut out: Vec<CriticalPoint> = Vec::new();
    for p in points {
        let q = QuadExt::rational(p.clone());
        match out.iter_mut().find(|c| c.location == q) {
            Some(c) => c.multiplicity += 1,
            None => out.push(CriticalPoint::new(q, 1)),
        }
    }
    out
}

/// Roots of `a z^2 + b z + c` (with `a != 0`), as points of `Q(sqrt(D))`,
/// `D = (b^2 - 4ac)/(4a^2)`.
fn quadratic_roots(c: &Rational, b: &Rational, a: &Rational) -> Vec<CriticalPoint> {
    let two_a = a * Rational::from_integer(2.into());
    let centre = -b / &two_a;
    let disc = (b * b - a * c * Rational::from_integer(4.into())) / (&two_a * &two_a);
    if disc.is_zero() {
        return vec![CriticalPoint::new(QuadExt::rational(centre), 2)];
    }
    if let Some(s) = rational_sqrt(&disc) {
        return group(&[&centre + &s, &centre - &s]);
    }
    let plus = QuadExt::new(centre.clone(), Rational::one(), disc.clone());
    vec![
        CriticalPoint::new(plus.clone(), 1),
        CriticalPoint::new(plus.conj(), 1),
    ]
}

/// Finite critical points with multiplicity (summing to `d - 1`).
///
/// Available for a stored critical vector, or when `f'` is `z^k` times a
/// polynomial of degree at most 2.
pub fn critical_points(f: &PolySpec) -> Result<Vec<CriticalPoint>> {
    if let Some(c) = f.critical_vector() {
        return Ok(group(&c.0));
    }
    let fp = f.derivative_coeffs();
    let k = fp.iter().take_while(|c| c.is_zero()).count();
    let rest = &fp[k..];
    let mut out = Vec::new();
    if k > 0 {
        out.push(CriticalPoint::new(QuadExt::zero(), k));
    }
    match rest {
        [_] => {}
        [c0, c1] => out.push(CriticalPoint::new(QuadExt::rational(-c0 / c1), 1)),
        [c0, c1, c2] => out.extend(quadratic_roots(c0, c1, c2)),
        _ => {
            return Err(Error::CriticalPointsUnavailable(format!(
                "f' has a factor of degree {} beyond quadratic",
                rest.len() - 1
            )))
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn cv(v: &[i64]) -> CriticalVector {
        CriticalVector(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(
            from_critical_points(&cv(&[1, -1])).coeffs(),
            &[int(0), int(-1), int(0), rat(1, 3)]
        );
        assert_eq!(
            from_critical_points(&cv(&[0, 0])).coeffs(),
            &[int(0), int(0), int(0), rat(1, 3)]
        );
        assert_eq!(
            from_critical_points(&cv(&[5])).coeffs(),
            &[int(0), int(-5), rat(1, 2)]
        );
    }

    #[test]
    fn g_form_examples() {
        assert_eq!(g_forms(&cv(&[0, 0])), vec![int(0), int(0)]);
        assert_eq!(g_forms(&cv(&[1, -1])), vec![rat(-2, 3), rat(2, 3)]);
    }

    #[test]
    fn cubic_critical_points() {
        let pts = critical_points_cubic(&int(-3), &int(0));
        assert_eq!(pts[0].location, QuadExt::rational(int(1)));
        assert_eq!(pts[1].location, QuadExt::rational(int(-1)));
        let pts = critical_points_cubic(&rat(3, 2), &int(0));
        assert_eq!(pts[0].location, QuadExt::sqrt_of(&rat(-1, 2)));
        let pts = critical_points_cubic(&int(0), &int(5));
        assert_eq!(pts, vec![CriticalPoint::new(QuadExt::zero(), 2)]);
    }

    #[test]
    fn general_critical_points() {
        let f = PolySpec::cubic(rat(3, 2), int(0));
        let pts = critical_points(&f).unwrap();
        assert_eq!(pts[0].location, QuadExt::sqrt_of(&rat(-1, 2)));
        let f = super::super::parse_poly("z^5 + z^3").unwrap();
        let pts = critical_points(&f).unwrap();
        assert_eq!(pts[0], CriticalPoint::new(QuadExt::zero(), 2));
        assert_eq!(pts.iter().map(|p| p.multiplicity).sum::<usize>(), 4);
        let f = super::super::parse_poly("z^4 + z^2 + z").unwrap();
        assert!(critical_points(&f).is_err());
    }
}
