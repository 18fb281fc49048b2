use serde::Serialize;

use super::local::local_from_orbit;
use super::orbit::ExactOrbit;
use super::{EstimateStatus, HeightBudget, LocalHeightEstimate, Place};
use crate::error::{Error, Result};
use crate::numerics::rational::prime_divisors;
use crate::numerics::{ln_rational, point_height, tuple_height, DyadicInterval, QuadExt, Rational};
use crate::poly::{critical_points, CriticalPoint, PolySpec};

/// Primes that can contribute to `h_f(z)`: those where `f` has a
/// non-integral coefficient or a non-unit leading coefficient, where `z` is
/// not integral, and every `p <= 2d`. Everywhere else the orbit stays in
/// the unit ball and the local height is 0.
pub fn relevant_primes(f: &PolySpec, z: &QuadExt) -> Result<Vec<u64>> {
    let mut ps = f.bad_primes()?;
    let (t, n) = z.minimal_polynomial();
    ps.extend(prime_divisors(t.denom())?);
    ps.extend(prime_divisors(n.denom())?);
    ps.extend((2..=2 * f.degree() as u64).filter(|&p| crate::numerics::rational::is_prime(p)));
    ps.sort_unstable();
    ps.dedup();
    Ok(ps)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeightReport {
    pub value: DyadicInterval,
    /// Archimedean place first, then primes ascending.
    pub locals: Vec<LocalHeightEstimate>,
    pub preperiodic: bool,
    pub complete: bool,
    pub iterations: usize,
}

impl HeightReport {
    fn into_result(self) -> Result<DyadicInterval> {
        if self.complete {
            Ok(self.value)
        } else {
            Err(Error::Undecided {
                iterations: self.iterations,
                partial: Some(self.value),
            })
        }
    }
}

/// `h_f(z) = sum_v lambda_v(z)` with every local term averaged over the
/// conjugates of `z`.
pub fn canonical_height_report(f: &PolySpec, z: &QuadExt, budget: &HeightBudget) -> Result<HeightReport> {
    let orbit = ExactOrbit::compute(f, z, budget.max_iterations, budget.max_orbit_bits);
    let prec = budget.precision;
    if orbit.is_finite() {
        return Ok(HeightReport {
            value: DyadicInterval::zero(prec),
            locals: Vec::new(),
            preperiodic: true,
            complete: true,
            iterations: orbit.points.len(),
        });
    }
    let mut places = vec![Place::Arch];
    places.extend(relevant_primes(f, z)?.into_iter().map(Place::Prime));
    let locals: Vec<LocalHeightEstimate> = places
        .iter()
        .map(|&v| local_from_orbit(f, &orbit, v, budget))
        .collect();
    let value = locals
        .iter()
        .fold(DyadicInterval::zero(prec), |acc, l| acc.add(&l.value));
    let complete = locals.iter().all(|l| l.status != EstimateStatus::Bounded);
    let iterations = locals.iter().map(|l| l.iterations_used).max().unwrap_or(0);
    Ok(HeightReport {
        value,
        locals,
        preperiodic: false,
        complete,
        iterations,
    })
}

/// Enclosure of `h_f(z)`; `Undecided` (carrying the partial enclosure)
/// when some place neither escaped nor repeated within budget.
pub fn canonical_height(f: &PolySpec, z: &QuadExt, budget: &HeightBudget) -> Result<DyadicInterval> {
    canonical_height_report(f, z, budget)?.into_result()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalHeightReport {
    pub value: DyadicInterval,
    pub points: Vec<(CriticalPoint, HeightReport)>,
    pub complete: bool,
}

/// `h_crit(f) = sum (e_P - 1) h_f(P)` over the finite critical points;
/// infinity is fixed and contributes nothing.
pub fn critical_height_report(f: &PolySpec, budget: &HeightBudget) -> Result<CriticalHeightReport> {
    let mut value = DyadicInterval::zero(budget.precision);
    let mut points = Vec::new();
    let mut complete = true;
    for c in critical_points(f)? {
        let r = canonical_height_report(f, &c.location, budget)?;
        value = value.add(&r.value.mul_rational(&Rational::from_integer(c.multiplicity.into())));
        complete &= r.complete;
        points.push((c, r));
    }
    Ok(CriticalHeightReport {
        value,
        points,
        complete,
    })
}

pub fn critical_height(f: &PolySpec, budget: &HeightBudget) -> Result<DyadicInterval> {
    let r = critical_height_report(f, budget)?;
    if r.complete {
        Ok(r.value)
    } else {
        let iterations = r.points.iter().map(|(_, h)| h.iterations).max().unwrap_or(0);
        Err(Error::Undecided {
            iterations,
            partial: Some(r.value),
        })
    }
}

/// `h(z) + (h(a_d, ..., a_0) + log(d+1))/(d-1)`, an upper bound for
/// `h_f(z)` by telescoping.
pub fn canonical_height_upper_bound(f: &PolySpec, z: &QuadExt, prec: u32) -> DyadicInterval {
    let d = f.degree();
    let inv = Rational::new(1.into(), ((d - 1) as i64).into());
    point_height(z, prec)
        .add(
            &tuple_height(f.coeffs(), prec)
                .add(&ln_rational(&Rational::from_integer((d + 1).into()), prec))
                .mul_rational(&inv),
        )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};
    use crate::numerics::Dyadic;
    use crate::poly::parse_poly;

    #[test]
    fn examples() {
        let b = HeightBudget::default();
        let f = parse_poly("z^2").unwrap();
        let h = canonical_height(&f, &QuadExt::rational(int(2)), &b).unwrap();
        let (lo, hi) = h.to_f64_bounds();
        assert!(lo <= 2f64.ln() && 2f64.ln() <= hi && hi - lo < 1e-9);

        let f = parse_poly("z^3 - 3z").unwrap();
        let h = canonical_height(&f, &QuadExt::rational(int(1)), &b).unwrap();
        assert!(h.is_point() && h.contains(&Dyadic::zero()));
        assert!(critical_height(&f, &b).unwrap().is_point());

        let f = parse_poly("z^2 + 1").unwrap();
        let h = critical_height(&f, &b).unwrap();
        let (lo, hi) = h.to_f64_bounds();
        // G(0) for z^2 + 1: lim 2^-n log f^n(0)
        assert!(0.20367 < lo && hi < 0.20368, "{h}");

        // 1/2 escapes 2-adically (log 2) but never archimedeanly: the
        // archimedean term is only bounded, so the total stays undecided
        let f = parse_poly("z^2").unwrap();
        match canonical_height(&f, &QuadExt::rational(rat(1, 2)), &b) {
            Err(Error::Undecided { partial: Some(p), .. }) => {
                let (lo, hi) = p.to_f64_bounds();
                assert!(lo <= 2f64.ln() + 1e-15 && 2f64.ln() - 1e-15 <= hi && hi < 2f64.ln() + 1e-6, "{p}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn upper_bounds() {
        let f = parse_poly("z^2").unwrap();
        let u = canonical_height_upper_bound(&f, &QuadExt::rational(int(2)), 64);
        let (lo, _) = u.to_f64_bounds();
        assert!(lo > 6f64.ln() - 1e-12);
        let f = parse_poly("z^3").unwrap();
        let u = canonical_height_upper_bound(&f, &QuadExt::zero(), 64);
        assert!(u.contains_f64(0.5 * 4f64.ln()) || (u.to_f64_bounds().1 - 0.5 * 4f64.ln()).abs() < 1e-12);
    }
}
