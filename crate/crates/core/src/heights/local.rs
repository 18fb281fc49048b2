//! Local canonical heights.
//!
//! Once `|w|_v` exceeds the escape radius,
//! `lambda(w) = log|w|_v + log|a_d|_v/(d-1) + eps` with `eps = 0` at a
//! prime and `-log 2 <= eps <= log(3/2)` at infinity, and
//! `lambda(z) = d^-N lambda(f^N z)`. Below the radius the same argument
//! bounds `lambda(w)` by `log C + log|a_d|/(d-1)` (plus `log(3/2)` at
//! infinity), which gives the upper end of a bounded-orbit enclosure.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use super::escape::{escape_radius, Embedding, EscapeRadius};
use super::orbit::ExactOrbit;
use super::{EstimateStatus, HeightBudget, LocalHeightEstimate, Place};
use crate::error::Result;
use crate::numerics::quad::quad_valuations_unchecked;
use crate::numerics::valuation::{check_prime, vp};
use crate::numerics::{ln_rational, ComplexInterval, Dyadic, DyadicInterval, LogLinear, QuadExt, Rational, Tri, ValOrInf};
use crate::poly::PolySpec;

/// Largest binary exponent of an escaped modulus before iteration stops;
/// far beyond the point where `d^-N` has crushed the error term.
const MAX_MODULUS_MSB: i64 = 1 << 50;

fn rat_i64(v: Ratio<i64>) -> Rational {
    Rational::new((*v.numer()).into(), (*v.denom()).into())
}

fn d_pow_inv(d: usize, n: usize) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(d), n))
}

pub fn local_canonical_height(
    f: &PolySpec,
    z: &QuadExt,
    place: Place,
    budget: &HeightBudget,
) -> Result<LocalHeightEstimate> {
    if let Place::Prime(p) = place {
        check_prime(p)?;
    }
    let orbit = ExactOrbit::compute(f, z, budget.max_iterations, budget.max_orbit_bits);
    Ok(local_from_orbit(f, &orbit, place, budget))
}

pub(crate) fn local_from_orbit(
    f: &PolySpec,
    orbit: &ExactOrbit,
    place: Place,
    budget: &HeightBudget,
) -> LocalHeightEstimate {
    if orbit.is_finite() {
        return LocalHeightEstimate::exact(place, LogLinear::zero(), orbit.points.len(), budget.precision);
    }
    match place {
        Place::Arch => arch_local(f, orbit, budget),
        Place::Prime(p) => padic_local(f, orbit, p, budget),
    }
}

/// `log|a_d|/(d-1) + [-log 2, log(3/2)]`.
fn arch_offset(f: &PolySpec, prec: u32) -> DyadicInterval {
    let d = f.degree();
    let lad = ln_rational(&f.leading().abs(), prec).mul_rational(&Rational::new(1.into(), ((d - 1) as i64).into()));
    let lo = ln_rational(&Rational::from_integer(2.into()), prec).neg();
    let hi = ln_rational(&Rational::new(3.into(), 2.into()), prec);
    lad.add(&lo.hull(&hi))
}

fn arch_local(f: &PolySpec, orbit: &ExactOrbit, budget: &HeightBudget) -> LocalHeightEstimate {
    let z = &orbit.points[0];
    let n_emb = if z.is_rational() || z.d().is_negative() { 1 } else { 2 };
    let radius = escape_radius(f, Place::Arch);
    let mut sum = DyadicInterval::zero(budget.precision);
    let mut iterations = 0;
    let mut status = EstimateStatus::Converged;
    for e in 0..n_emb {
        let (v, n, s) = arch_embedding(f, orbit, &radius, Embedding::from_index(e), budget);
        sum = sum.add(&v);
        iterations = iterations.max(n);
        if s == EstimateStatus::Bounded {
            status = s;
        }
    }
    let value = sum
        .mul_rational(&Rational::new(1.into(), (n_emb as i64).into()))
        .clamp_nonneg()
        .with_precision(budget.precision);
    LocalHeightEstimate {
        place: Place::Arch,
        value,
        iterations_used: iterations,
        status,
        exact: None,
    }
}

fn embed(w: &QuadExt, emb: Embedding, prec: u32) -> ComplexInterval {
    let mut es = w.embeddings(prec);
    let i = emb.index().min(es.len() - 1);
    es.swap_remove(i)
}

/// Embedding of a point already known to lie past the radius, at enough
/// precision for the interval to show it: a conjugate `x - y sqrt(D)` of
/// a large iterate can be small, and cancels badly at working precision.
fn embed_escaped(w: &QuadExt, emb: Embedding, radius: &EscapeRadius, work: u32) -> ComplexInterval {
    let mut prec = work;
    loop {
        let e = embed(w, emb, prec);
        if radius.exceeded_by_interval(&e.abs()) == Tri::True || prec as u64 > 4 * w.bit_size() + work as u64 {
            return e;
        }
        prec *= 2;
    }
}

fn arch_embedding(
    f: &PolySpec,
    orbit: &ExactOrbit,
    radius: &EscapeRadius,
    emb: Embedding,
    budget: &HeightBudget,
) -> (DyadicInterval, usize, EstimateStatus) {
    let work = budget.precision + 32;
    for (n, w) in orbit.points.iter().enumerate() {
        if radius.exceeded_by_point(w, emb) {
            let (v, m) = converge(f, radius, embed_escaped(w, emb, radius, work), n, budget);
            return (v, m, EstimateStatus::Converged);
        }
    }
    // The exact orbit hit its size cap: continue with interval iterates,
    // doubling the precision whenever a comparison was inconclusive.
    let start = orbit.last_index();
    let mut prec = work;
    let mut best = None;
    for _ in 0..=budget.max_refinements {
        let mut w = embed(&orbit.points[start], emb, prec);
        let mut unknown = false;
        let mut upper = bounded_upper(f, radius, &w.abs(), start, prec);
        for n in start + 1..=budget.max_iterations {
            w = w.eval_poly(f.coeffs());
            let a = w.abs();
            match radius.exceeded_by_interval(&a) {
                Tri::True => {
                    let (v, m) = converge(f, radius, w, n, budget);
                    return (v, m, EstimateStatus::Converged);
                }
                Tri::Unknown => unknown = true,
                Tri::False => {}
            }
            let u = bounded_upper(f, radius, &a, n, prec);
            if u < upper {
                upper = u;
            }
            // Either the modulus runs away from the interval arithmetic or
            // the bound is already below the working resolution.
            if a.hi().msb() > MAX_MODULUS_MSB
                || a.hi().msb() < -MAX_MODULUS_MSB
                || upper.msb() < -(budget.precision as i64) - 4
            {
                break;
            }
        }
        best = Some(upper);
        if !unknown {
            break;
        }
        prec *= 2;
    }
    let upper = best.expect("at least one pass");
    (
        DyadicInterval::new(Dyadic::zero(), upper, budget.precision),
        budget.max_iterations,
        EstimateStatus::Bounded,
    )
}

/// Upper end of `d^-n (max(log C, log|w|) + log|a_d|/(d-1) + log(3/2))`.
fn bounded_upper(f: &PolySpec, radius: &EscapeRadius, abs: &DyadicInterval, n: usize, prec: u32) -> Dyadic {
    let lc = radius.log_enclosure(prec);
    let top = if abs.hi().signum() > 0 {
        lc.max(&DyadicInterval::point(abs.hi().clone(), prec).ln())
    } else {
        lc
    };
    top.add(&arch_offset(f, prec))
        .mul_rational(&d_pow_inv(f.degree(), n))
        .hi()
        .clone()
}

/// Follows the orbit from an escaped iterate `w = f^n z`. Past the radius
/// every later `delta_k = sum_{i<d} |a_i/a_d| |w_k|^(i-d)` is at most
/// `delta <= 1/2`, so the error term lies in `[-2 delta, delta]/(d-1)`,
/// which collapses doubly exponentially; enclosures are intersected.
fn converge(
    f: &PolySpec,
    radius: &EscapeRadius,
    w: ComplexInterval,
    n: usize,
    budget: &HeightBudget,
) -> (DyadicInterval, usize) {
    let d = f.degree();
    let work = budget.precision + 32;
    let ratios: Vec<Rational> = (0..d).map(|i| (f.coeff(i) / f.leading()).abs()).collect();
    let coarse = arch_offset(f, work);
    let lad = ln_rational(&f.leading().abs(), work).mul_rational(&Rational::new(1.into(), ((d - 1) as i64).into()));
    let inv_d1 = Rational::new(1.into(), ((d - 1) as i64).into());
    let half = Dyadic::new(1.into(), -1);
    let target = -(budget.precision as i64) - 4;
    let enclosure = |x: &DyadicInterval, m: usize| {
        let rec = x.recip();
        let mut delta = DyadicInterval::zero(work);
        for (i, r) in ratios.iter().enumerate() {
            if !r.is_zero() {
                delta = delta.add(&rec.powi((d - i) as u32).mul_rational(r));
            }
        }
        let off = if delta.hi() <= &half {
            let t = delta.hi().clone();
            let eps = DyadicInterval::new(t.mul_pow2(1).neg(), t, work).mul_rational(&inv_d1);
            lad.add(&eps)
        } else {
            coarse.clone()
        };
        x.ln().add(&off).mul_rational(&d_pow_inv(d, m))
    };

    let mut w = w;
    let mut x = w.abs();
    let mut m = n;
    let mut enc = enclosure(&x, m);
    while m < budget.max_iterations && x.hi().msb() < MAX_MODULUS_MSB && enc.width().msb() > target {
        w = w.eval_poly(f.coeffs());
        x = w.abs();
        m += 1;
        if radius.exceeded_by_interval(&x) != Tri::True {
            break;
        }
        let e = enclosure(&x, m);
        enc = match enc.intersect(&e) {
            Some(i) => i,
            None => {
                debug_assert!(false, "disjoint enclosures {enc} and {e}");
                e
            }
        };
    }
    (enc.clamp_nonneg().with_precision(budget.precision), m)
}

fn padic_local(f: &PolySpec, orbit: &ExactOrbit, p: u64, budget: &HeightBudget) -> LocalHeightEstimate {
    let d = f.degree();
    let radius = escape_radius(f, Place::Prime(p));
    let EscapeRadius::Prime { exponent, .. } = radius else {
        unreachable!()
    };
    let vad = vp(f.leading(), p).finite().expect("a_d != 0");
    let shift = vad / (d as i64 - 1);
    let good = vad.is_zero() && f.coeffs().iter().all(|c| vp(c, p) >= ValOrInf::int(0));
    let zero = ValOrInf::int(0);

    // Two places (counted with local degree) lie above p; track the
    // current valuation of each escaped one so that the unlabeled sorted
    // pairs can be matched up from one iterate to the next.
    let mut escaped: Vec<(Ratio<i64>, Rational)> = Vec::new();
    let mut certified_zero = 0usize;
    let mut last = 0;
    for (n, w) in orbit.points.iter().enumerate() {
        last = n;
        let (u1, u2) = quad_valuations_unchecked(w, p);
        let mut remaining = vec![u1, u2];
        for (cur, _) in escaped.iter_mut() {
            *cur = vad + *cur * d as i64;
            let pos = remaining.iter().position(|u| *u == ValOrInf::Finite(*cur));
            debug_assert!(pos.is_some(), "escaped place lost its predicted valuation");
            if let Some(i) = pos {
                remaining.swap_remove(i);
            }
        }
        for u in &remaining {
            if radius.exceeded_by_valuation(*u) {
                let w = u.finite().expect("finite below -e");
                let coeff = rat_i64(-w - shift) * d_pow_inv(d, n);
                escaped.push((w, coeff));
            }
        }
        if good {
            let integral = remaining.iter().filter(|u| **u >= zero).count();
            certified_zero = certified_zero.max(integral);
        }
        if escaped.len() + certified_zero >= 2 {
            break;
        }
    }
    let total: Rational = escaped.iter().map(|(_, c)| c.clone()).sum::<Rational>() / Rational::from_integer(2.into());
    let lp = Rational::from_integer(p.into());
    let resolved = escaped.len() + certified_zero;
    if resolved >= 2 {
        let value = LogLinear::zero().plus_log(total, p);
        return LocalHeightEstimate::exact(Place::Prime(p), value, last + 1, budget.precision);
    }
    let unresolved = (2 - resolved) as i64;
    let per = rat_i64(exponent - shift) * d_pow_inv(d, last);
    let lo = ln_rational(&lp, budget.precision).mul_rational(&total);
    let hi = ln_rational(&lp, budget.precision).mul_rational(&(total + per * Rational::new(unresolved.into(), 2.into())));
    LocalHeightEstimate {
        place: Place::Prime(p),
        value: lo.hull(&hi).clamp_nonneg(),
        iterations_used: last + 1,
        status: EstimateStatus::Bounded,
        exact: None,
    }
}
