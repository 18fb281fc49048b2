//! `h_crit / h_mc`, the quantity the main comparison theorem pins between
//! `1/(2d-1)` and `4` up to bounded error.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{critical_height_report, HeightBudget};
use crate::numerics::{Dyadic, DyadicInterval};
use crate::poly::{monic_centred_height, PolySpec};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub degree: usize,
    pub h_crit: DyadicInterval,
    pub h_mc: DyadicInterval,
    /// `None` when `h_mc = 0`, i.e. `f` is conjugate to `z^d`.
    pub ratio: Option<DyadicInterval>,
}

impl RatioReport {
    /// The interval `[1/(2d-1), 4]`.
    pub fn window(&self) -> (f64, f64) {
        (1.0 / (2 * self.degree - 1) as f64, 4.0)
    }
}

/// Enclosures of `h_crit(f)`, `h_mc(f)` and their quotient. Fails with
/// `Undecided` when some critical orbit is only bounded.
pub fn height_ratio(f: &PolySpec, budget: &HeightBudget) -> Result<RatioReport> {
    let crit = critical_height_report(f, budget)?;
    if !crit.complete {
        let iterations = crit.points.iter().map(|(_, r)| r.iterations).max().unwrap_or(0);
        return Err(Error::Undecided {
            iterations,
            partial: Some(crit.value),
        });
    }
    let h_mc = monic_centred_height(f, budget.precision)?;
    Ok(RatioReport {
        degree: f.degree(),
        ratio: ratio_of(&crit.value, &h_mc),
        h_crit: crit.value,
        h_mc,
    })
}

pub(crate) fn ratio_of(num: &DyadicInterval, den: &DyadicInterval) -> Option<DyadicInterval> {
    if den.lo() <= &Dyadic::zero() {
        return None;
    }
    Some(num.div(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int;
    use crate::poly::parse_poly;

    #[test]
    fn pcf_map_has_ratio_zero() {
        let f = parse_poly("z^3 - 3z").unwrap();
        let r = height_ratio(&f, &HeightBudget::default()).unwrap();
        assert!(r.h_crit.is_point());
        assert!(r.ratio.unwrap().is_point());
    }

    #[test]
    fn unicritical_tail_near_two_thirds() {
        let f = PolySpec::unicritical(3, int(1_000_000)).unwrap();
        let r = height_ratio(&f, &HeightBudget::default()).unwrap();
        let (lo, hi) = r.ratio.unwrap().to_f64_bounds();
        assert!((lo - 2.0 / 3.0).abs() < 0.05 && (hi - 2.0 / 3.0).abs() < 0.05, "{lo} {hi}");
    }

    #[test]
    fn power_map_has_no_ratio() {
        let f = parse_poly("z^3").unwrap();
        assert_eq!(height_ratio(&f, &HeightBudget::default()).unwrap().ratio, None);
    }
}
