use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::heights::{critical_height_report, HeightBudget};
use crate::numerics::rational::as_string;
use crate::numerics::{rational_height, DyadicInterval, Rational};
use crate::pcf::ratio::ratio_of;
use crate::poly::{monic_centred_height, PolySpec};

/// The two one-parameter families at the ends of the `h_crit / h_mc` range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `z^d + c`; ratio tends to `(d-1)/d`.
    UnicriticalTail,
    /// `z^d - (d c/(d-1)) z^(d-1)`, with critical points 0 (fixed, order
    /// `d-2`) and `c`; ratio tends to `1/d`.
    SuperattractingZero,
}

impl Family {
    pub fn member(self, d: usize, c: &Rational) -> Result<PolySpec> {
        if d < 2 {
            return Err(Error::DegreeTooSmall { min: 2, got: d });
        }
        match self {
            Family::UnicriticalTail => PolySpec::unicritical(d, c.clone()),
            Family::SuperattractingZero => {
                let mut v = vec![Rational::zero(); d + 1];
                v[d] = Rational::from_integer(1.into());
                v[d - 1] = -c * Rational::new((d as i64).into(), ((d - 1) as i64).into());
                PolySpec::new(v)
            }
        }
    }

    /// Limit of `h_crit / h_mc` as `h(c)` grows.
    pub fn target(self, d: usize) -> Rational {
        match self {
            Family::UnicriticalTail => Rational::new(((d - 1) as i64).into(), (d as i64).into()),
            Family::SuperattractingZero => Rational::new(1.into(), (d as i64).into()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::UnicriticalTail => "unicritical",
            Family::SuperattractingZero => "superattracting",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "unicritical" | "unicritical-tail" => Ok(Family::UnicriticalTail),
            "superattracting" | "superattracting-zero" => Ok(Family::SuperattractingZero),
            other => Err(Error::Config(format!("unknown family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    #[serde(with = "as_string")]
    pub c: Rational,
    pub h_c: DyadicInterval,
    /// Partial enclosure when `undecided`.
    pub h_crit: DyadicInterval,
    pub h_mc: DyadicInterval,
    /// `h_crit / h_mc`; absent when `h_mc = 0`.
    pub ratio: Option<DyadicInterval>,
    #[serde(with = "as_string")]
    pub target: Rational,
    pub undecided: bool,
}

impl FamilyRow {
    pub const CSV_HEADER: &'static str =
        "c,h_c_lo,h_c_hi,h_crit_lo,h_crit_hi,h_mc_lo,h_mc_hi,ratio_lo,ratio_hi,target,status";

    /// One CSV line; bounds are outward-rounded doubles, or exact dyadics
    /// (`m*2^e`) with `exact`.
    pub fn csv_line(&self, exact: bool) -> String {
        let pair = |x: &DyadicInterval| {
            if exact {
                format!("{},{}", x.lo(), x.hi())
            } else {
                let (lo, hi) = x.to_f64_bounds();
                format!("{lo:e},{hi:e}")
            }
        };
        let ratio = self.ratio.as_ref().map(pair).unwrap_or_else(|| ",".into());
        format!(
            "{},{},{},{},{},{},{}",
            crate::numerics::rational::fmt_short(&self.c),
            pair(&self.h_c),
            pair(&self.h_crit),
            pair(&self.h_mc),
            ratio,
            crate::numerics::rational::fmt_short(&self.target),
            if self.undecided { "undecided" } else { "ok" }
        )
    }
}

/// `h_crit`, `h_mc` and their ratio along a family. Rows whose critical
/// height stays undecided are flagged rather than dropped.
pub fn family_scan(family: Family, d: usize, cs: &[Rational], budget: &HeightBudget) -> Result<Vec<FamilyRow>> {
    cs.iter()
        .map(|c| {
            let f = family.member(d, c)?;
            let crit = critical_height_report(&f, budget)?;
            let h_mc = monic_centred_height(&f, budget.precision)?;
            Ok(FamilyRow {
                c: c.clone(),
                h_c: rational_height(c, budget.precision),
                ratio: if crit.complete { ratio_of(&crit.value, &h_mc) } else { None },
                h_crit: crit.value,
                h_mc,
                target: family.target(d),
                undecided: !crit.complete,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::int;

    #[test]
    fn members() {
        let f = Family::SuperattractingZero.member(3, &int(2)).unwrap();
        assert_eq!(f.coeffs(), &[int(0), int(0), int(-3), int(1)]);
        let f = Family::UnicriticalTail.member(4, &int(5)).unwrap();
        assert_eq!(f.coeffs()[0], int(5));
        assert!(Family::UnicriticalTail.member(1, &int(5)).is_err());
        assert_eq!("superattracting-zero".parse::<Family>().unwrap(), Family::SuperattractingZero);
    }

    #[test]
    fn zero_parameter_is_pcf() {
        let b = HeightBudget::default();
        for fam in [Family::UnicriticalTail, Family::SuperattractingZero] {
            let rows = family_scan(fam, 3, &[int(0)], &b).unwrap();
            assert!(rows[0].h_crit.is_point());
            assert_eq!(rows[0].ratio, None);
        }
    }
}
