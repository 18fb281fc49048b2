//! Local and global canonical heights with rigorous error control.

pub mod escape;
pub mod global;
pub mod local;
pub mod orbit;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::numerics::{DyadicInterval, LogLinear, DEFAULT_PRECISION};

pub use escape::{cubic_escape_radius, escape_radius, Embedding, EscapeRadius};
pub use global::{
    canonical_height, canonical_height_report, canonical_height_upper_bound, critical_height,
    critical_height_report, relevant_primes, CriticalHeightReport, HeightReport,
};
pub use local::local_canonical_height;
pub use orbit::ExactOrbit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Arch,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Arch => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim() {
            "inf" | "arch" | "∞" => Ok(Place::Arch),
            t => {
                let p: u64 = t.parse().map_err(|_| Error::parse(0, format!("invalid place '{t}'")))?;
                crate::numerics::valuation::check_prime(p)?;
                Ok(Place::Prime(p))
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightBudget {
    pub max_iterations: usize,
    pub precision: u32,
    pub max_refinements: u32,
    /// Exact iteration stops once an iterate needs more bits than this;
    /// interval iteration takes over at the archimedean place.
    pub max_orbit_bits: u64,
}

impl Default for HeightBudget {
    fn default() -> Self {
        HeightBudget {
            max_iterations: 64,
            precision: DEFAULT_PRECISION,
            max_refinements: 4,
            max_orbit_bits: 1 << 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateStatus {
    /// Known exactly: zero, or a rational multiple of `log p`.
    Exact,
    /// Escape certified; the width comes from the archimedean error term
    /// and rounding only.
    Converged,
    /// Budget exhausted without escape or a repeat: `[0, upper]`.
    Bounded,
}

/// Enclosure of the Galois-averaged local canonical height at one place of
/// Q: the mean of the local heights over the (one or two) places of
/// `Q(z)` above it, i.e. over conjugates.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalHeightEstimate {
    pub place: Place,
    pub value: DyadicInterval,
    pub iterations_used: usize,
    pub status: EstimateStatus,
    /// The exact value when `status` is `Exact`.
    pub exact: Option<LogLinear>,
}

impl LocalHeightEstimate {
    pub fn is_decided(&self) -> bool {
        self.status != EstimateStatus::Bounded
    }

    pub(crate) fn exact(place: Place, value: LogLinear, iterations: usize, prec: u32) -> Self {
        LocalHeightEstimate {
            place,
            value: value.enclosure(prec),
            iterations_used: iterations,
            status: EstimateStatus::Exact,
            exact: Some(value),
        }
    }
}

impl Serialize for LocalHeightEstimate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LocalHeightEstimate", 5)?;
        st.serialize_field("place", &self.place)?;
        st.serialize_field("lo", &self.value.lo().to_string())?;
        st.serialize_field("hi", &self.value.hi().to_string())?;
        st.serialize_field("iterations", &self.iterations_used)?;
        st.serialize_field("status", &self.status)?;
        st.end()
    }
}
