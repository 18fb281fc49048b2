//! Post-critical finiteness: exact certificates, escape witnesses and the
//! elimination sieves for cubics `z^3 + A z + B`.

pub mod ratio;
pub mod sieve;

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heights::orbit::ExactOrbit;
use crate::heights::{cubic_escape_radius, escape_radius, relevant_primes, Embedding, EscapeRadius, HeightBudget, Place};
use crate::numerics::quad::quad_valuations_unchecked;
use crate::numerics::{QuadExt, Rational, Tri};
use crate::poly::{critical_points, PolySpec};

pub use ratio::{height_ratio, RatioReport};
pub use sieve::{
    arch_escape_sieve, integrality_sieve, padic_escape_sieve, SieveConfig, SieveReport, Stage,
};

/// Which escape radius a witness is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RadiusKind {
    /// `C_{f,v}`, valid for any polynomial.
    General,
    /// `C*_{f,v}`, for `z^3 + A z + B` only.
    Cubic,
}

impl RadiusKind {
    pub fn radius(self, f: &PolySpec, place: Place) -> Result<EscapeRadius> {
        match self {
            RadiusKind::General => Ok(escape_radius(f, place)),
            RadiusKind::Cubic => {
                let (a, b) = cubic_params(f).ok_or_else(|| Error::Config("not of the form z^3 + A z + B".into()))?;
                Ok(cubic_escape_radius(&a, &b, place))
            }
        }
    }
}

/// `(A, B)` when `f = z^3 + A z + B`.
pub fn cubic_params(f: &PolySpec) -> Option<(Rational, Rational)> {
    let c = f.coeffs();
    (c.len() == 4 && c[3] == Rational::from_integer(1.into()) && c[2].is_zero()).then(|| (c[1].clone(), c[0].clone()))
}

/// A reproducible proof that some critical orbit escapes: `|f^N(c)|_v`
/// strictly exceeds the escape radius under the given embedding (for a
/// prime, the embedding picks one of the two valuations over `p`).
///
/// `precision == 0` means the crossing was decided by exact arithmetic;
/// otherwise by outward-rounded interval iteration at that precision.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscapeWitness {
    pub place: Place,
    pub critical: QuadExt,
    pub embedding: Embedding,
    pub iterate: usize,
    pub radius: RadiusKind,
    pub precision: u32,
}

impl EscapeWitness {
    /// Re-derives the threshold crossing from scratch.
    pub fn replay(&self, f: &PolySpec) -> bool {
        if !self.critical.eval_rational_poly(&f.derivative_coeffs()).is_zero() {
            return false;
        }
        let Ok(radius) = self.radius.radius(f, self.place) else {
            return false;
        };
        if self.precision > 0 {
            if self.place != Place::Arch {
                return false;
            }
            let mut es = self.critical.embeddings(self.precision);
            let mut w = es.swap_remove(self.embedding.index().min(es.len() - 1));
            for _ in 0..self.iterate {
                w = w.eval_poly(f.coeffs());
            }
            return radius.exceeded_by_interval(&w.abs()) == Tri::True;
        }
        let mut w = self.critical.clone();
        for _ in 0..self.iterate {
            w = f.eval_quad(&w);
        }
        radius.exceeded_by_point(&w, self.embedding)
    }

    /// Human-readable description of the crossing.
    pub fn threshold(&self, f: &PolySpec) -> String {
        match self.radius.radius(f, self.place) {
            Ok(r) => format!("|f^{}({})|_{} > {}", self.iterate, self.critical, self.place, r),
            Err(e) => e.to_string(),
        }
    }
}

/// Compact form `place;N;embedding;radius;precision;critical`, used in CSV
/// output; `FromStr` reads it back.
impl fmt::Display for EscapeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let emb = match self.embedding {
            Embedding::Plus => "+",
            Embedding::Minus => "-",
        };
        let kind = match self.radius {
            RadiusKind::General => "C",
            RadiusKind::Cubic => "C*",
        };
        write!(f, "{};{};{};{};{};{}", self.place, self.iterate, emb, kind, self.precision, self.critical)
    }
}

impl FromStr for EscapeWitness {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().splitn(6, ';').collect();
        let [place, n, emb, kind, prec, crit] = parts[..] else {
            return Err(Error::parse(0, "expected six ';'-separated fields"));
        };
        let bad = |what: &str| Error::parse(0, format!("invalid {what} in witness '{s}'"));
        Ok(EscapeWitness {
            place: place.parse()?,
            iterate: n.parse().map_err(|_| bad("iterate"))?,
            embedding: match emb {
                "+" => Embedding::Plus,
                "-" => Embedding::Minus,
                _ => return Err(bad("embedding")),
            },
            radius: match kind {
                "C" => RadiusKind::General,
                "C*" => RadiusKind::Cubic,
                _ => return Err(bad("radius")),
            },
            precision: prec.parse().map_err(|_| bad("precision"))?,
            critical: crit.parse()?,
        })
    }
}

/// Exact forward orbit of one critical point, closed under `f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalOrbit {
    pub critical: QuadExt,
    pub multiplicity: usize,
    pub points: Vec<QuadExt>,
    pub tail: usize,
    pub period: usize,
}

impl CriticalOrbit {
    /// Checks by re-evaluation that `points` is the orbit of `critical`
    /// and that `f(last) = points[tail]`.
    pub fn verify(&self, f: &PolySpec) -> bool {
        let orbit = ExactOrbit {
            points: self.points.clone(),
            cycle: Some((self.tail, self.period)),
        };
        self.points.first() == Some(&self.critical) && orbit.verify_closed(f)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum PcfVerdict {
    Pcf { orbits: Vec<CriticalOrbit> },
    NotPcf { witness: EscapeWitness },
    /// Some critical orbit neither repeated nor escaped within budget.
    Undecided { iterations: usize, max_bits: u64 },
}

impl PcfVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            PcfVerdict::Pcf { .. } => "pcf",
            PcfVerdict::NotPcf { .. } => "not_pcf",
            PcfVerdict::Undecided { .. } => "undecided",
        }
    }

    pub fn is_pcf(&self) -> bool {
        matches!(self, PcfVerdict::Pcf { .. })
    }

    /// Longest recorded critical orbit.
    pub fn orbit_len(&self) -> usize {
        match self {
            PcfVerdict::Pcf { orbits } => orbits.iter().map(|o| o.points.len()).max().unwrap_or(0),
            _ => 0,
        }
    }
}

/// First place and embedding at which `w` lies beyond the radius, if any.
pub(crate) fn escaping_place(
    w: &QuadExt,
    radii: &[(Place, EscapeRadius)],
) -> Option<(Place, Embedding)> {
    for (place, r) in radii {
        match place {
            Place::Arch => {
                for &e in Embedding::all_for(w) {
                    if r.exceeded_by_point(w, e) {
                        return Some((*place, e));
                    }
                }
            }
            Place::Prime(p) => {
                let (u1, u2) = quad_valuations_unchecked(w, *p);
                for (u, e) in [(u1, Embedding::Plus), (u2, Embedding::Minus)] {
                    if r.exceeded_by_valuation(u) {
                        return Some((*place, e));
                    }
                }
            }
        }
    }
    None
}

/// Runs every critical orbit exactly. `Pcf` once all of them repeat,
/// `NotPcf` as soon as one crosses `C_{f,v}` at the archimedean place or a
/// relevant prime, `Undecided` otherwise.
pub fn certify_pcf(f: &PolySpec, budget: &HeightBudget) -> Result<PcfVerdict> {
    let cps = critical_points(f)?;
    let mut places = vec![Place::Arch];
    for c in &cps {
        places.extend(relevant_primes(f, &c.location)?.into_iter().map(Place::Prime));
    }
    places.sort_unstable();
    places.dedup();
    let radii: Vec<(Place, EscapeRadius)> = places.iter().map(|&v| (v, escape_radius(f, v))).collect();

    let mut orbits = Vec::new();
    let mut undecided = None;
    for c in cps {
        let mut hit = None;
        let orbit = ExactOrbit::compute_until(f, &c.location, budget.max_iterations, budget.max_orbit_bits, |n, w| {
            hit = escaping_place(w, &radii).map(|(place, embedding)| (place, embedding, n));
            hit.is_some()
        });
        if let Some((place, embedding, iterate)) = hit {
            return Ok(PcfVerdict::NotPcf {
                witness: EscapeWitness {
                    place,
                    critical: c.location,
                    embedding,
                    iterate,
                    radius: RadiusKind::General,
                    precision: 0,
                },
            });
        }
        match orbit.cycle {
            Some((tail, period)) => orbits.push(CriticalOrbit {
                critical: c.location,
                multiplicity: c.multiplicity,
                points: orbit.points,
                tail,
                period,
            }),
            None => {
                undecided.get_or_insert(PcfVerdict::Undecided {
                    iterations: orbit.points.len() - 1,
                    max_bits: budget.max_orbit_bits,
                });
            }
        }
    }
    Ok(undecided.unwrap_or(PcfVerdict::Pcf { orbits }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    fn b() -> HeightBudget {
        HeightBudget::default()
    }

    #[test]
    fn rational_tail_into_fixed_point() {
        let f = PolySpec::cubic(rat(-3, 4), rat(3, 4));
        let PcfVerdict::Pcf { orbits } = certify_pcf(&f, &b()).unwrap() else {
            panic!()
        };
        let half = QuadExt::rational(rat(1, 2));
        let fixed = orbits.iter().find(|o| o.critical == half).unwrap();
        assert_eq!((fixed.points.len(), fixed.tail, fixed.period), (1, 0, 1));
        let other = orbits.iter().find(|o| o.critical == half.neg()).unwrap();
        assert_eq!(other.points, vec![half.neg(), QuadExt::rational(int(1))]);
        assert_eq!((other.tail, other.period), (1, 1));
        assert!(orbits.iter().all(|o| o.verify(&f)));
    }

    #[test]
    fn complex_fixed_critical_points() {
        let f = PolySpec::cubic(rat(3, 2), int(0));
        let PcfVerdict::Pcf { orbits } = certify_pcf(&f, &b()).unwrap() else {
            panic!()
        };
        assert_eq!(orbits.len(), 2);
        for o in &orbits {
            assert_eq!(*o.critical.d(), rat(-1, 2));
            assert_eq!(o.points.len(), 1);
        }
    }

    #[test]
    fn escaping_quadratic_has_a_witness() {
        let f = PolySpec::quadratic(int(1));
        let PcfVerdict::NotPcf { witness } = certify_pcf(&f, &b()).unwrap() else {
            panic!()
        };
        assert_eq!(witness.place, Place::Arch);
        assert_eq!(witness.iterate, 3);
        assert!(witness.replay(&f));
        let back: EscapeWitness = witness.to_string().parse().unwrap();
        assert_eq!(back, witness);
        // the same record does not replay against a different map
        assert!(!witness.replay(&PolySpec::quadratic(int(-1))));
    }

    #[test]
    fn witness_rejects_non_critical_points() {
        let f = PolySpec::quadratic(int(1));
        let w = EscapeWitness {
            place: Place::Arch,
            critical: QuadExt::rational(int(5)),
            embedding: Embedding::Plus,
            iterate: 0,
            radius: RadiusKind::General,
            precision: 0,
        };
        assert!(!w.replay(&f));
    }
}
