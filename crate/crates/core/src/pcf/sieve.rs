//! Sound elimination tests for `z^3 + A z + B`: each either proves that a
//! critical orbit escapes (and records how) or lets the candidate through.

use serde::{Deserialize, Serialize};

use super::{escaping_place, EscapeWitness, RadiusKind};
use crate::heights::orbit::ExactOrbit;
use crate::heights::{cubic_escape_radius, Embedding, Place};
use crate::numerics::rational::{as_string, prime_divisors};
use crate::numerics::{Rational, Tri, DEFAULT_PRECISION};
use crate::poly::{critical_points_cubic, PolySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveConfig {
    /// Archimedean iterates `N = 0..=n_arch` are examined.
    pub n_arch: usize,
    pub n_padic: usize,
    pub precision: u32,
    /// Precision doublings allowed after an inconclusive comparison.
    pub refinements: u32,
    /// Size cap on exact iterates in the p-adic sieve.
    pub max_bits: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            n_arch: 14,
            n_padic: 14,
            precision: DEFAULT_PRECISION,
            refinements: 4,
            max_bits: 1 << 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum Stage {
    Integrality { place: Place },
    ArchEscape { n: usize },
    PadicEscape { p: u64, n: usize },
    Survived,
}

impl Stage {
    pub fn label(&self) -> String {
        match self {
            Stage::Integrality { place } => format!("integrality@{place}"),
            Stage::ArchEscape { .. } => "arch".into(),
            Stage::PadicEscape { p, .. } => format!("padic{p}"),
            Stage::Survived => "survived".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveReport {
    #[serde(rename = "A", with = "as_string")]
    pub a: Rational,
    #[serde(rename = "B", with = "as_string")]
    pub b: Rational,
    #[serde(flatten)]
    pub stage: Stage,
    pub witness: Option<EscapeWitness>,
    /// Set when some comparison stayed inconclusive at the refinement cap.
    #[serde(default)]
    pub inconclusive: bool,
}

impl SieveReport {
    fn survived(a: &Rational, b: &Rational, inconclusive: bool) -> Self {
        SieveReport {
            a: a.clone(),
            b: b.clone(),
            stage: Stage::Survived,
            witness: None,
            inconclusive,
        }
    }

    pub fn eliminated(&self) -> bool {
        self.stage != Stage::Survived
    }

    /// Replays the recorded witness; integrality failures are re-checked
    /// directly.
    pub fn replay(&self) -> bool {
        let f = PolySpec::cubic(self.a.clone(), self.b.clone());
        match (&self.stage, &self.witness) {
            (Stage::Survived, _) => true,
            (Stage::Integrality { place }, None) => integrality_sieve(&self.a, &self.b) == Err(*place),
            (Stage::ArchEscape { n }, Some(w)) => w.place == Place::Arch && w.iterate == *n && w.replay(&f),
            (Stage::PadicEscape { p, n }, Some(w)) => w.place == Place::Prime(*p) && w.iterate == *n && w.replay(&f),
            _ => false,
        }
    }
}

/// Passes iff `4A` and `8B` are integers; otherwise reports the smallest
/// prime at which that fails.
pub fn integrality_sieve(a: &Rational, b: &Rational) -> std::result::Result<(), Place> {
    let four = Rational::from_integer(4.into());
    let eight = Rational::from_integer(8.into());
    let mut bad: Vec<u64> = Vec::new();
    for q in [a * four, b * eight] {
        if !q.is_integer() {
            // denominators here are tiny; trial division always finishes
            bad.extend(prime_divisors(q.denom()).expect("small denominator"));
        }
    }
    match bad.into_iter().min() {
        Some(p) => Err(Place::Prime(p)),
        None => Ok(()),
    }
}

/// Escape iterate of one critical orbit under one embedding, found by
/// interval iteration; `Err(inconclusive)` when none was certified.
fn arch_orbit(
    f: &PolySpec,
    radius: &crate::heights::EscapeRadius,
    start: &crate::numerics::QuadExt,
    emb: Embedding,
    n_max: usize,
    precision: u32,
    refinements: u32,
) -> std::result::Result<(usize, u32), bool> {
    let mut prec = precision;
    for _ in 0..=refinements {
        let mut es = start.embeddings(prec);
        let mut w = es.swap_remove(emb.index().min(es.len() - 1));
        let mut unknown = false;
        for n in 0..=n_max {
            if n > 0 {
                w = w.eval_poly(f.coeffs());
            }
            match radius.exceeded_by_interval(&w.abs()) {
                Tri::True => return Ok((n, prec)),
                Tri::Unknown => unknown = true,
                Tri::False => {}
            }
        }
        if !unknown {
            return Err(false);
        }
        prec *= 2;
    }
    Err(true)
}

/// Eliminates when some `|f^N(+-alpha)|` with `N <= n_max` is certified
/// above `C*_{f,inf}` in some embedding; the smallest such `N` is kept.
pub fn arch_escape_sieve(a: &Rational, b: &Rational, n_max: usize, precision: u32, refinements: u32) -> SieveReport {
    let f = PolySpec::cubic(a.clone(), b.clone());
    let radius = cubic_escape_radius(a, b, Place::Arch);
    let mut best: Option<EscapeWitness> = None;
    let mut inconclusive = false;
    for c in critical_points_cubic(a, b) {
        for &emb in Embedding::all_for(&c.location) {
            match arch_orbit(&f, &radius, &c.location, emb, n_max, precision, refinements) {
                Ok((n, prec)) => {
                    if best.as_ref().is_none_or(|w| n < w.iterate) {
                        best = Some(EscapeWitness {
                            place: Place::Arch,
                            critical: c.location.clone(),
                            embedding: emb,
                            iterate: n,
                            radius: RadiusKind::Cubic,
                            precision: prec,
                        });
                    }
                }
                Err(u) => inconclusive |= u,
            }
        }
    }
    match best {
        Some(w) => SieveReport {
            a: a.clone(),
            b: b.clone(),
            stage: Stage::ArchEscape { n: w.iterate },
            witness: Some(w),
            inconclusive: false,
        },
        None => SieveReport::survived(a, b, inconclusive),
    }
}

/// Eliminates when some exact iterate `f^N(+-alpha)`, `N <= n_max`, has a
/// valuation above `p` below `-e`, where `C*_{f,p} = p^e`.
pub fn padic_escape_sieve(a: &Rational, b: &Rational, p: u64, n_max: usize, max_bits: u64) -> SieveReport {
    let f = PolySpec::cubic(a.clone(), b.clone());
    let place = Place::Prime(p);
    let radii = [(place, cubic_escape_radius(a, b, place))];
    let mut best: Option<EscapeWitness> = None;
    let mut inconclusive = false;
    for c in critical_points_cubic(a, b) {
        let mut hit = None;
        let orbit = ExactOrbit::compute_until(&f, &c.location, n_max, max_bits, |n, w| {
            hit = escaping_place(w, &radii).map(|(_, e)| (n, e));
            hit.is_some()
        });
        match hit {
            Some((n, embedding)) => {
                if best.as_ref().is_none_or(|w| n < w.iterate) {
                    best = Some(EscapeWitness {
                        place,
                        critical: c.location.clone(),
                        embedding,
                        iterate: n,
                        radius: RadiusKind::Cubic,
                        precision: 0,
                    });
                }
            }
            None => inconclusive |= orbit.cycle.is_none() && orbit.points.len() <= n_max,
        }
    }
    match best {
        Some(w) => SieveReport {
            a: a.clone(),
            b: b.clone(),
            stage: Stage::PadicEscape { p, n: w.iterate },
            witness: Some(w),
            inconclusive: false,
        },
        None => SieveReport::survived(a, b, inconclusive),
    }
}
