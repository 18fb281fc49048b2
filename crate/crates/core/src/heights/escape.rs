//! Escape radii. Beyond the radius the top-degree term dominates and one
//! iterate pins down the local canonical height.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Place;
use crate::numerics::valuation::vp;
use crate::numerics::{ln_rational, DyadicInterval, QuadExt, Rational, Tri, ValOrInf};
use crate::poly::PolySpec;

/// Which real embedding of `Q(sqrt(D))`, `D > 0`, is meant: the one
/// sending `sqrt(D)` to the positive or the negative root. Rational and
/// complex points only use `Plus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Embedding {
    Plus,
    Minus,
}

impl Embedding {
    pub fn index(self) -> usize {
        match self {
            Embedding::Plus => 0,
            Embedding::Minus => 1,
        }
    }

    /// Embeddings worth distinguishing for `z`: two for a real quadratic
    /// point, one otherwise (complex conjugates share absolute values).
    pub fn all_for(z: &QuadExt) -> &'static [Embedding] {
        if z.is_rational() || z.d().is_negative() {
            &[Embedding::Plus]
        } else {
            &[Embedding::Plus, Embedding::Minus]
        }
    }

    pub fn from_index(i: usize) -> Self {
        if i == 0 {
            Embedding::Plus
        } else {
            Embedding::Minus
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum EscapeRadius {
    /// `scale * max(1, t_i^(1/k_i))`.
    Arch { scale: Rational, terms: Vec<(Rational, u32)> },
    /// `p^exponent`.
    Prime { p: u64, exponent: Ratio<i64> },
}

fn rat_i64(v: Ratio<i64>) -> Rational {
    Rational::new((*v.numer()).into(), (*v.denom()).into())
}

/// Sign of `x + y sqrt(d)` for real `d > 0`, decided exactly.
fn real_sign(x: &Rational, y: &Rational, d: &Rational) -> i32 {
    let sx = if x.is_zero() { 0 } else if x.is_positive() { 1 } else { -1 };
    let sy = if y.is_zero() { 0 } else if y.is_positive() { 1 } else { -1 };
    if sx == sy || sy == 0 {
        return sx;
    }
    if sx == 0 {
        return sy;
    }
    // opposite signs: compare x^2 with d y^2
    match (x * x).cmp(&(d * y * y)) {
        std::cmp::Ordering::Greater => sx,
        std::cmp::Ordering::Less => sy,
        std::cmp::Ordering::Equal => 0,
    }
}

impl EscapeRadius {
    pub fn place(&self) -> Place {
        match self {
            EscapeRadius::Arch { .. } => Place::Arch,
            EscapeRadius::Prime { p, .. } => Place::Prime(*p),
        }
    }

    /// Whether `|w|` under the given embedding strictly exceeds the radius,
    /// decided exactly for a point of `Q(sqrt(D))`.
    pub fn exceeded_by_point(&self, w: &QuadExt, emb: Embedding) -> bool {
        match self {
            EscapeRadius::Arch { scale, terms } => {
                let d = w.d().clone();
                if w.is_rational() || d.is_positive() {
                    let (x, y) = match emb {
                        Embedding::Plus => (w.x().clone(), w.y().clone()),
                        Embedding::Minus => (w.x().clone(), -w.y()),
                    };
                    let s = real_sign(&x, &y, &d);
                    let u = QuadExt::new(x, y, d.clone()).mul_rational(&(Rational::from_integer(s.into()) / scale));
                    let above = |u: &QuadExt, t: &Rational| {
                        let diff = u.add_rational(&-t);
                        real_sign(diff.x(), diff.y(), diff.d()) > 0
                    };
                    above(&u, &Rational::one()) && terms.iter().all(|(t, k)| above(&u.pow(*k), t))
                } else {
                    // |w|^2 is the norm
                    let m = w.norm() / (scale * scale);
                    m > Rational::one() && terms.iter().all(|(t, k)| num_traits::pow(m.clone(), *k as usize) > t * t)
                }
            }
            EscapeRadius::Prime { .. } => {
                let (a, b) = crate::numerics::quad::quad_valuations_unchecked(w, self.prime());
                let v = match emb {
                    Embedding::Plus => a,
                    Embedding::Minus => b,
                };
                self.exceeded_by_valuation(v)
            }
        }
    }

    /// Three-valued comparison of an archimedean absolute-value enclosure.
    pub fn exceeded_by_interval(&self, abs: &DyadicInterval) -> Tri {
        match self {
            EscapeRadius::Arch { scale, terms } => {
                let x = abs.mul_rational(&(Rational::one() / scale));
                terms
                    .iter()
                    .fold(x.gt_rational(&Rational::one()), |acc, (t, k)| {
                        acc.and(x.powi(*k).gt_rational(t))
                    })
            }
            EscapeRadius::Prime { .. } => panic!("interval comparison at a finite place"),
        }
    }

    /// `|w|_p > p^e` iff `v_p(w) < -e`.
    pub fn exceeded_by_valuation(&self, v: ValOrInf) -> bool {
        match self {
            EscapeRadius::Prime { exponent, .. } => v < ValOrInf::Finite(-exponent),
            EscapeRadius::Arch { .. } => panic!("valuation comparison at the archimedean place"),
        }
    }

    fn prime(&self) -> u64 {
        match self {
            EscapeRadius::Prime { p, .. } => *p,
            EscapeRadius::Arch { .. } => unreachable!(),
        }
    }

    /// Enclosure of `log C`.
    pub fn log_enclosure(&self, prec: u32) -> DyadicInterval {
        match self {
            EscapeRadius::Arch { scale, terms } => {
                let mut m = DyadicInterval::zero(prec);
                for (t, k) in terms {
                    if t.is_positive() {
                        let l = ln_rational(t, prec).mul_rational(&Rational::new(1.into(), (*k).into()));
                        m = m.max(&l);
                    }
                }
                ln_rational(scale, prec).add(&m)
            }
            EscapeRadius::Prime { p, exponent } => {
                ln_rational(&Rational::from_integer((*p).into()), prec).mul_rational(&rat_i64(*exponent))
            }
        }
    }
}

impl fmt::Display for EscapeRadius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EscapeRadius::Arch { scale, terms } => {
                write!(f, "{scale}*max(1")?;
                for (t, k) in terms {
                    if t.is_zero() {
                        continue;
                    }
                    if *k == 1 {
                        write!(f, ", {t}")?;
                    } else {
                        write!(f, ", ({t})^(1/{k})")?;
                    }
                }
                write!(f, ")")
            }
            EscapeRadius::Prime { p, exponent } => write!(f, "{p}^({exponent})"),
        }
    }
}

fn neg_div(v: ValOrInf, k: i64) -> Option<Ratio<i64>> {
    v.finite().map(|x| -x / k)
}

/// `C_{f,v} = (2d)_v max{1, |a_i/a_d|^(1/(d-i)), |a_d|^(-1/(d-1))}`.
pub fn escape_radius(f: &PolySpec, place: Place) -> EscapeRadius {
    let d = f.degree();
    let ad = f.leading();
    match place {
        Place::Arch => {
            let mut terms: Vec<(Rational, u32)> = (0..d)
                .map(|i| ((f.coeff(i) / ad).abs(), (d - i) as u32))
                .collect();
            terms.push(((Rational::one() / ad).abs(), (d - 1) as u32));
            EscapeRadius::Arch {
                scale: Rational::from_integer((2 * d).into()),
                terms,
            }
        }
        Place::Prime(p) => {
            let mut e = Ratio::from_integer(0);
            for i in 0..d {
                if let Some(x) = neg_div(vp(&(f.coeff(i) / ad), p), (d - i) as i64) {
                    e = e.max(x);
                }
            }
            if let Some(x) = neg_div(vp(ad, p), -((d - 1) as i64)) {
                e = e.max(x);
            }
            EscapeRadius::Prime { p, exponent: e }
        }
    }
}

/// `C*_{f,v} = (2)_v max{1, |A|^(1/2), |B|^(1/3)}` for `z^3 + A z + B`.
pub fn cubic_escape_radius(a: &Rational, b: &Rational, place: Place) -> EscapeRadius {
    match place {
        Place::Arch => EscapeRadius::Arch {
            scale: Rational::from_integer(2.into()),
            terms: vec![(a.abs(), 2), (b.abs(), 3)],
        },
        Place::Prime(p) => {
            let mut e = Ratio::from_integer(0);
            for (x, k) in [(a, 2), (b, 3)] {
                if let Some(v) = neg_div(vp(x, p), k) {
                    e = e.max(v);
                }
            }
            EscapeRadius::Prime { p, exponent: e }
        }
    }
}
