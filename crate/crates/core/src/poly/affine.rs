use num_traits::One;
use serde::{Deserialize, Serialize};

use super::PolySpec;
use crate::error::{Error, Result};
use crate::numerics::rational::rational_nth_root;
use crate::numerics::{tuple_height_exact, DyadicInterval, LogLinear, QuadExt, Rational};

/// `psi(z) = alpha*z + gamma` with `alpha != 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    pub alpha: QuadExt,
    pub gamma: QuadExt,
}

impl AffineMap {
    pub fn new(alpha: QuadExt, gamma: QuadExt) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::DivisionByZero);
        }
        alpha.checked_add(&gamma)?;
        Ok(AffineMap { alpha, gamma })
    }

    pub fn rational(alpha: Rational, gamma: Rational) -> Result<Self> {
        AffineMap::new(alpha.into(), gamma.into())
    }

    pub fn identity() -> Self {
        AffineMap {
            alpha: QuadExt::one(),
            gamma: QuadExt::zero(),
        }
    }

    pub fn apply(&self, z: &QuadExt) -> Result<QuadExt> {
        self.alpha.checked_mul(z)?.checked_add(&self.gamma)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        Ok(AffineMap {
            alpha: self.alpha.checked_mul(&other.alpha)?,
            gamma: self.alpha.checked_mul(&other.gamma)?.checked_add(&self.gamma)?,
        })
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.alpha.inv().expect("alpha is nonzero");
        AffineMap {
            gamma: (&inv * &self.gamma).neg(),
            alpha: inv,
        }
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r = r * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    r
}

/// Coefficients of `psi^{-1} ∘ F ∘ psi`, both lowest degree first.
pub fn conjugate_coeffs(b: &[QuadExt], psi: &AffineMap) -> Result<Vec<QuadExt>> {
    let d = b.len() - 1;
    let mut gpow = vec![QuadExt::one()];
    for i in 0..d {
        let next = gpow[i].checked_mul(&psi.gamma)?;
        gpow.push(next);
    }
    let inv = psi.alpha.inv()?;
    let mut apow = inv.clone();
    let mut out = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let mut s = QuadExt::zero();
        for i in j..=d {
            let t = b[i].checked_mul(&gpow[i - j])?.mul_rational(&binomial(i, j));
            s = s.checked_add(&t)?;
        }
        if j == 0 {
            s = s.checked_sub(&psi.gamma)?;
        }
        out.push(apow.checked_mul(&s)?);
        apow = apow.checked_mul(&psi.alpha)?;
    }
    Ok(out)
}

/// `F^psi` for a conjugation that keeps the coefficients rational.
pub fn affine_conjugate(f: &PolySpec, psi: &AffineMap) -> Result<PolySpec> {
    let b: Vec<QuadExt> = f.coeffs().iter().cloned().map(QuadExt::from).collect();
    let c = conjugate_coeffs(&b, psi)?;
    let rational = c
        .iter()
        .map(|q| q.as_rational().cloned())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::UnsupportedField("conjugate has irrational coefficients".into()))?;
    PolySpec::new(rational)
}

/// A monic centred representative `z^d + a_{d-2} z^{d-2} + ... + a_0` whose
/// coefficients may lie in a quadratic field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonicCentred {
    pub coeffs: Vec<QuadExt>,
}

impl MonicCentred {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `a_0, ..., a_{d-2}`.
    pub fn nontrivial(&self) -> &[QuadExt] {
        &self.coeffs[..self.degree() - 1]
    }

    pub fn as_poly_spec(&self) -> Result<PolySpec> {
        let v = self
            .coeffs
            .iter()
            .map(|q| q.as_rational().cloned())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::UnsupportedField("representative is not defined over Q".into()))?;
        PolySpec::new(v)
    }

    /// `h(a_{d-2}, ..., a_0)` exactly. When the coefficients are of the
    /// form `r*sqrt(D)^k` their squares are rational and the height halves.
    pub fn height_exact(&self) -> Result<LogLinear> {
        let nt = self.nontrivial();
        if let Some(v) = nt.iter().map(|q| q.as_rational().cloned()).collect::<Option<Vec<_>>>() {
            return Ok(tuple_height_exact(&v));
        }
        if nt.iter().all(QuadExt::is_pure) {
            let sq: Vec<Rational> = nt
                .iter()
                .map(|q| q.checked_mul(q).map(|s| s.as_rational().cloned().expect("pure squares are rational")))
                .collect::<Result<_>>()?;
            return Ok(tuple_height_exact(&sq).scale(&Rational::new(1.into(), 2.into())));
        }
        Err(Error::UnsupportedField(
            "monic centred coefficients are not all of the form r*sqrt(D)^k".into(),
        ))
    }

    pub fn height(&self, prec: u32) -> Result<DyadicInterval> {
        Ok(self.height_exact()?.enclosure(prec))
    }
}

/// A `k`-th root of `q` in Q or a quadratic extension, if one exists there.
fn quadratic_root(q: &Rational, k: usize) -> Option<QuadExt> {
    if let Some(r) = rational_nth_root(q, k as u32) {
        return Some(r.into());
    }
    if k % 2 == 0 {
        return rational_nth_root(q, (k / 2) as u32).map(|s| QuadExt::sqrt_of(&s));
    }
    None
}

/// A monic centred conjugate `F^psi` with `alpha^{d-1} = 1/a_d` and
/// `gamma = -a_{d-1}/(d a_d)`.
pub fn to_monic_centred(f: &PolySpec) -> Result<(MonicCentred, AffineMap)> {
    let d = f.degree();
    let ad = f.leading();
    let gamma = -f.coeff(d - 1) / (ad * Rational::from_integer(d.into()));
    let alpha = quadratic_root(&(Rational::one() / ad), d - 1).ok_or_else(|| {
        Error::UnsupportedField(format!(
            "no ({})-th root of {} in a quadratic field",
            d - 1,
            Rational::one() / ad
        ))
    })?;
    let psi = AffineMap::new(alpha, gamma.into())?;
    let b: Vec<QuadExt> = f.coeffs().iter().cloned().map(QuadExt::from).collect();
    let coeffs = conjugate_coeffs(&b, &psi)?;
    debug_assert!(coeffs[d] == QuadExt::one() && coeffs[d - 1].is_zero());
    Ok((MonicCentred { coeffs }, psi))
}

pub fn monic_centred_height(f: &PolySpec, prec: u32) -> Result<DyadicInterval> {
    to_monic_centred(f)?.0.height(prec)
}

pub fn monic_centred_height_exact(f: &PolySpec) -> Result<LogLinear> {
    to_monic_centred(f)?.0.height_exact()
}
