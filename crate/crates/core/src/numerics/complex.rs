//! Rectangular complex intervals, used to iterate critical orbits through
//! the archimedean embeddings of Q(sqrt(D)) with D < 0.

use super::dyadic::DyadicInterval;
use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: DyadicInterval,
    pub im: DyadicInterval,
}

impl ComplexInterval {
    pub fn new(re: DyadicInterval, im: DyadicInterval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: DyadicInterval) -> Self {
        let prec = re.precision();
        ComplexInterval {
            re,
            im: DyadicInterval::zero(prec),
        }
    }

    pub fn add(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn add_rational(&self, q: &Rational) -> ComplexInterval {
        ComplexInterval {
            re: self
                .re
                .add(&DyadicInterval::from_rational(q, self.re.precision())),
            im: self.im.clone(),
        }
    }

    pub fn mul(&self, o: &ComplexInterval) -> ComplexInterval {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> ComplexInterval {
        ComplexInterval {
            re: self.re.mul_rational(q),
            im: self.im.mul_rational(q),
        }
    }

    pub fn neg(&self) -> ComplexInterval {
        ComplexInterval {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn abs_sq(&self) -> DyadicInterval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn abs(&self) -> DyadicInterval {
        self.abs_sq().sqrt()
    }

    /// Horner evaluation of a polynomial with rational coefficients given
    /// lowest degree first.
    pub fn eval_poly(&self, coeffs: &[Rational]) -> ComplexInterval {
        let prec = self.re.precision();
        let mut acc = ComplexInterval::real(DyadicInterval::zero(prec));
        for c in coeffs.iter().rev() {
            acc = acc.mul(self).add_rational(c);
        }
        acc
    }
}
