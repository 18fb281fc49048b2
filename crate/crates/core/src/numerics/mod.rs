//! Exact scalars and rigorous enclosures.

pub mod complex;
pub mod dyadic;
pub mod height;
pub mod quad;
pub mod rational;
pub mod valuation;

pub use complex::ComplexInterval;
pub use dyadic::{ln2, ln_rational, Dyadic, DyadicInterval, Round, Tri, DEFAULT_PRECISION};
pub use height::{point_height, rational_height, tuple_height, tuple_height_exact, LogLinear};
pub use quad::{arch_abs_pair, quad_valuations, QuadExt};
pub use rational::{parse_rational, Rational};
pub use valuation::{padic_valuation, ValOrInf};

/// Trace and norm of `z`: it is a root of `T^2 - t*T + n`.
pub fn quad_minimal_polynomial(z: &QuadExt) -> (Rational, Rational) {
    z.minimal_polynomial()
}
