//! Exact arithmetic on Laurent polynomials and rational functions in `q`.

mod frac;
mod laurent;
pub(crate) mod modp;
mod ratfunc;
mod serial;
pub(crate) mod zpoly;

pub use frac::Frac;
pub use laurent::LaurentPoly;
pub use ratfunc::RationalFunc;
pub use serial::{parse_rational, rational_to_string};

pub(crate) use laurent::rational_pow;

use num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
