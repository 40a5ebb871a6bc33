//! Exact arithmetic shared by every other module.
//!
//! All integers that can grow with the input parameters are [`BigInt`]s;
//! rational quantities are [`Rational`]s (always in lowest terms with a
//! positive denominator).

mod definiteness;
mod matrix;
mod slope;
mod snf;

pub use definiteness::{definiteness, Definiteness};
pub use matrix::{direct_sum, IntMatrix, MatrixError, SymIntMatrix};
pub use slope::{Slope, SlopeError};
pub use snf::{smith_normal_form, SnfResult};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

/// Exact rational number. `num_rational` keeps it reduced with `denom > 0`.
pub type Rational = BigRational;

/// Non-negative greatest common divisor, with `gcd(0, 0) == 0`.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Machine-word variant of [`gcd`] used for validating small parameters.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `numer / denom` as a reduced rational. Panics on a zero denominator.
pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Rational {
    Rational::new(numer.into(), denom.into())
}
