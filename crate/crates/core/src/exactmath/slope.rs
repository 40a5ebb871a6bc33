use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    ZeroSlope,
    #[error("cannot parse slope {0:?}")]
    Parse(String),
}

/// Dehn surgery slope `a/b`, the class `a·μ + b·λ` killed by a filling.
///
/// Canonical form: `gcd(a, b) == 1` and `b > 0`, except for the meridional
/// slope which is stored as `1/0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    a: BigInt,
    b: BigInt,
}

impl Slope {
    /// Builds the slope through `(a, b)`; any common factor and overall sign
    /// are normalized away, since `(a, b)` and `(-a, -b)` describe the same
    /// unoriented curve.
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self, SlopeError> {
        let (mut a, mut b) = (a.into(), b.into());
        if a.is_zero() && b.is_zero() {
            return Err(SlopeError::ZeroSlope);
        }
        let g = a.gcd(&b);
        a /= &g;
        b /= &g;
        if b.is_negative() || (b.is_zero() && a.is_negative()) {
            a = -a;
            b = -b;
        }
        Ok(Slope { a, b })
    }

    /// The slope `1/m`.
    pub fn reciprocal(m: impl Into<BigInt>) -> Self {
        Slope::new(BigInt::one(), m).expect("1/m is never 0/0")
    }

    pub fn infinity() -> Self {
        Slope::reciprocal(0)
    }

    /// Meridian coefficient.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Longitude coefficient.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_infinity(&self) -> bool {
        self.b.is_zero()
    }

    /// `Some(m)` when the slope is `1/m` with `m >= 0`.
    pub fn reciprocal_denominator(&self) -> Option<&BigInt> {
        self.a.is_one().then_some(&self.b)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.b)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SlopeError::Parse(s.to_string());
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let a: BigInt = a.parse().map_err(|_| bad())?;
        let b: BigInt = b.parse().map_err(|_| bad())?;
        Slope::new(a, b)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
